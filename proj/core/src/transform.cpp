#include "alt/transform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "alt/text.hpp"

namespace alt {

namespace {

const char* aggregator_name(Aggregator a) {
    switch (a) {
        case Aggregator::Mean: return "mean";
        case Aggregator::M2: return "2nd_moment";
        case Aggregator::M3: return "3rd_moment";
        case Aggregator::M4: return "4th_moment";
    }
    return "?";
}

}  // namespace

std::string ExtractionMethod::to_string() const {
    if (kind == Kind::MeanAll) return "mean_all";
    std::ostringstream out;
    out << aggregator_name(aggregator) << '@';
    // Shortest decimal that round-trips, so parse(to_string()) is identity.
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, quantile);
        if (std::strtod(buf, nullptr) == quantile) break;
    }
    out << buf;
    return out.str();
}

ExtractionMethod ExtractionMethod::parse(const std::string& text) {
    const std::string t = trim(text);
    if (t == "mean_all") return {Kind::MeanAll, 0.0, Aggregator::Mean};
    const auto at = t.find('@');
    if (at == std::string::npos)
        throw_validation("bad extraction method '" + t +
                         "' (expected 'mean_all' or 'name@p', e.g. 'mean@0.05')");
    const std::string name = t.substr(0, at);
    ExtractionMethod m;
    m.kind = Kind::PerRow;
    if (name == "mean") m.aggregator = Aggregator::Mean;
    else if (name == "2nd_moment") m.aggregator = Aggregator::M2;
    else if (name == "3rd_moment") m.aggregator = Aggregator::M3;
    else if (name == "4th_moment") m.aggregator = Aggregator::M4;
    else
        throw_validation("unknown extraction aggregator '" + name + "'");
    if (!parse_double(t.substr(at + 1), m.quantile) || !(m.quantile > 0.0) ||
        !(m.quantile < 1.0))
        throw_validation("extraction quantile in '" + t + "' must be strictly inside (0,1)");
    return m;
}

std::vector<ExtractionMethod> parse_methods(const std::string& comma_separated) {
    std::vector<ExtractionMethod> methods;
    for (const auto& piece : split_line(comma_separated, ','))
        if (!trim(piece).empty()) methods.push_back(ExtractionMethod::parse(piece));
    if (methods.empty()) throw_validation("no extraction methods given");
    return methods;
}

std::vector<std::string> feature_names(const ShapeletBank& bank,
                                       const std::vector<ExtractionMethod>& methods) {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < bank.num_channels(); ++j)
        for (std::size_t g = 0; g < bank.num_configs(); ++g)
            for (int y = 1; y <= bank.num_classes(); ++y)
                for (const auto& m : methods)
                    names.push_back("ch" + std::to_string(j + 1) + ".cfg" + std::to_string(g + 1) +
                                    ".cls" + std::to_string(y) + "." + m.to_string());
    return names;
}

Matrix build_embedding_matrix(const std::vector<double>& series, const WindowConfig& cfg) {
    cfg.validate();
    const std::size_t h = series.size();
    const std::size_t s = cfg.stride();
    const std::size_t span = s * cfg.l;  // o = floor((h - s*l + 1)/k)
    if (h + 1 <= span)
        throw_validation("instance of length " + std::to_string(h) +
                         " is too short for (r=" + std::to_string(cfg.r) +
                         ", l=" + std::to_string(cfg.l) + ", k=" + std::to_string(cfg.k) + ")");
    const std::size_t o = (h - span + 1) / cfg.k;
    if (o < 1)
        throw_validation("instance of length " + std::to_string(h) +
                         " yields an empty embedding for (r=" + std::to_string(cfg.r) +
                         ", l=" + std::to_string(cfg.l) + ", k=" + std::to_string(cfg.k) + ")");
    Matrix a(o, cfg.l);
    for (std::size_t p = 0; p < o; ++p)
        for (std::size_t q = 0; q < cfg.l; ++q) a(p, q) = series[p * cfg.k + q * s];
    return a;
}

Matrix project(const Matrix& a, const Matrix& p) {
    Matrix o = multiply(a, p);
    for (double& v : o.data()) v = std::abs(v);
    return o;
}

double quantile_linear(std::vector<double> values, double q) {
    if (values.empty()) throw_validation("quantile of an empty set");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double extract_feature(const Matrix& block, const ExtractionMethod& method) {
    if (block.rows() == 0 || block.cols() == 0)
        throw_validation("internal error: empty class block in feature extraction");

    if (method.kind == ExtractionMethod::Kind::MeanAll) {
        double sum = 0;
        for (double v : block.data()) sum += v;
        return sum / static_cast<double>(block.data().size());
    }

    const std::size_t o = block.rows();
    std::vector<double> quantiles(o);
    std::vector<double> row(block.cols());
    for (std::size_t p = 0; p < o; ++p) {
        std::copy_n(block.row_ptr(p), block.cols(), row.begin());
        quantiles[p] = quantile_linear(row, method.quantile);
    }

    double mean = 0;
    for (double v : quantiles) mean += v;
    mean /= static_cast<double>(o);
    if (method.aggregator == Aggregator::Mean) return mean;

    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : quantiles) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(o);
    m3 /= static_cast<double>(o);
    m4 /= static_cast<double>(o);

    switch (method.aggregator) {
        case Aggregator::M2: return std::sqrt(m2);
        case Aggregator::M3: return m2 <= 1e-24 ? 0.0 : m3 / std::pow(m2, 1.5);
        case Aggregator::M4: return m2 <= 1e-24 ? 0.0 : m4 / (m2 * m2);
        default: return mean;
    }
}

std::vector<double> transform_instance(const std::vector<std::vector<double>>& channels,
                                       const ShapeletBank& bank,
                                       const std::vector<ExtractionMethod>& methods) {
    if (channels.size() != bank.num_channels())
        throw_validation("instance has " + std::to_string(channels.size()) +
                         " channels, model expects " + std::to_string(bank.num_channels()));
    if (methods.empty()) throw_validation("no extraction methods given");

    std::vector<double> features;
    features.reserve(bank.num_channels() * bank.num_configs() *
                     static_cast<std::size_t>(bank.num_classes()) * methods.size());
    for (std::size_t j = 0; j < bank.num_channels(); ++j) {
        for (std::size_t g = 0; g < bank.num_configs(); ++g) {
            const Matrix a = build_embedding_matrix(channels[j], bank.configs()[g]);
            for (int y = 1; y <= bank.num_classes(); ++y) {
                const Matrix o = project(a, bank.bank(g, j, y));
                for (const auto& m : methods) features.push_back(extract_feature(o, m));
            }
        }
    }
    return features;
}

FeatureTable transform_set(const std::vector<std::vector<std::vector<double>>>& instances,
                           const ShapeletBank& bank,
                           const std::vector<ExtractionMethod>& methods,
                           const std::vector<std::string>& labels, unsigned threads) {
    if (!labels.empty() && labels.size() != instances.size())
        throw_validation("label count does not match instance count");

    FeatureTable table;
    table.column_names = feature_names(bank, methods);
    table.rows.resize(instances.size());
    table.class_labels = labels;

    std::vector<std::string> failures(instances.size());
    auto run = [&](std::size_t i) {
        try {
            table.rows[i] = transform_instance(instances[i], bank, methods);
        } catch (const Error& e) {
            failures[i] = e.what();
        }
    };

    if (threads <= 1 || instances.size() < 2) {
        for (std::size_t i = 0; i < instances.size(); ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= instances.size()) return;
                run(i);
            }
        };
        std::vector<std::thread> pool;
        const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(instances.size()));
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::string report;
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            report += (report.empty() ? "" : "; ") + ("instance " + std::to_string(i + 1) + ": " +
                                                      failures[i]);
    if (!report.empty()) throw_validation(report);
    return table;
}

namespace {

void write_table(const FeatureTable& table, const std::string& path, bool include_class) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw_io("cannot write " + path);
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
        if (c) out << ',';
        out << table.column_names[c];
    }
    if (include_class) out << (table.column_names.empty() ? "" : ",") << "class";
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) out << ',';
            out << format_double(table.rows[r][c]);
        }
        if (include_class) out << (table.rows[r].empty() ? "" : ",") << table.class_labels[r];
        out << '\n';
    }
    if (!out) throw_io("write failure on " + path);
}

}  // namespace

void write_features(const FeatureTable& table, const std::string& path, WriteMode mode,
                    bool include_class) {
    if (include_class && table.class_labels.size() != table.rows.size())
        throw_validation("table has no class labels to write");

    if (mode == WriteMode::NewFile) {
        write_table(table, path, include_class);
        return;
    }

    FeatureTable existing = read_features(path);

    if (mode == WriteMode::AppendInstance) {
        if (existing.column_names != table.column_names ||
            existing.has_class() != include_class)
            throw_validation(path + ": header mismatch for append-instance");
        FeatureTable merged = existing;
        merged.rows.insert(merged.rows.end(), table.rows.begin(), table.rows.end());
        if (include_class)
            merged.class_labels.insert(merged.class_labels.end(), table.class_labels.begin(),
                                       table.class_labels.end());
        write_table(merged, path, include_class);
        return;
    }

    // AppendFeature: same rows, new columns land before any class column.
    if (existing.rows.size() != table.rows.size())
        throw_validation(path + ": row count mismatch for append-feature (" +
                         std::to_string(existing.rows.size()) + " vs " +
                         std::to_string(table.rows.size()) + ")");
    if (existing.has_class() && include_class && existing.class_labels != table.class_labels)
        throw_validation(path + ": class column differs for append-feature");
    FeatureTable merged = existing;
    merged.column_names.insert(merged.column_names.end(), table.column_names.begin(),
                               table.column_names.end());
    for (std::size_t r = 0; r < merged.rows.size(); ++r)
        merged.rows[r].insert(merged.rows[r].end(), table.rows[r].begin(), table.rows[r].end());
    const bool class_out = existing.has_class() || include_class;
    if (class_out && !merged.has_class()) merged.class_labels = table.class_labels;
    write_table(merged, path, class_out);
}

FeatureTable read_features(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw_validation(path + ": empty feature file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    FeatureTable table;
    auto header = split_line(line, ',');
    bool has_class = !header.empty() && header.back() == "class";
    if (has_class) header.pop_back();
    table.column_names = header;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split_line(line, ',');
        const std::size_t want = table.column_names.size() + (has_class ? 1 : 0);
        if (cells.size() != want)
            throw_validation(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(want) + " cells, got " +
                             std::to_string(cells.size()));
        if (has_class) {
            table.class_labels.push_back(trim(cells.back()));
            cells.pop_back();
        }
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (!parse_double(cells[c], row[c]))
                throw_validation(path + ":" + std::to_string(line_no) + ": bad value '" +
                                 cells[c] + "'");
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace alt

#include "alt/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "alt/text.hpp"

namespace alt {

ShapeletBank::ShapeletBank(std::vector<WindowConfig> configs, std::size_t num_channels,
                           std::vector<std::string> label_names)
    : configs_(std::move(configs)), num_channels_(num_channels),
      label_names_(std::move(label_names)) {
    const std::size_t total = configs_.size() * num_channels_ * label_names_.size();
    banks_.resize(total);
    provenance_.resize(total);
}

std::size_t ShapeletBank::flat_index(std::size_t g, std::size_t j, int y) const {
    if (g >= configs_.size() || j >= num_channels_ || y < 1 ||
        static_cast<std::size_t>(y) > label_names_.size())
        throw_validation("bank index (config, channel, class) out of range");
    return (g * num_channels_ + j) * label_names_.size() + static_cast<std::size_t>(y - 1);
}

const Matrix& ShapeletBank::bank(std::size_t g, std::size_t j, int y) const {
    return banks_[flat_index(g, j, y)];
}
Matrix& ShapeletBank::bank(std::size_t g, std::size_t j, int y) {
    return banks_[flat_index(g, j, y)];
}
const std::vector<ColumnProvenance>& ShapeletBank::provenance(std::size_t g, std::size_t j,
                                                              int y) const {
    return provenance_[flat_index(g, j, y)];
}
std::vector<ColumnProvenance>& ShapeletBank::provenance(std::size_t g, std::size_t j, int y) {
    return provenance_[flat_index(g, j, y)];
}

ShapeletBank train_bank(const TimeSeriesDataset& ds,
                        const std::vector<std::size_t>& learn_indices,
                        const std::vector<WindowConfig>& configs, unsigned threads) {
    if (configs.empty()) throw_validation("no window configurations given");
    for (std::size_t g = 0; g < configs.size(); ++g) configs[g].validate(g + 1);
    if (learn_indices.empty()) throw_validation("learn set is empty");

    std::vector<std::size_t> learn(learn_indices);
    std::sort(learn.begin(), learn.end());
    learn.erase(std::unique(learn.begin(), learn.end()), learn.end());

    std::set<int> seen;
    for (std::size_t i : learn) {
        if (i >= ds.num_instances())
            throw_validation("learn index " + std::to_string(i + 1) + " out of range");
        seen.insert(ds.label(i));
    }
    for (int y = 1; y <= ds.num_classes(); ++y)
        if (!seen.count(y))
            throw_validation("class '" + ds.label_name(y) + "' has no learn instances");

    for (std::size_t g = 0; g < configs.size(); ++g)
        for (std::size_t i : learn)
            if (configs[g].r > ds.length(i))
                throw_validation("config " + std::to_string(g + 1) + " (r=" +
                                 std::to_string(configs[g].r) + ") exceeds the length " +
                                 std::to_string(ds.length(i)) + " of learn instance " +
                                 std::to_string(i + 1));

    ShapeletBank bank(configs, ds.num_channels(), ds.label_names());

    // Fix the column layout up front so workers can write without ordering
    // dependence: per (g, class), learn instances ascending, windows ascending.
    struct Task {
        std::size_t g, j, instance, column_base;
    };
    std::vector<Task> tasks;
    for (std::size_t g = 0; g < configs.size(); ++g) {
        std::vector<std::size_t> next_column(static_cast<std::size_t>(ds.num_classes()), 0);
        for (std::size_t i : learn) {
            const std::size_t y = static_cast<std::size_t>(ds.label(i) - 1);
            const std::size_t w = window_count(ds.length(i), configs[g].r, configs[g].k);
            for (std::size_t j = 0; j < ds.num_channels(); ++j)
                tasks.push_back({g, j, i, next_column[y]});
            next_column[y] += w;
        }
        for (std::size_t j = 0; j < ds.num_channels(); ++j)
            for (int y = 1; y <= ds.num_classes(); ++y) {
                bank.bank(g, j, y) =
                    Matrix(configs[g].l, next_column[static_cast<std::size_t>(y - 1)]);
                bank.provenance(g, j, y)
                    .resize(next_column[static_cast<std::size_t>(y - 1)]);
            }
    }

    auto run_task = [&](const Task& task) {
        const WindowConfig& cfg = configs[task.g];
        const auto& series = ds.series(task.instance, task.j);
        Matrix& p = bank.bank(task.g, task.j, ds.label(task.instance));
        auto& prov = bank.provenance(task.g, task.j, ds.label(task.instance));
        const std::size_t w = window_count(series.size(), cfg.r, cfg.k);
        std::vector<double> window(cfg.r);
        for (std::size_t wi = 0; wi < w; ++wi) {
            const std::size_t start = wi * cfg.k;
            std::copy_n(series.begin() + static_cast<std::ptrdiff_t>(start), cfg.r,
                        window.begin());
            const Shapelet sh = compute_shapelet(downsample(window, cfg));
            const std::size_t col = task.column_base + wi;
            for (std::size_t d = 0; d < cfg.l; ++d) p(d, col) = sh.v[d];
            prov[col] = {task.instance, start};
        }
    };

    if (threads <= 1 || tasks.size() < 2) {
        for (const Task& t : tasks) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= tasks.size()) return;
                run_task(tasks[idx]);
            }
        };
        std::vector<std::thread> pool;
        const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return bank;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t hash, const std::string& text) {
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= kFnvPrime;
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void save_model(const ShapeletBank& bank, const std::string& path) {
    nlohmann::json header;
    header["format"] = "alt-model";
    header["version"] = 1;
    header["channels"] = bank.num_channels();
    header["labels"] = bank.label_names();
    auto& cfgs = header["configs"] = nlohmann::json::array();
    for (const auto& c : bank.configs()) cfgs.push_back({{"r", c.r}, {"l", c.l}, {"k", c.k}});
    auto& banks = header["banks"] = nlohmann::json::array();
    for (std::size_t g = 0; g < bank.num_configs(); ++g)
        for (std::size_t j = 0; j < bank.num_channels(); ++j)
            for (int y = 1; y <= bank.num_classes(); ++y) {
                const Matrix& p = bank.bank(g, j, y);
                nlohmann::json prov = nlohmann::json::array();
                for (const auto& cp : bank.provenance(g, j, y))
                    prov.push_back({cp.instance, cp.window_start});
                banks.push_back({{"config", g + 1},
                                 {"channel", j + 1},
                                 {"class", y},
                                 {"rows", p.rows()},
                                 {"cols", p.cols()},
                                 {"provenance", std::move(prov)}});
            }

    std::ostringstream body;
    for (std::size_t g = 0; g < bank.num_configs(); ++g)
        for (std::size_t j = 0; j < bank.num_channels(); ++j)
            for (int y = 1; y <= bank.num_classes(); ++y) {
                const Matrix& p = bank.bank(g, j, y);
                if (p.cols() == 0) continue;
                for (std::size_t row = 0; row < p.rows(); ++row) {
                    for (std::size_t col = 0; col < p.cols(); ++col) {
                        if (col) body << ' ';
                        body << format_double(p(row, col));
                    }
                    body << '\n';
                }
            }

    const std::string body_text = body.str();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw_io("cannot write " + path);
    out << header.dump() << '\n' << body_text;
    out << "checksum " << hex64(fnv1a(kFnvOffset, body_text)) << '\n';
    if (!out) throw_io("write failure on " + path);
}

ShapeletBank load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw_validation(path + ": empty model file");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw_validation(path + ": malformed model header: " + e.what());
    }
    if (header.value("format", "") != "alt-model")
        throw_validation(path + ": not an alt-model file");
    if (header.value("version", -1) != 1)
        throw_validation(path + ": unsupported alt-model version " +
                         header["version"].dump());

    std::vector<WindowConfig> configs;
    for (const auto& c : header.at("configs"))
        configs.push_back({c.at("r").get<std::size_t>(), c.at("l").get<std::size_t>(),
                           c.at("k").get<std::size_t>()});
    const auto channels = header.at("channels").get<std::size_t>();
    const auto labels = header.at("labels").get<std::vector<std::string>>();
    ShapeletBank bank(configs, channels, labels);

    std::uint64_t hash = kFnvOffset;
    for (const auto& b : header.at("banks")) {
        const std::size_t g = b.at("config").get<std::size_t>() - 1;
        const std::size_t j = b.at("channel").get<std::size_t>() - 1;
        const int y = b.at("class").get<int>();
        const std::size_t rows = b.at("rows").get<std::size_t>();
        const std::size_t cols = b.at("cols").get<std::size_t>();
        Matrix p(rows, cols);
        for (std::size_t row = 0; cols > 0 && row < rows; ++row) {
            if (!std::getline(in, line))
                throw_validation(path + ": truncated model file (matrix data missing)");
            hash = fnv1a(hash, line);
            hash = fnv1a(hash, "\n");
            const auto cells = split_line(line, ' ');
            if (cells.size() != cols)
                throw_validation(path + ": matrix row has " + std::to_string(cells.size()) +
                                 " values, expected " + std::to_string(cols));
            for (std::size_t col = 0; col < cols; ++col) {
                double v;
                if (!parse_double(cells[col], v))
                    throw_validation(path + ": bad matrix value '" + cells[col] + "'");
                p(row, col) = v;
            }
        }
        bank.bank(g, j, y) = std::move(p);
        auto& prov = bank.provenance(g, j, y);
        prov.clear();
        for (const auto& cp : b.at("provenance"))
            prov.push_back({cp.at(0).get<std::size_t>(), cp.at(1).get<std::size_t>()});
        if (prov.size() != cols)
            throw_validation(path + ": provenance length does not match column count");
    }

    if (!std::getline(in, line) || !line.starts_with("checksum "))
        throw_validation(path + ": truncated model file (checksum missing)");
    if (line.substr(9) != hex64(hash))
        throw_validation(path + ": checksum mismatch (file corrupted?)");
    return bank;
}

}  // namespace alt

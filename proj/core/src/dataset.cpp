#include "alt/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "alt/rng.hpp"
#include "alt/text.hpp"

namespace alt {

namespace {

bool all_integral(const std::vector<std::string>& labels) {
    for (const auto& s : labels) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

[[noreturn]] void parse_error(const std::string& path, std::size_t line_no,
                              const std::string& what) {
    throw_validation(path + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<int> canonicalize(const std::vector<std::string>& raw,
                              const std::vector<std::string>& sorted_names,
                              const std::string& path) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < sorted_names.size(); ++i)
        index[sorted_names[i]] = static_cast<int>(i) + 1;
    std::vector<int> out;
    out.reserve(raw.size());
    for (const auto& s : raw) {
        auto it = index.find(s);
        if (it == index.end())
            throw_validation(path + ": label '" + s + "' is not in the declared class set");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

std::vector<std::string> sorted_label_set(const std::vector<std::string>& raw) {
    std::vector<std::string> uniq(raw);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (all_integral(uniq)) {
        std::sort(uniq.begin(), uniq.end(), [](const std::string& a, const std::string& b) {
            return std::stoll(a) < std::stoll(b);
        });
    }
    return uniq;
}

TimeSeriesDataset::TimeSeriesDataset(std::vector<std::vector<std::vector<double>>> values,
                                     std::vector<int> labels,
                                     std::vector<std::string> label_names)
    : values_(std::move(values)), labels_(std::move(labels)),
      label_names_(std::move(label_names)) {
    if (values_.empty()) throw_validation("dataset has no instances");
    if (labels_.size() != values_.size())
        throw_validation("label count does not match instance count");
    num_channels_ = values_[0].size();

    std::vector<std::size_t> per_class(label_names_.size(), 0);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const auto& inst = values_[i];
        if (inst.size() != num_channels_)
            throw_validation("instance " + std::to_string(i + 1) + " has " +
                             std::to_string(inst.size()) + " channels, expected " +
                             std::to_string(num_channels_));
        const std::size_t h = inst[0].size();
        if (h < 3)
            throw_validation("instance " + std::to_string(i + 1) + " is shorter than 3 samples");
        for (const auto& channel : inst) {
            if (channel.size() != h)
                throw_validation("instance " + std::to_string(i + 1) +
                                 " has channels of differing length");
            for (double v : channel)
                if (!std::isfinite(v))
                    throw_validation("instance " + std::to_string(i + 1) +
                                     " contains a non-finite value");
        }
        if (i > 0 && h != values_[0][0].size()) fixed_length_ = false;
        const int y = labels_[i];
        if (y < 1 || static_cast<std::size_t>(y) > label_names_.size())
            throw_validation("instance " + std::to_string(i + 1) + " has label out of range");
        ++per_class[static_cast<std::size_t>(y - 1)];
    }
    for (std::size_t q = 0; q < per_class.size(); ++q)
        if (per_class[q] == 0)
            throw_validation("class '" + label_names_[q] + "' has no instances");
}

TimeSeriesDataset load_ts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open " + path);

    std::size_t dimensions = 1;
    bool class_label = false;
    std::vector<std::string> declared_labels;
    bool in_data = false;
    std::size_t line_no = 0;

    std::vector<std::vector<std::vector<double>>> values;
    std::vector<std::string> raw_labels;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        if (!in_data && t[0] == '@') {
            auto sp = t.find_first_of(" \t");
            const std::string key = lower(sp == std::string::npos ? t : t.substr(0, sp));
            const std::string rest = sp == std::string::npos ? "" : trim(t.substr(sp + 1));
            if (key == "@data") {
                in_data = true;
            } else if (key == "@univariate") {
                if (lower(rest) == "true") dimensions = 1;
            } else if (key == "@dimensions") {
                if (!parse_size(rest, dimensions) || dimensions == 0)
                    parse_error(path, line_no, "bad @dimensions value '" + rest + "'");
            } else if (key == "@classlabel") {
                auto parts = split_line(rest, ' ');
                if (parts.empty()) parse_error(path, line_no, "@classLabel needs a value");
                class_label = lower(parts[0]) == "true";
                for (std::size_t i = 1; i < parts.size(); ++i) {
                    const std::string lbl = trim(parts[i]);
                    if (!lbl.empty()) declared_labels.push_back(lbl);
                }
            }
            // @problemName, @timeStamps, @equalLength, @seriesLength: informational
            continue;
        }
        if (!in_data) parse_error(path, line_no, "unexpected content before @data");

        auto segments = split_line(t, ':');
        std::string label;
        if (class_label) {
            if (segments.size() < 2)
                parse_error(path, line_no, "missing class label segment");
            label = trim(segments.back());
            segments.pop_back();
        }
        if (segments.size() != dimensions)
            parse_error(path, line_no,
                        "expected " + std::to_string(dimensions) + " channel(s), got " +
                            std::to_string(segments.size()));

        std::vector<std::vector<double>> instance;
        instance.reserve(dimensions);
        for (const auto& seg : segments) {
            std::vector<double> channel;
            for (const auto& cell : split_line(seg, ',')) {
                double v;
                if (!parse_double(cell, v))
                    parse_error(path, line_no, "non-numeric value '" + trim(cell) + "'");
                if (!std::isfinite(v))
                    parse_error(path, line_no, "non-finite value '" + trim(cell) + "'");
                channel.push_back(v);
            }
            instance.push_back(std::move(channel));
        }
        values.push_back(std::move(instance));
        raw_labels.push_back(label);
    }
    if (!in_data) throw_validation(path + ": no @data section");
    if (values.empty()) throw_validation(path + ": no instances");
    if (!class_label) throw_validation(path + ": @classLabel false is unsupported (labels required)");

    const std::vector<std::string> names =
        declared_labels.empty() ? sorted_label_set(raw_labels) : sorted_label_set(declared_labels);
    return TimeSeriesDataset(std::move(values), canonicalize(raw_labels, names, path), names);
}

TimeSeriesDataset load_csv(const std::string& path, CsvLayout layout, bool has_labels) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open " + path);

    std::vector<std::vector<std::vector<double>>> values;
    std::vector<std::string> raw_labels;

    std::string line;
    std::size_t line_no = 0;

    if (layout == CsvLayout::RowPerInstance) {
        std::size_t expected = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            auto cells = split_line(line, ',');
            std::string label;
            if (has_labels) {
                if (cells.size() < 2) parse_error(path, line_no, "row too short for a label");
                label = trim(cells.back());
                cells.pop_back();
            }
            if (expected == 0) expected = cells.size();
            if (cells.size() != expected)
                parse_error(path, line_no,
                            "ragged row: " + std::to_string(cells.size()) + " values, expected " +
                                std::to_string(expected));
            std::vector<double> channel;
            channel.reserve(cells.size());
            for (const auto& cell : cells) {
                double v;
                if (!parse_double(cell, v))
                    parse_error(path, line_no, "non-numeric value '" + trim(cell) + "'");
                channel.push_back(v);
            }
            values.push_back({std::move(channel)});
            raw_labels.push_back(has_labels ? label : "0");
        }
    } else {
        // LongFormat: instance,channel,time,value[,label]; optional header row.
        std::map<std::size_t, std::map<std::size_t, std::map<std::size_t, double>>> grid;
        std::map<std::size_t, std::string> inst_label;
        bool first = true;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            auto cells = split_line(line, ',');
            if (first) {
                first = false;
                std::size_t probe;
                if (!parse_size(cells[0], probe)) continue;  // header row
            }
            const std::size_t want = has_labels ? 5 : 4;
            if (cells.size() != want)
                parse_error(path, line_no, "expected " + std::to_string(want) + " columns");
            std::size_t inst, chan, time;
            double v;
            if (!parse_size(cells[0], inst) || !parse_size(cells[1], chan) ||
                !parse_size(cells[2], time) || !parse_double(cells[3], v))
                parse_error(path, line_no, "malformed long-format row");
            auto& cell = grid[inst][chan];
            if (cell.count(time))
                parse_error(path, line_no,
                            "duplicate (instance,channel,time) key (" + std::to_string(inst) +
                                "," + std::to_string(chan) + "," + std::to_string(time) + ")");
            cell[time] = v;
            if (has_labels) inst_label[inst] = trim(cells[4]);
        }
        for (auto& [inst, channels] : grid) {
            std::vector<std::vector<double>> instance;
            for (auto& [chan, series] : channels) {
                std::vector<double> s;
                s.reserve(series.size());
                for (auto& [t, v] : series) s.push_back(v);
                instance.push_back(std::move(s));
            }
            values.push_back(std::move(instance));
            raw_labels.push_back(has_labels ? inst_label[inst] : "0");
        }
    }
    if (values.empty()) throw_validation(path + ": no instances");
    const auto names = sorted_label_set(raw_labels);
    return TimeSeriesDataset(std::move(values), canonicalize(raw_labels, names, path), names);
}

void write_csv(const TimeSeriesDataset& ds, const std::string& path, bool with_labels) {
    if (ds.num_channels() != 1)
        throw_validation("RowPerInstance CSV holds single-channel datasets only");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw_io("cannot write " + path);
    for (std::size_t i = 0; i < ds.num_instances(); ++i) {
        const auto& s = ds.series(i, 0);
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (t) out << ',';
            out << format_double(s[t]);
        }
        if (with_labels) out << ',' << ds.label_name(ds.label(i));
        out << '\n';
    }
    if (!out) throw_io("write failure on " + path);
}

namespace {

std::size_t resolve_count(const std::optional<std::size_t>& count,
                          const std::optional<double>& fraction, std::size_t total) {
    if (count) return *count;
    if (fraction) return static_cast<std::size_t>(std::floor(*fraction * static_cast<double>(total)));
    return 0;
}

/// Proportional per-class apportionment: floor(target * tau_q / tau) per
/// class, remainder by descending fractional part, ties by class index.
std::vector<std::size_t> apportion(std::size_t target, const std::vector<std::size_t>& class_sizes,
                                   std::size_t tau) {
    const std::size_t c = class_sizes.size();
    std::vector<std::size_t> counts(c);
    std::vector<std::pair<double, std::size_t>> frac;  // (-fractional part, class)
    std::size_t assigned = 0;
    for (std::size_t q = 0; q < c; ++q) {
        const double exact = static_cast<double>(target) *
                             static_cast<double>(class_sizes[q]) / static_cast<double>(tau);
        counts[q] = static_cast<std::size_t>(std::floor(exact));
        assigned += counts[q];
        frac.emplace_back(-(exact - static_cast<double>(counts[q])), q);
    }
    std::sort(frac.begin(), frac.end());
    for (std::size_t i = 0; assigned < target && i < frac.size(); ++i) {
        ++counts[frac[i].second];
        ++assigned;
    }
    return counts;
}

}  // namespace

SplitResult stratified_split(const TimeSeriesDataset& ds, const SplitSpec& spec) {
    const std::size_t tau = ds.num_instances();
    const std::size_t n_learn = resolve_count(spec.learn_count, spec.learn_fraction, tau);
    std::size_t n_train = resolve_count(spec.train_count, spec.train_fraction, tau);
    bool train_given = spec.train_count || spec.train_fraction;
    if (n_learn > tau || n_learn + n_train > tau)
        throw_validation("split counts exceed the number of instances");
    if (!train_given && !spec.test_count) n_train = tau - n_learn;  // default: rest is train
    std::size_t n_test = spec.test_count ? *spec.test_count : tau - n_learn - n_train;
    if (n_learn + n_train + n_test > tau)
        throw_validation("split counts exceed the number of instances");
    if (n_learn == 0) throw_validation("learn subset is empty");

    SplitResult result;
    if (spec.mode == SplitMode::TakeFirst) {
        for (std::size_t i = 0; i < tau; ++i) {
            if (i < n_learn) result.learn.push_back(i);
            else if (i < n_learn + n_train) result.train.push_back(i);
            else if (i < n_learn + n_train + n_test) result.test.push_back(i);
            else result.leftover.push_back(i);
        }
    } else {
        const int c = ds.num_classes();
        std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(c));
        for (std::size_t i = 0; i < tau; ++i)
            by_class[static_cast<std::size_t>(ds.label(i) - 1)].push_back(i);
        std::vector<std::size_t> class_sizes;
        for (const auto& v : by_class) class_sizes.push_back(v.size());

        for (std::size_t q = 0; q < by_class.size(); ++q) {
            SplitMix64 seeder(spec.seed);
            for (std::size_t skip = 0; skip <= q; ++skip) seeder.next();
            SplitMix64 rng(seeder.next());
            deterministic_shuffle(by_class[q], rng);
        }

        const auto learn_counts = apportion(n_learn, class_sizes, tau);
        const auto train_counts = apportion(n_train, class_sizes, tau);
        const auto test_counts = apportion(n_test, class_sizes, tau);
        for (std::size_t q = 0; q < by_class.size(); ++q) {
            if (learn_counts[q] + train_counts[q] + test_counts[q] > class_sizes[q])
                throw_validation("class '" + ds.label_name(static_cast<int>(q) + 1) +
                                 "' is too small for the requested split");
            std::size_t pos = 0;
            for (std::size_t i = 0; i < learn_counts[q]; ++i) result.learn.push_back(by_class[q][pos++]);
            for (std::size_t i = 0; i < train_counts[q]; ++i) result.train.push_back(by_class[q][pos++]);
            for (std::size_t i = 0; i < test_counts[q]; ++i) result.test.push_back(by_class[q][pos++]);
            while (pos < class_sizes[q]) result.leftover.push_back(by_class[q][pos++]);
        }
        std::sort(result.learn.begin(), result.learn.end());
        std::sort(result.train.begin(), result.train.end());
        std::sort(result.test.begin(), result.test.end());
        std::sort(result.leftover.begin(), result.leftover.end());
    }

    std::vector<bool> learn_class(static_cast<std::size_t>(ds.num_classes()), false);
    for (std::size_t i : result.learn) learn_class[static_cast<std::size_t>(ds.label(i) - 1)] = true;
    for (std::size_t q = 0; q < learn_class.size(); ++q)
        if (!learn_class[q])
            throw_validation("class '" + ds.label_name(static_cast<int>(q) + 1) +
                             "' received no learn instances");
    return result;
}

}  // namespace alt

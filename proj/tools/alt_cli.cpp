#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alt/classify.hpp"
#include "alt/dataset.hpp"
#include "alt/model.hpp"
#include "alt/text.hpp"
#include "alt/transform.hpp"

namespace {

constexpr const char* kVersion = "alt 1.0.0 (alt-model format 1)";

struct RowRange {
    std::size_t first = 0;  // 0-based inclusive
    std::size_t last = 0;   // 0-based inclusive
};

RowRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    std::size_t a, b;
    if (dots == std::string::npos || !alt::parse_size(text.substr(0, dots), a) ||
        !alt::parse_size(text.substr(dots + 2), b) || a < 1 || b < a)
        alt::throw_validation("bad row range '" + text + "' (expected e.g. 1..40)");
    return {a - 1, b - 1};
}

std::vector<std::size_t> range_indices(const RowRange& r, std::size_t limit,
                                       const std::string& what) {
    if (r.last >= limit)
        alt::throw_validation(what + " range ends at row " + std::to_string(r.last + 1) +
                              " but only " + std::to_string(limit) + " rows exist");
    std::vector<std::size_t> out;
    for (std::size_t i = r.first; i <= r.last; ++i) out.push_back(i);
    return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text, const std::string& flag) {
    std::vector<std::size_t> out;
    for (const auto& piece : alt::split_line(text, ',')) {
        std::size_t v;
        if (!alt::parse_size(piece, v))
            alt::throw_validation("bad value '" + alt::trim(piece) + "' in " + flag);
        out.push_back(v);
    }
    if (out.empty()) alt::throw_validation(flag + " needs at least one value");
    return out;
}

/// Scalar-broadcast R/L/K lists into equal-length config triplets.
std::vector<alt::WindowConfig> make_configs(const std::string& r_text, const std::string& l_text,
                                            const std::string& k_text) {
    auto rs = parse_count_list(r_text, "--r");
    auto ls = parse_count_list(l_text, "--l");
    auto ks = parse_count_list(k_text, "--k");
    const std::size_t g = std::max({rs.size(), ls.size(), ks.size()});
    auto broadcast = [g](std::vector<std::size_t>& v, const char* flag) {
        if (v.size() == 1) v.assign(g, v[0]);
        if (v.size() != g)
            alt::throw_validation(std::string(flag) +
                                  " list length must be 1 or match the other lists");
    };
    broadcast(rs, "--r");
    broadcast(ls, "--l");
    broadcast(ks, "--k");
    std::vector<alt::WindowConfig> configs;
    for (std::size_t i = 0; i < g; ++i) {
        configs.push_back({rs[i], ls[i], ks[i]});
        configs.back().validate(i + 1);
    }
    return configs;
}

struct InputOptions {
    std::string path;
    std::string format = "ts";  // ts | csv | csv-long
    bool has_labels = true;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.path, "Dataset file")->required();
    cmd->add_option("--format", in.format, "Input format: ts, csv, csv-long")
        ->check(CLI::IsMember({"ts", "csv", "csv-long"}));
    cmd->add_flag("!--no-labels", in.has_labels, "CSV input carries no label column");
}

alt::TimeSeriesDataset load_input(const InputOptions& in) {
    if (in.format == "ts") return alt::load_ts(in.path);
    if (in.format == "csv") return alt::load_csv(in.path, alt::CsvLayout::RowPerInstance, in.has_labels);
    return alt::load_csv(in.path, alt::CsvLayout::LongFormat, in.has_labels);
}

struct SplitOptions {
    std::optional<std::size_t> learn_count;
    std::optional<double> learn_fraction;
    std::optional<std::size_t> train_count;
    std::optional<double> train_fraction;
    std::optional<std::size_t> test_count;
    std::optional<std::uint64_t> seed;
    bool take_first = false;
    bool stratified = false;
};

void add_split_options(CLI::App* cmd, SplitOptions& s) {
    cmd->add_option("--learn-count", s.learn_count, "Learn subset size");
    cmd->add_option("--learn-fraction", s.learn_fraction, "Learn subset fraction");
    cmd->add_option("--train-count", s.train_count, "Train subset size");
    cmd->add_option("--train-fraction", s.train_fraction, "Train subset fraction");
    cmd->add_option("--test-count", s.test_count, "Test subset size");
    cmd->add_option("--seed", s.seed, "Split seed (implies stratified mode)");
    cmd->add_flag("--take-first", s.take_first, "Slice subsets in file order");
    cmd->add_flag("--stratified", s.stratified, "Stratified random subsets");
}

alt::SplitSpec make_split_spec(const SplitOptions& s) {
    alt::SplitSpec spec;
    spec.learn_count = s.learn_count;
    spec.learn_fraction = s.learn_fraction;
    spec.train_count = s.train_count;
    spec.train_fraction = s.train_fraction;
    spec.test_count = s.test_count;
    spec.seed = s.seed.value_or(0);
    if (s.take_first && s.stratified)
        alt::throw_validation("--take-first and --stratified are mutually exclusive");
    // A learn count without a seed mirrors the plain slice-the-first-N idiom.
    if (s.take_first || (s.learn_count && !s.seed && !s.stratified))
        spec.mode = alt::SplitMode::TakeFirst;
    else
        spec.mode = alt::SplitMode::Stratified;
    return spec;
}


/// Replace `--manifest FILE` with the file's `key = value` lines expanded to
/// long options, inserted ahead of the remaining flags so that explicit flags
/// win on conflict (all options take the last occurrence).
std::vector<std::string> expand_manifest(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        std::size_t span = 0;
        if (args[i] == "--manifest" && i + 1 < args.size()) {
            path = args[i + 1];
            span = 2;
        } else if (args[i].rfind("--manifest=", 0) == 0) {
            path = args[i].substr(11);
            span = 1;
        } else {
            continue;
        }
        std::ifstream in(path);
        if (!in) alt::throw_io("cannot read manifest " + path);
        std::vector<std::string> expanded;
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = alt::trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                alt::throw_validation("manifest " + path + ": expected 'name = value' in '" +
                                      t + "'");
            expanded.push_back("--" + alt::trim(t.substr(0, eq)) + "=" +
                               alt::trim(t.substr(eq + 1)));
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                   args.begin() + static_cast<std::ptrdiff_t>(i + span));
        // manifest values go right after the subcommand name
        args.insert(args.begin() + (args.empty() ? 0 : 1), expanded.begin(), expanded.end());
        break;
    }
    return args;
}

int run(int argc, char** argv) {
    CLI::App app{"Adaptive law-based transformation for time series classification"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // ---- split ----
    auto* split_cmd = app.add_subcommand("split", "Partition a dataset into learn/train/test");
    InputOptions split_in;
    SplitOptions split_opts;
    std::string split_out;
    add_input_options(split_cmd, split_in);
    add_split_options(split_cmd, split_opts);
    split_cmd->add_option("--output", split_out, "Write instance,role CSV here");

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "Train a shapelet bank");
    InputOptions train_in;
    SplitOptions train_split;
    std::string r_text, l_text = "5", k_text = "1", model_out;
    unsigned train_threads = 1;
    add_input_options(train_cmd, train_in);
    add_split_options(train_cmd, train_split);
    train_cmd->add_option("--r", r_text, "Window length(s), comma separated")->required();
    train_cmd->add_option("--l", l_text, "Embedding dimension(s)");
    train_cmd->add_option("--k", k_text, "Window shift(s)");
    train_cmd->add_option("--threads", train_threads, "Worker thread cap");
    train_cmd->add_option("--output", model_out, "Model file to write")->required();

    // ---- transform ----
    auto* tf_cmd = app.add_subcommand("transform", "Transform instances through a trained model");
    InputOptions tf_in;
    std::string tf_model, tf_methods = "mean_all", tf_out, tf_mode = "new", tf_rows;
    bool tf_with_class = false;
    unsigned tf_threads = 1;
    add_input_options(tf_cmd, tf_in);
    tf_cmd->add_option("--model", tf_model, "Trained model file")->required();
    tf_cmd->add_option("--methods", tf_methods, "Extraction methods, e.g. mean_all,mean@0.05");
    tf_cmd->add_option("--output", tf_out, "Feature CSV to write")->required();
    tf_cmd->add_option("--mode", tf_mode, "Write mode: new, append-feature, append-instance")
        ->check(CLI::IsMember({"new", "append-feature", "append-instance"}));
    tf_cmd->add_option("--rows", tf_rows, "Only transform instances a..b (1-based)");
    tf_cmd->add_flag("--with-class", tf_with_class, "Append a class column");
    tf_cmd->add_option("--threads", tf_threads, "Worker thread cap");

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "Classify features and report accuracy");
    std::string eval_in, eval_classifier = "knn", eval_features, eval_train_rows,
                eval_test_rows, eval_report;
    std::size_t eval_k = 1;
    eval_cmd->add_option("--input", eval_in, "Feature CSV with class column")->required();
    eval_cmd->add_option("--classifier", eval_classifier, "knn or lda")
        ->check(CLI::IsMember({"knn", "lda"}));
    eval_cmd->add_option("--k", eval_k, "Neighbor count for knn");
    eval_cmd->add_option("--features", eval_features,
                         "Comma-separated feature column names (default: all)");
    eval_cmd->add_option("--train-rows", eval_train_rows, "Classifier training rows a..b")
        ->required();
    eval_cmd->add_option("--test-rows", eval_test_rows, "Evaluation rows a..b")->required();
    eval_cmd->add_option("--report", eval_report, "Optional JSON report file");

    // ---- scatter ----
    auto* sc_cmd = app.add_subcommand("scatter", "Emit 2-feature plot data");
    std::string sc_in, sc_x, sc_y, sc_out, sc_svg, sc_train_rows;
    sc_cmd->add_option("--input", sc_in, "Feature CSV")->required();
    sc_cmd->add_option("--x", sc_x, "Feature column for the x axis")->required();
    sc_cmd->add_option("--y", sc_y, "Feature column for the y axis")->required();
    sc_cmd->add_option("--output", sc_out, "Scatter CSV to write")->required();
    sc_cmd->add_option("--svg", sc_svg, "Optional SVG scatter plot");
    sc_cmd->add_option("--train-rows", sc_train_rows,
                       "Rows a..b marked as train, the rest as test");

    // the --manifest flag is expanded before parsing; keep it in the help text
    for (auto* cmd : app.get_subcommands(nullptr)) {
        std::string ignored;
        cmd->add_option("--manifest", ignored, "Plain-text manifest file with long option names");
        for (auto* opt : cmd->get_options())
            if (opt->get_positional() == false && !opt->get_name().empty() &&
                opt->get_name() != "--help")
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    auto args = expand_manifest(argc, argv);
    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes reversed argument lists
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (split_cmd->parsed()) {
        const auto ds = load_input(split_in);
        const auto result = alt::stratified_split(ds, make_split_spec(split_opts));
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!split_out.empty()) {
            file.open(split_out, std::ios::trunc);
            if (!file) alt::throw_io("cannot write " + split_out);
            out = &file;
        }
        *out << "instance,role\n";
        auto dump = [&](const std::vector<std::size_t>& v, const char* role) {
            for (std::size_t i : v) *out << (i + 1) << ',' << role << '\n';
        };
        dump(result.learn, "learn");
        dump(result.train, "train");
        dump(result.test, "test");
        dump(result.leftover, "leftover");
        return 0;
    }

    if (train_cmd->parsed()) {
        const auto start = std::chrono::steady_clock::now();
        const auto ds = load_input(train_in);
        const auto configs = make_configs(r_text, l_text, k_text);
        if (!train_split.learn_count && !train_split.learn_fraction)
            alt::throw_validation("train needs --learn-count or --learn-fraction");
        const auto split = alt::stratified_split(ds, make_split_spec(train_split));
        const auto bank = alt::train_bank(ds, split.learn, configs, train_threads);
        alt::save_model(bank, model_out);
        const auto elapsed = std::chrono::duration<double>(
            std::chrono::steady_clock::now() - start).count();
        std::cout << "model: " << model_out << '\n';
        std::cout << "learn instances: " << split.learn.size() << '\n';
        for (std::size_t g = 0; g < bank.num_configs(); ++g)
            for (std::size_t j = 0; j < bank.num_channels(); ++j)
                for (int y = 1; y <= bank.num_classes(); ++y)
                    std::cout << "bank cfg" << g + 1 << " ch" << j + 1 << " cls" << y << ": "
                              << bank.bank(g, j, y).rows() << "x" << bank.bank(g, j, y).cols()
                              << '\n';
        std::cout << "elapsed: " << elapsed << " s\n";
        return 0;
    }

    if (tf_cmd->parsed()) {
        const auto ds = load_input(tf_in);
        const auto bank = alt::load_model(tf_model);
        const auto methods = alt::parse_methods(tf_methods);

        std::vector<std::size_t> rows;
        if (tf_rows.empty()) {
            for (std::size_t i = 0; i < ds.num_instances(); ++i) rows.push_back(i);
        } else {
            rows = range_indices(parse_range(tf_rows), ds.num_instances(), "--rows");
        }
        std::vector<std::vector<std::vector<double>>> instances;
        std::vector<std::string> labels;
        for (std::size_t i : rows) {
            instances.push_back(ds.instance(i));
            labels.push_back(ds.label_name(ds.label(i)));
        }
        const auto table =
            alt::transform_set(instances, bank, methods,
                               tf_with_class ? labels : std::vector<std::string>{}, tf_threads);
        alt::WriteMode mode = alt::WriteMode::NewFile;
        if (tf_mode == "append-feature") mode = alt::WriteMode::AppendFeature;
        else if (tf_mode == "append-instance") mode = alt::WriteMode::AppendInstance;
        alt::write_features(table, tf_out, mode, tf_with_class);
        std::cout << "features: " << tf_out << " (" << table.rows.size() << " rows x "
                  << table.column_names.size() << " columns)\n";
        return 0;
    }

    if (eval_cmd->parsed()) {
        const auto table = alt::read_features(eval_in);
        if (!table.has_class())
            alt::throw_validation(eval_in + " has no class column; transform with --with-class");

        std::vector<std::size_t> cols;
        if (eval_features.empty()) {
            for (std::size_t c = 0; c < table.column_names.size(); ++c) cols.push_back(c);
        } else {
            for (const auto& name : alt::split_line(eval_features, ',')) {
                const auto it = std::find(table.column_names.begin(), table.column_names.end(),
                                          alt::trim(name));
                if (it == table.column_names.end())
                    alt::throw_validation("unknown feature column '" + alt::trim(name) + "'");
                cols.push_back(static_cast<std::size_t>(it - table.column_names.begin()));
            }
        }

        const auto names = alt::sorted_label_set(table.class_labels);
        auto canonical = [&](const std::string& s) {
            return static_cast<int>(std::find(names.begin(), names.end(), s) - names.begin()) + 1;
        };
        auto select = [&](const std::vector<std::size_t>& rows) {
            alt::LabeledFeatures lf;
            for (std::size_t r : rows) {
                std::vector<double> row;
                for (std::size_t c : cols) row.push_back(table.rows[r][c]);
                lf.features.push_back(std::move(row));
                lf.labels.push_back(canonical(table.class_labels[r]));
            }
            return lf;
        };
        const auto train = select(range_indices(parse_range(eval_train_rows), table.rows.size(),
                                                "--train-rows"));
        const auto test = select(range_indices(parse_range(eval_test_rows), table.rows.size(),
                                               "--test-rows"));

        std::vector<int> predictions;
        if (eval_classifier == "knn") {
            predictions = alt::knn_predict_batch(train, test.features, eval_k);
        } else {
            const auto lda = alt::lda_fit(train);
            for (const auto& row : test.features) predictions.push_back(lda.predict(row));
        }
        const auto ev = alt::evaluate(predictions, test.labels, static_cast<int>(names.size()));

        std::cout << "accuracy: " << alt::format_double(ev.accuracy) << '\n';
        std::cout << "confusion (rows = truth, cols = prediction):\n";
        for (std::size_t t = 0; t < ev.confusion.size(); ++t) {
            std::cout << "  " << names[t] << ":";
            for (int v : ev.confusion[t]) std::cout << ' ' << v;
            std::cout << '\n';
        }
        if (!eval_report.empty()) {
            nlohmann::json report;
            report["accuracy"] = ev.accuracy;
            report["classifier"] = eval_classifier;
            report["labels"] = names;
            report["confusion"] = ev.confusion;
            std::ofstream out(eval_report, std::ios::trunc);
            if (!out) alt::throw_io("cannot write " + eval_report);
            out << report.dump(2) << '\n';
        }
        return 0;
    }

    if (sc_cmd->parsed()) {
        const auto table = alt::read_features(sc_in);
        auto find_col = [&](const std::string& name) {
            const auto it = std::find(table.column_names.begin(), table.column_names.end(), name);
            if (it == table.column_names.end()) {
                std::string available;
                for (const auto& n : table.column_names)
                    available += (available.empty() ? "" : ", ") + n;
                alt::throw_validation("unknown feature column '" + name + "' (available: " +
                                      available + ")");
            }
            return static_cast<std::size_t>(it - table.column_names.begin());
        };
        const std::size_t cx = find_col(sc_x), cy = find_col(sc_y);
        std::optional<RowRange> train_rows;
        if (!sc_train_rows.empty()) train_rows = parse_range(sc_train_rows);
        auto marker = [&](std::size_t r) {
            return (train_rows && r >= train_rows->first && r <= train_rows->last) ? "train"
                                                                                   : "test";
        };

        std::ofstream out(sc_out, std::ios::trunc);
        if (!out) alt::throw_io("cannot write " + sc_out);
        out << "x,y,class,split\n";
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            out << alt::format_double(table.rows[r][cx]) << ','
                << alt::format_double(table.rows[r][cy]) << ','
                << (table.has_class() ? table.class_labels[r] : "") << ',' << marker(r) << '\n';

        if (!sc_svg.empty()) {
            double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
            if (!table.rows.empty()) {
                xmin = xmax = table.rows[0][cx];
                ymin = ymax = table.rows[0][cy];
                for (const auto& row : table.rows) {
                    xmin = std::min(xmin, row[cx]); xmax = std::max(xmax, row[cx]);
                    ymin = std::min(ymin, row[cy]); ymax = std::max(ymax, row[cy]);
                }
            }
            const double pad_x = (xmax - xmin) * 0.05 + 1e-12;
            const double pad_y = (ymax - ymin) * 0.05 + 1e-12;
            xmin -= pad_x; xmax += pad_x; ymin -= pad_y; ymax += pad_y;
            const double width = 640, height = 480;
            auto sx = [&](double x) { return (x - xmin) / (xmax - xmin) * width; };
            auto sy = [&](double y) { return height - (y - ymin) / (ymax - ymin) * height; };
            static const char* palette[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd",
                                            "#ff7f0e", "#8c564b"};
            std::vector<std::string> classes;
            if (table.has_class()) classes = alt::sorted_label_set(table.class_labels);
            auto color = [&](std::size_t r) {
                if (!table.has_class()) return palette[0];
                const auto it = std::find(classes.begin(), classes.end(), table.class_labels[r]);
                return palette[static_cast<std::size_t>(it - classes.begin()) % 6];
            };
            std::ofstream svg(sc_svg, std::ios::trunc);
            if (!svg) alt::throw_io("cannot write " + sc_svg);
            svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
                << height << "' viewBox='0 0 " << width << ' ' << height << "'>\n";
            svg << "<rect width='100%' height='100%' fill='white'/>\n";
            for (std::size_t r = 0; r < table.rows.size(); ++r) {
                const double x = sx(table.rows[r][cx]), y = sy(table.rows[r][cy]);
                if (std::string(marker(r)) == "train") {
                    svg << "<circle cx='" << x << "' cy='" << y << "' r='4' fill='" << color(r)
                        << "'/>\n";
                } else {
                    svg << "<path d='M " << x << ' ' << y - 5 << " L " << x - 4.5 << ' ' << y + 4
                        << " L " << x + 4.5 << ' ' << y + 4 << " Z' fill='" << color(r)
                        << "'/>\n";
                }
            }
            svg << "</svg>\n";
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const alt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case alt::ErrorKind::Validation: return 2;
            case alt::ErrorKind::Io: return 3;
            case alt::ErrorKind::Numeric: return 4;
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

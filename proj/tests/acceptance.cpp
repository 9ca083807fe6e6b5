// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria that need the UCR GunPoint / BasicMotions files look for them
// under $ALT_DATA_DIR (or <source>/data); when the files are absent those
// criteria are reported as SKIP and an equally-shaped synthetic surrogate
// is run at the same thresholds instead.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "alt/classify.hpp"
#include "alt/dataset.hpp"
#include "alt/model.hpp"
#include "alt/rng.hpp"
#include "alt/text.hpp"
#include "alt/transform.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

void skip(const std::string& name, const std::string& why) {
    std::cout << name << ": SKIP (" << why << ")" << std::endl;
}

std::string data_dir() {
    if (const char* env = std::getenv("ALT_DATA_DIR")) return env;
    return std::string(ALT_SOURCE_DIR) + "/data";
}

bool exists(const std::string& p) { return std::filesystem::exists(p); }

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::vector<std::vector<std::vector<double>>> all_instances(const alt::TimeSeriesDataset& ds) {
    std::vector<std::vector<std::vector<double>>> out;
    for (std::size_t i = 0; i < ds.num_instances(); ++i) out.push_back(ds.instance(i));
    return out;
}

std::vector<std::size_t> find_columns(const alt::FeatureTable& table,
                                      const std::vector<std::string>& names) {
    std::vector<std::size_t> cols;
    for (const auto& name : names) {
        for (std::size_t c = 0; c < table.column_names.size(); ++c)
            if (table.column_names[c] == name) {
                cols.push_back(c);
                break;
            }
    }
    return cols;
}

alt::LabeledFeatures select(const alt::FeatureTable& table, std::size_t first, std::size_t last,
                            const std::vector<std::size_t>& cols,
                            const std::vector<std::string>& label_names) {
    alt::LabeledFeatures lf;
    for (std::size_t r = first; r <= last; ++r) {
        std::vector<double> row;
        for (std::size_t c : cols) row.push_back(table.rows[r][c]);
        lf.features.push_back(std::move(row));
        for (std::size_t q = 0; q < label_names.size(); ++q)
            if (label_names[q] == table.class_labels[r]) {
                lf.labels.push_back(static_cast<int>(q) + 1);
                break;
            }
    }
    return lf;
}

// ---- criterion 1: GunPoint, (25,4,1), LDA on the class-wise mean@0.05 ----

double gunpoint_style_accuracy(const alt::TimeSeriesDataset& train_ds,
                               const alt::TimeSeriesDataset& test_ds) {
    std::vector<std::size_t> learn;
    for (std::size_t i = 0; i < 10; ++i) learn.push_back(i);
    const auto bank = alt::train_bank(train_ds, learn, {{25, 4, 1}}, 1);
    const auto methods = alt::parse_methods("mean_all,mean@0.05");

    auto train_instances = all_instances(train_ds);
    train_instances.erase(train_instances.begin(), train_instances.begin() + 10);
    std::vector<std::string> train_labels;
    for (std::size_t i = 10; i < train_ds.num_instances(); ++i)
        train_labels.push_back(train_ds.label_name(train_ds.label(i)));
    const auto train_table =
        alt::transform_set(train_instances, bank, methods, train_labels, 1);

    std::vector<std::string> test_labels;
    for (std::size_t i = 0; i < test_ds.num_instances(); ++i)
        test_labels.push_back(test_ds.label_name(test_ds.label(i)));
    const auto test_table =
        alt::transform_set(all_instances(test_ds), bank, methods, test_labels, 1);

    const auto cols = find_columns(
        train_table, {"ch1.cfg1.cls1.mean@0.05", "ch1.cfg1.cls2.mean@0.05"});
    const auto names = alt::sorted_label_set(train_table.class_labels);
    const auto tr = select(train_table, 0, train_table.rows.size() - 1, cols, names);
    const auto te = select(test_table, 0, test_table.rows.size() - 1, cols, names);

    const auto lda = alt::lda_fit(tr);
    std::vector<int> preds;
    for (const auto& row : te.features) preds.push_back(lda.predict(row));
    return alt::evaluate(preds, te.labels, 2).accuracy;
}

void criterion1() {
    const std::string dir = data_dir() + "/GunPoint";
    const std::string train_path = dir + "/GunPoint_TRAIN.ts";
    const std::string test_path = dir + "/GunPoint_TEST.ts";
    if (exists(train_path) && exists(test_path)) {
        Timer timer;
        const double acc =
            gunpoint_style_accuracy(alt::load_ts(train_path), alt::load_ts(test_path));
        const double secs = timer.seconds();
        report("criterion 1 (GunPoint LDA >= 0.90)", acc >= 0.90 && secs < 10.0,
               "accuracy " + std::to_string(acc) + ", " + std::to_string(secs) + " s");
    } else {
        skip("criterion 1 (GunPoint LDA >= 0.90)",
             "dataset not found; place GunPoint_TRAIN.ts / GunPoint_TEST.ts under " + dir);
    }
    // surrogate with the GunPoint shape: 50 train / 150 test, h = 150, c = 2
    Timer timer;
    const auto train_ds = testutil::make_sine_dataset(25, 2, 1, 150, 101, 0.1);
    const auto test_ds = testutil::make_sine_dataset(75, 2, 1, 150, 202, 0.1);
    const double acc = gunpoint_style_accuracy(train_ds, test_ds);
    const double secs = timer.seconds();
    report("criterion 1 surrogate (synthetic, same shape and thresholds)",
           acc >= 0.90 && secs < 10.0,
           "accuracy " + std::to_string(acc) + ", " + std::to_string(secs) + " s");
}

// ---- criterion 2: BasicMotions, (53,27,1), sensor 2, 1-NN on two mean_all ----

double basicmotions_style_accuracy(const alt::TimeSeriesDataset& train_ds,
                                   const alt::TimeSeriesDataset& test_ds,
                                   const std::string& feature_a, const std::string& feature_b) {
    std::vector<std::size_t> learn;
    for (std::size_t i = 0; i < train_ds.num_instances(); ++i) learn.push_back(i);
    const auto bank = alt::train_bank(train_ds, learn, {{53, 27, 1}}, 1);
    const auto methods = alt::parse_methods("mean_all");

    std::vector<std::string> train_labels, test_labels;
    for (std::size_t i = 0; i < train_ds.num_instances(); ++i)
        train_labels.push_back(train_ds.label_name(train_ds.label(i)));
    for (std::size_t i = 0; i < test_ds.num_instances(); ++i)
        test_labels.push_back(test_ds.label_name(test_ds.label(i)));

    const auto train_table =
        alt::transform_set(all_instances(train_ds), bank, methods, train_labels, 1);
    const auto test_table =
        alt::transform_set(all_instances(test_ds), bank, methods, test_labels, 1);

    const auto cols = find_columns(train_table, {feature_a, feature_b});
    const auto names = alt::sorted_label_set(train_labels);
    const auto tr = select(train_table, 0, train_table.rows.size() - 1, cols, names);
    const auto te = select(test_table, 0, test_table.rows.size() - 1, cols, names);

    const auto preds = alt::knn_predict_batch(tr, te.features, 1);
    return alt::evaluate(preds, te.labels, static_cast<int>(names.size())).accuracy;
}

void criterion2() {
    const std::string dir = data_dir() + "/BasicMotions";
    const std::string train_path = dir + "/BasicMotions_TRAIN.ts";
    const std::string test_path = dir + "/BasicMotions_TEST.ts";
    if (exists(train_path) && exists(test_path)) {
        Timer timer;
        // labels sort to badminton, running, standing, walking: cls1 and cls4
        const double acc = basicmotions_style_accuracy(
            alt::load_ts(train_path), alt::load_ts(test_path),
            "ch2.cfg1.cls4.mean_all", "ch2.cfg1.cls1.mean_all");
        const double secs = timer.seconds();
        report("criterion 2 (BasicMotions 1-NN >= 0.95)", acc >= 0.95 && secs < 30.0,
               "accuracy " + std::to_string(acc) + ", " + std::to_string(secs) + " s");
    } else {
        skip("criterion 2 (BasicMotions 1-NN >= 0.95)",
             "dataset not found; place BasicMotions_TRAIN.ts / BasicMotions_TEST.ts under " +
                 dir);
    }
    // surrogate: 4 classes, 2 channels, h = 100, 10 train / 10 test per class
    Timer timer;
    const auto train_ds = testutil::make_sine_dataset(10, 4, 2, 100, 303, 0.05);
    const auto test_ds = testutil::make_sine_dataset(10, 4, 2, 100, 404, 0.05);
    const double acc = basicmotions_style_accuracy(train_ds, test_ds, "ch2.cfg1.cls4.mean_all",
                                                   "ch2.cfg1.cls1.mean_all");
    const double secs = timer.seconds();
    report("criterion 2 surrogate (synthetic, same shape and thresholds)",
           acc >= 0.95 && secs < 30.0,
           "accuracy " + std::to_string(acc) + ", " + std::to_string(secs) + " s");
}

// ---- criterion 3: brute-force pipeline oracle over tiny datasets ----

void criterion3() {
    std::uint64_t seed = 5000;
    bool ok = true;
    std::string detail;
    int checked = 0;
    for (int ds_idx = 0; ds_idx < 50 && ok; ++ds_idx) {
        alt::SplitMix64 rng(seed + static_cast<std::uint64_t>(ds_idx));
        const std::size_t tau = 4 + rng.next_below(3);      // <= 6
        const std::size_t m = 1 + rng.next_below(2);        // <= 2
        const std::size_t h = 9 + rng.next_below(4);        // <= 12
        const std::size_t r = (ds_idx % 2 == 0) ? 3 : 5;
        const std::size_t k = (ds_idx % 4 < 2) ? 1 : 2;

        std::vector<std::vector<std::vector<double>>> values;
        std::vector<int> labels;
        for (std::size_t i = 0; i < tau; ++i) {
            std::vector<std::vector<double>> inst;
            for (std::size_t j = 0; j < m; ++j) {
                std::vector<double> s(h);
                for (double& v : s) v = 5 * testutil::uniform(rng);
                inst.push_back(std::move(s));
            }
            values.push_back(std::move(inst));
            labels.push_back(static_cast<int>(i % 2) + 1);
        }
        const alt::TimeSeriesDataset ds(values, labels, {"1", "2"});
        std::vector<std::size_t> learn;
        for (std::size_t i = 0; i < tau; ++i) learn.push_back(i);

        const auto bank = alt::train_bank(ds, learn, {{r, 2, k}}, 1);
        const auto methods = alt::parse_methods("mean_all,mean@0.05,4th_moment@0.5");
        const std::vector<oracle::PerRowSpec> oracle_methods{
            {true, 0, 0}, {false, 0.05, 1}, {false, 0.5, 4}};

        for (std::size_t i = 0; i < tau && ok; ++i) {
            const auto got = alt::transform_instance(ds.instance(i), bank, methods);
            const auto want = oracle::pipeline_features_l2(values, labels, 2, learn, {r, 2, k},
                                                           values[i], oracle_methods);
            for (std::size_t f = 0; f < got.size(); ++f) {
                ++checked;
                if (std::abs(got[f] - want[f]) > 1e-10) {
                    ok = false;
                    detail = "mismatch " + std::to_string(got[f]) + " vs " +
                             std::to_string(want[f]) + " at dataset " + std::to_string(ds_idx);
                    break;
                }
            }
        }
    }
    report("criterion 3 (pipeline vs straight-line oracle, 50 datasets)", ok,
           ok ? std::to_string(checked) + " features compared" : detail);
}

// ---- criterion 4: eigensolver vs closed forms and residuals ----

void criterion4() {
    alt::SplitMix64 rng(77);
    bool closed_ok = true;
    for (int trial = 0; trial < 1000 && closed_ok; ++trial) {
        alt::Matrix s2(2, 2);
        s2(0, 0) = 10 * testutil::uniform(rng);
        s2(1, 1) = 10 * testutil::uniform(rng);
        s2(0, 1) = s2(1, 0) = 10 * testutil::uniform(rng);
        const auto got2 = alt::eig_symmetric(s2);
        const auto want2 = oracle::eig2_values(s2(0, 0), s2(0, 1), s2(1, 1));
        for (int i = 0; i < 2; ++i)
            if (std::abs(got2.eigenvalues[static_cast<std::size_t>(i)] -
                         want2[static_cast<std::size_t>(i)]) > 1e-9)
                closed_ok = false;

        double raw[3][3];
        alt::Matrix s3(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
                const double v = 10 * testutil::uniform(rng);
                raw[a][b] = raw[b][a] = v;
                s3(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = v;
                s3(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = v;
            }
        const auto got3 = alt::eig_symmetric(s3);
        const auto want3 = oracle::eig3_values(raw);
        for (int i = 0; i < 3; ++i)
            if (std::abs(got3.eigenvalues[static_cast<std::size_t>(i)] -
                         want3[static_cast<std::size_t>(i)]) > 1e-9)
                closed_ok = false;
    }
    report("criterion 4a (eigenvalues vs closed forms, 1000 trials)", closed_ok);

    bool residual_ok = true;
    for (int trial = 0; trial < 1000 && residual_ok; ++trial) {
        const std::size_t n = 2 + rng.next_below(29);  // <= 30
        alt::Matrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                s(i, j) = s(j, i) = 10 * testutil::uniform(rng);
        double fro = 0;
        for (double v : s.data()) fro += v * v;
        fro = std::sqrt(fro);
        const auto e = alt::eig_symmetric(s);
        for (std::size_t c = 0; c < n && residual_ok; ++c) {
            double res = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (std::size_t j = 0; j < n; ++j) acc += s(i, j) * e.eigenvectors(j, c);
                acc -= e.eigenvalues[c] * e.eigenvectors(i, c);
                res += acc * acc;
            }
            if (std::sqrt(res) > 1e-10 * std::max(1.0, fro)) residual_ok = false;
        }
    }
    report("criterion 4b (residuals <= 1e-10 * max(1, ||S||_F), n <= 30, 1000 trials)",
           residual_ok);
}

// ---- criterion 5: structural identities ----

void criterion5() {
    bool counts_ok = true;
    for (std::size_t h = 1; h <= 40 && counts_ok; ++h)
        for (std::size_t r = 1; r <= h; ++r)
            for (std::size_t k = 1; k <= h; ++k)
                if (alt::window_count(h, r, k) != oracle::window_starts(h, r, k).size())
                    counts_ok = false;
    report("criterion 5a (window count vs enumeration, h <= 40)", counts_ok);

    alt::SplitMix64 rng(55);
    bool subsample_ok = true;
    std::vector<double> x(61);
    for (double& v : x) v = testutil::uniform(rng);
    for (std::size_t k = 2; k <= 5 && subsample_ok; ++k) {
        const alt::Matrix a1 = alt::build_embedding_matrix(x, {9, 3, 1});
        const alt::Matrix ak = alt::build_embedding_matrix(x, {9, 3, k});
        for (std::size_t p = 0; p < ak.rows(); ++p)
            for (std::size_t q = 0; q < ak.cols(); ++q)
                if (ak(p, q) != a1(p * k, q)) subsample_ok = false;
    }
    report("criterion 5b (A-matrix k-subsampling law, exact)", subsample_ok);

    const auto sh = alt::compute_shapelet({2, 5, 8, 11, 14});  // arithmetic progression
    const double inv = 1.0 / std::sqrt(6.0);
    const bool arith_ok = std::abs(sh.eigenvalue) <= 1e-12 &&
                          std::abs(sh.v[0] + inv) <= 1e-12 &&
                          std::abs(sh.v[1] - 2 * inv) <= 1e-12 &&
                          std::abs(sh.v[2] + inv) <= 1e-12;
    report("criterion 5c (arithmetic progression: lambda = 0, v ∝ (1,-2,1)/√6)", arith_ok);
}

// ---- criterion 6: invariance suite ----

void criterion6() {
    // learn-instance scaling by an exactly representable factor keeps the
    // serialized model byte-identical
    const auto base = testutil::make_sine_dataset(3, 2, 1, 40, 99, 0.2);
    std::vector<std::vector<std::vector<double>>> scaled_values;
    std::vector<int> labels;
    for (std::size_t i = 0; i < base.num_instances(); ++i) {
        auto inst = base.instance(i);
        if (i == 2)
            for (auto& ch : inst)
                for (double& v : ch) v *= 4.0;  // power of two: exact scaling
        scaled_values.push_back(inst);
        labels.push_back(base.label(i));
    }
    const alt::TimeSeriesDataset scaled(scaled_values, labels, base.label_names());

    const std::vector<std::size_t> learn{0, 1, 2, 3};
    testutil::TempFile f1(".altm"), f2(".altm");
    alt::save_model(alt::train_bank(base, learn, {{9, 3, 1}}, 1), f1.path());
    alt::save_model(alt::train_bank(scaled, learn, {{9, 3, 1}}, 1), f2.path());
    report("criterion 6a (learn-instance scaling: model bytes unchanged)",
           testutil::read_text(f1.path()) == testutil::read_text(f2.path()));

    // feature homogeneity under transformed-instance scaling
    const auto bank = alt::train_bank(base, learn, {{9, 3, 1}}, 1);
    const auto methods = alt::parse_methods("mean_all,mean@0.1,2nd_moment@0.1,4th_moment@0.1");
    const double alpha = 3.7;
    auto inst = base.instance(4);
    auto scaled_inst = inst;
    for (auto& ch : scaled_inst)
        for (double& v : ch) v *= alpha;
    const auto before = alt::transform_instance(inst, bank, methods);
    const auto after = alt::transform_instance(scaled_inst, bank, methods);
    bool homo_ok = true;
    for (std::size_t b = 0; b < before.size(); b += 4) {
        auto rel = [](double got, double want) {
            return std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
        };
        if (!rel(after[b], alpha * before[b]) || !rel(after[b + 1], alpha * before[b + 1]) ||
            !rel(after[b + 2], alpha * before[b + 2]) || !rel(after[b + 3], before[b + 3]))
            homo_ok = false;
    }
    report("criterion 6b (feature homogeneity: mean x alpha, kurtosis unchanged)", homo_ok);
}

// ---- criterion 7: persistence round-trips and append-mode properties ----

void criterion7() {
    const auto ds = testutil::make_sine_dataset(4, 2, 2, 36, 111, 0.25);
    std::vector<std::size_t> learn{0, 1, 2, 3, 4, 5};
    const auto bank = alt::train_bank(ds, learn, {{9, 3, 1}, {5, 2, 2}}, 1);

    testutil::TempFile mf(".altm");
    alt::save_model(bank, mf.path());
    const auto back = alt::load_model(mf.path());
    bool model_ok = back.configs() == bank.configs();
    for (std::size_t g = 0; g < 2 && model_ok; ++g)
        for (std::size_t j = 0; j < 2 && model_ok; ++j)
            for (int y = 1; y <= 2 && model_ok; ++y)
                if (!(back.bank(g, j, y) == bank.bank(g, j, y))) model_ok = false;
    report("criterion 7a (model save/load bit-exact)", model_ok);

    const auto methods = alt::parse_methods("mean_all,mean@0.05");
    std::vector<std::string> lab;
    for (std::size_t i = 0; i < ds.num_instances(); ++i)
        lab.push_back(ds.label_name(ds.label(i)));
    const auto table = alt::transform_set(all_instances(ds), bank, methods, lab, 1);

    testutil::TempFile ff(".csv");
    alt::write_features(table, ff.path(), alt::WriteMode::NewFile, true);
    const auto tback = alt::read_features(ff.path());
    report("criterion 7b (feature CSV write/read bit-exact)",
           tback.rows == table.rows && tback.column_names == table.column_names &&
               tback.class_labels == table.class_labels);

    // append-mode property checks over randomized tables
    alt::SplitMix64 rng(222);
    bool append_ok = true;
    for (int trial = 0; trial < 40 && append_ok; ++trial) {
        const std::size_t rows = 1 + rng.next_below(6);
        const std::size_t cols = 1 + rng.next_below(4);
        auto make_table = [&](const std::string& prefix) {
            alt::FeatureTable t;
            for (std::size_t c = 0; c < cols; ++c)
                t.column_names.push_back(prefix + std::to_string(c));
            for (std::size_t r = 0; r < rows; ++r) {
                std::vector<double> row(cols);
                for (double& v : row) v = testutil::uniform(rng);
                t.rows.push_back(std::move(row));
                t.class_labels.push_back(rng.next_below(2) ? "a" : "b");
            }
            return t;
        };
        const auto t1 = make_table("f");
        auto t2 = make_table("g");
        t2.class_labels = t1.class_labels;

        testutil::TempFile f(".csv");
        alt::write_features(t1, f.path(), alt::WriteMode::NewFile, true);
        alt::write_features(t2, f.path(), alt::WriteMode::AppendFeature, true);
        auto merged = alt::read_features(f.path());
        if (merged.column_names.size() != 2 * cols || merged.rows.size() != rows ||
            !merged.has_class())
            append_ok = false;
        if (append_ok && (merged.rows[0][cols] != t2.rows[0][0])) append_ok = false;

        // append-instance doubles the row count
        alt::FeatureTable wide = merged;
        alt::write_features(wide, f.path(), alt::WriteMode::AppendInstance, true);
        merged = alt::read_features(f.path());
        if (merged.rows.size() != 2 * rows) append_ok = false;

        // wrong row count must be rejected (file now holds 2*rows rows)
        alt::FeatureTable bad;
        for (std::size_t c = 0; c < cols; ++c) bad.column_names.push_back("h" + std::to_string(c));
        for (std::size_t r = 0; r < 2 * rows + 1; ++r) {
            bad.rows.push_back(std::vector<double>(cols, 0.0));
            bad.class_labels.push_back("a");
        }
        try {
            alt::write_features(bad, f.path(), alt::WriteMode::AppendFeature, true);
            append_ok = false;
        } catch (const alt::Error&) {
        }
    }
    report("criterion 7c (append-mode contracts under randomized tables)", append_ok);
}

// ---- criterion 8: CLI determinism across thread counts ----

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ALT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

void criterion8() {
    // same pipelines as criteria 1-2 (surrogate data), --threads 1 vs 8
    const auto ds = testutil::make_sine_dataset(10, 4, 2, 100, 505, 0.05);
    testutil::TempFile data(".ts");
    {
        std::string body = "@problemName determinism\n@dimensions 2\n@classLabel true";
        for (const auto& n : ds.label_names()) body += " " + n;
        body += "\n@data\n";
        for (std::size_t i = 0; i < ds.num_instances(); ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                const auto& s = ds.series(i, j);
                for (std::size_t t = 0; t < s.size(); ++t)
                    body += (t ? "," : "") + alt::format_double(s[t]);
                body += ':';
            }
            body += ds.label_name(ds.label(i)) + "\n";
        }
        testutil::write_text(data.path(), body);
    }

    testutil::TempFile m1(".altm"), m8(".altm"), f1(".csv"), f8(".csv");
    bool ok = true;
    ok &= run_cli("train --input " + data.path() +
                  " --learn-count 8 --take-first --r 53 --l 27 --k 1 --threads 1 --output " +
                  m1.path()) == 0;
    ok &= run_cli("train --input " + data.path() +
                  " --learn-count 8 --take-first --r 53 --l 27 --k 1 --threads 8 --output " +
                  m8.path()) == 0;
    ok &= testutil::read_text(m1.path()) == testutil::read_text(m8.path());
    ok &= !testutil::read_text(m1.path()).empty();

    ok &= run_cli("transform --input " + data.path() + " --model " + m1.path() +
                  " --methods mean_all,mean@0.05 --with-class --threads 1 --output " +
                  f1.path()) == 0;
    ok &= run_cli("transform --input " + data.path() + " --model " + m1.path() +
                  " --methods mean_all,mean@0.05 --with-class --threads 8 --output " +
                  f8.path()) == 0;
    ok &= testutil::read_text(f1.path()) == testutil::read_text(f8.path());
    ok &= !testutil::read_text(f1.path()).empty();

    report("criterion 8 (byte-identical outputs at --threads 1 and --threads 8)", ok);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures) {
        std::cout << failures << " criterion check(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criterion checks passed" << std::endl;
    return 0;
}

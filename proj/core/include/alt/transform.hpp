#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alt/matrix.hpp"
#include "alt/model.hpp"

namespace alt {

enum class Aggregator { Mean, M2, M3, M4 };

/// One feature-extraction recipe: either the mean of every entry of a class
/// block of O ("mean_all"), or a per-row quantile followed by a moment
/// aggregator ("mean@0.05", "4th_moment@0.05", ...).
struct ExtractionMethod {
    enum class Kind { MeanAll, PerRow };
    Kind kind = Kind::MeanAll;
    double quantile = 0.0;                   // PerRow only, in (0,1)
    Aggregator aggregator = Aggregator::Mean;

    std::string to_string() const;
    static ExtractionMethod parse(const std::string& text);
    bool operator==(const ExtractionMethod&) const = default;
};

std::vector<ExtractionMethod> parse_methods(const std::string& comma_separated);

/// Instances x (m*c*n*g) named feature matrix with an optional class column
/// (original label text).
struct FeatureTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> class_labels;  // empty, or one per row

    bool has_class() const noexcept { return !class_labels.empty(); }
};

/// Canonical feature column names: channel ascending, then config, then
/// class, then method list order. Pattern: ch{j}.cfg{g}.cls{y}.{method}.
std::vector<std::string> feature_names(const ShapeletBank& bank,
                                       const std::vector<ExtractionMethod>& methods);

/// The o x l strided embedding of a full series, o = floor((h - s*l + 1)/k),
/// A(p,q) = series[p*k + q*s].
Matrix build_embedding_matrix(const std::vector<double>& series, const WindowConfig& cfg);

/// O = |A * P|, elementwise magnitude of the projection.
Matrix project(const Matrix& a, const Matrix& p);

/// Linear-interpolation quantile at zero-based position q*(n-1) of the
/// sorted values.
double quantile_linear(std::vector<double> values, double q);

/// Reduce one class block of O to a scalar.
double extract_feature(const Matrix& class_block, const ExtractionMethod& method);

/// All m*c*n*g features of one instance, in canonical column order.
std::vector<double> transform_instance(const std::vector<std::vector<double>>& channels,
                                       const ShapeletBank& bank,
                                       const std::vector<ExtractionMethod>& methods);

/// Transform many instances; one table row per instance, schedule-independent.
FeatureTable transform_set(const std::vector<std::vector<std::vector<double>>>& instances,
                           const ShapeletBank& bank,
                           const std::vector<ExtractionMethod>& methods,
                           const std::vector<std::string>& labels = {},
                           unsigned threads = 1);

enum class WriteMode { NewFile, AppendFeature, AppendInstance };

/// Write or extend a feature CSV. AppendFeature requires matching row count
/// (and class column, when both have one) and inserts the new columns before
/// any class column; AppendInstance requires an identical header and appends
/// rows. Values are 17-significant-digit decimals.
void write_features(const FeatureTable& table, const std::string& path, WriteMode mode,
                    bool include_class);

FeatureTable read_features(const std::string& path);

}  // namespace alt

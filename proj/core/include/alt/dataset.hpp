#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alt/error.hpp"

namespace alt {

/// Labeled time series collection: tau instances, m channels each, with a
/// per-instance length. Immutable once built; safe to share across threads.
class TimeSeriesDataset {
public:
    /// values[i][j] is channel j of instance i; all channels of one instance
    /// have the same length. labels are canonical, 1..c. label_names maps
    /// canonical label y to the original external label (sorted order).
    TimeSeriesDataset(std::vector<std::vector<std::vector<double>>> values,
                      std::vector<int> labels,
                      std::vector<std::string> label_names);

    std::size_t num_instances() const noexcept { return values_.size(); }
    std::size_t num_channels() const noexcept { return num_channels_; }
    int num_classes() const noexcept { return static_cast<int>(label_names_.size()); }

    std::size_t length(std::size_t instance) const { return values_[instance][0].size(); }
    bool fixed_length() const noexcept { return fixed_length_; }

    const std::vector<double>& series(std::size_t instance, std::size_t channel) const {
        return values_[instance][channel];
    }
    const std::vector<std::vector<double>>& instance(std::size_t i) const { return values_[i]; }

    int label(std::size_t instance) const { return labels_[instance]; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    const std::string& label_name(int canonical) const { return label_names_[canonical - 1]; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }

private:
    std::vector<std::vector<std::vector<double>>> values_;
    std::vector<int> labels_;
    std::vector<std::string> label_names_;
    std::size_t num_channels_ = 0;
    bool fixed_length_ = true;
};

enum class SplitMode { Stratified, TakeFirst };

/// Learn/train/test tripartition request. Counts and fractions are mutually
/// exclusive per subset; test defaults to the remainder when unset.
struct SplitSpec {
    std::optional<std::size_t> learn_count;
    std::optional<double> learn_fraction;
    std::optional<std::size_t> train_count;
    std::optional<double> train_fraction;
    std::optional<std::size_t> test_count;
    std::uint64_t seed = 0;
    SplitMode mode = SplitMode::Stratified;
};

struct SplitResult {
    std::vector<std::size_t> learn;     // 0-based instance indices
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::vector<std::size_t> leftover;  // only when explicit counts under-cover
};

/// Canonicalize external labels: sorted unique labels map to 1..c. Labels
/// that all parse as integers sort numerically, otherwise lexicographically.
std::vector<std::string> sorted_label_set(const std::vector<std::string>& raw);

/// Read a sktime/UCR-style `.ts` file (header directives @problemName,
/// @univariate / @dimensions, @classLabel, @data; `:`-separated channels,
/// `,`-separated values, label last).
TimeSeriesDataset load_ts(const std::string& path);

enum class CsvLayout { RowPerInstance, LongFormat };

/// Read a CSV: RowPerInstance (one row = one single-channel instance with
/// optional trailing label) or LongFormat (instance,channel,time,value[,label]).
TimeSeriesDataset load_csv(const std::string& path, CsvLayout layout, bool has_labels);

/// Write RowPerInstance CSV with 17-significant-digit values so that
/// load_csv round-trips bit-exactly.
void write_csv(const TimeSeriesDataset& ds, const std::string& path, bool with_labels);

SplitResult stratified_split(const TimeSeriesDataset& ds, const SplitSpec& spec);

}  // namespace alt

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "alt/dataset.hpp"
#include "alt/lawcore.hpp"
#include "alt/matrix.hpp"

namespace alt {

/// Origin of one shapelet column: which learn instance and which window
/// start position (both 0-based) it was computed from.
struct ColumnProvenance {
    std::size_t instance = 0;
    std::size_t window_start = 0;
};

/// Trained model: for every (config, channel, class) a matrix whose columns
/// are unit-norm shapelet vectors. Immutable once trained; shareable across
/// threads.
class ShapeletBank {
public:
    ShapeletBank() = default;
    ShapeletBank(std::vector<WindowConfig> configs, std::size_t num_channels,
                 std::vector<std::string> label_names);

    std::size_t num_configs() const noexcept { return configs_.size(); }
    std::size_t num_channels() const noexcept { return num_channels_; }
    int num_classes() const noexcept { return static_cast<int>(label_names_.size()); }
    const std::vector<WindowConfig>& configs() const noexcept { return configs_; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }

    /// Shapelet matrix P for (config g, channel j) both 0-based, class y 1-based.
    const Matrix& bank(std::size_t g, std::size_t j, int y) const;
    Matrix& bank(std::size_t g, std::size_t j, int y);

    const std::vector<ColumnProvenance>& provenance(std::size_t g, std::size_t j, int y) const;
    std::vector<ColumnProvenance>& provenance(std::size_t g, std::size_t j, int y);

private:
    std::size_t flat_index(std::size_t g, std::size_t j, int y) const;

    std::vector<WindowConfig> configs_;
    std::size_t num_channels_ = 0;
    std::vector<std::string> label_names_;
    std::vector<Matrix> banks_;                                // (g, j, y) ascending
    std::vector<std::vector<ColumnProvenance>> provenance_;
};

/// Build the shapelet bank from the learn instances. Column order within a
/// bank is fixed: learn instances by ascending index, windows by ascending
/// start. `threads` caps worker parallelism; the result is byte-identical
/// for any thread count.
ShapeletBank train_bank(const TimeSeriesDataset& ds,
                        const std::vector<std::size_t>& learn_indices,
                        const std::vector<WindowConfig>& configs,
                        unsigned threads = 1);

/// ALT-MODEL v1 file: one JSON header line, matrices as 17-significant-digit
/// decimals in deterministic (g, j, y) order, trailing checksum line.
void save_model(const ShapeletBank& bank, const std::string& path);

ShapeletBank load_model(const std::string& path);

}  // namespace alt

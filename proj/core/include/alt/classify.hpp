#pragma once

#include <cstddef>
#include <vector>

namespace alt {

struct LabeledFeatures {
    std::vector<std::vector<double>> features;  // row per instance
    std::vector<int> labels;                    // 1..c
};

/// Majority vote among the k nearest training rows (Euclidean). Distance
/// ties prefer the lower row index; vote ties prefer the tied class with
/// the nearest single neighbor, then the smaller class label.
int knn_predict(const LabeledFeatures& train, const std::vector<double>& query,
                std::size_t k_neighbors);

std::vector<int> knn_predict_batch(const LabeledFeatures& train,
                                   const std::vector<std::vector<double>>& queries,
                                   std::size_t k_neighbors);

/// Two-class Fisher discriminant: w = (Sigma_pooled + eps I)^-1 (mu2 - mu1),
/// eps = 1e-9 * trace(Sigma_pooled) / dim, threshold b = w.(mu1 + mu2)/2.
struct LinearDiscriminant {
    std::vector<double> weights;
    double threshold = 0;

    /// Class 2 iff w.x > b; ties go to class 1.
    int predict(const std::vector<double>& x) const;
};

LinearDiscriminant lda_fit(const LabeledFeatures& train);

struct Evaluation {
    double accuracy = 0;
    std::vector<std::vector<int>> confusion;  // [truth-1][prediction-1]
};

Evaluation evaluate(const std::vector<int>& predictions, const std::vector<int>& truth,
                    int num_classes);

}  // namespace alt

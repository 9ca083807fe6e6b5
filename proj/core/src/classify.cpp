#include "alt/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "alt/error.hpp"

namespace alt {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw_validation("feature dimension mismatch in kNN");
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace

int knn_predict(const LabeledFeatures& train, const std::vector<double>& query,
                std::size_t k_neighbors) {
    const std::size_t n = train.features.size();
    if (n == 0) throw_validation("kNN training set is empty");
    if (train.labels.size() != n) throw_validation("kNN label count mismatch");
    if (k_neighbors < 1 || k_neighbors > n)
        throw_validation("k must be between 1 and the training size");

    std::vector<std::pair<double, std::size_t>> dist(n);  // (d^2, row); ties by row
    for (std::size_t i = 0; i < n; ++i) dist[i] = {squared_distance(train.features[i], query), i};
    std::sort(dist.begin(), dist.end());

    std::map<int, std::size_t> votes;
    std::map<int, double> nearest;
    for (std::size_t i = 0; i < k_neighbors; ++i) {
        const int y = train.labels[dist[i].second];
        ++votes[y];
        auto it = nearest.find(y);
        if (it == nearest.end()) nearest[y] = dist[i].first;
    }

    std::size_t best_votes = 0;
    for (const auto& [y, v] : votes) best_votes = std::max(best_votes, v);
    int winner = 0;
    double winner_nearest = std::numeric_limits<double>::infinity();
    for (const auto& [y, v] : votes) {  // map iterates labels ascending
        if (v != best_votes) continue;
        if (winner == 0 || nearest[y] < winner_nearest) {
            winner = y;
            winner_nearest = nearest[y];
        }
    }
    return winner;
}

std::vector<int> knn_predict_batch(const LabeledFeatures& train,
                                   const std::vector<std::vector<double>>& queries,
                                   std::size_t k_neighbors) {
    std::vector<int> out(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i)
        out[i] = knn_predict(train, queries[i], k_neighbors);
    return out;
}

int LinearDiscriminant::predict(const std::vector<double>& x) const {
    if (x.size() != weights.size()) throw_validation("feature dimension mismatch in LDA");
    double score = 0;
    for (std::size_t i = 0; i < x.size(); ++i) score += weights[i] * x[i];
    return score > threshold ? 2 : 1;
}

LinearDiscriminant lda_fit(const LabeledFeatures& train) {
    const std::size_t n = train.features.size();
    if (n == 0) throw_validation("LDA training set is empty");
    if (train.labels.size() != n) throw_validation("LDA label count mismatch");
    const std::size_t dim = train.features[0].size();

    std::vector<double> mu1(dim, 0.0), mu2(dim, 0.0);
    std::size_t n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int y = train.labels[i];
        if (y == 1) {
            ++n1;
            for (std::size_t d = 0; d < dim; ++d) mu1[d] += train.features[i][d];
        } else if (y == 2) {
            ++n2;
            for (std::size_t d = 0; d < dim; ++d) mu2[d] += train.features[i][d];
        } else {
            throw_validation("LDA handles exactly two classes (labels 1 and 2)");
        }
    }
    if (n1 == 0 || n2 == 0) throw_validation("LDA needs both classes in the training set");
    for (std::size_t d = 0; d < dim; ++d) {
        mu1[d] /= static_cast<double>(n1);
        mu2[d] /= static_cast<double>(n2);
    }

    // Pooled within-class covariance (population normalization).
    std::vector<std::vector<double>> sigma(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& mu = train.labels[i] == 1 ? mu1 : mu2;
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                sigma[a][b] += (train.features[i][a] - mu[a]) * (train.features[i][b] - mu[b]);
    }
    double tr = 0;
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) sigma[a][b] /= static_cast<double>(n);
        tr += sigma[a][a];
    }
    const double ridge = 1e-9 * tr / static_cast<double>(dim);
    for (std::size_t a = 0; a < dim; ++a) sigma[a][a] += ridge;

    // Solve (Sigma + eps I) w = mu2 - mu1 by Gaussian elimination with
    // partial pivoting; dim is tiny here.
    std::vector<double> rhs(dim);
    for (std::size_t d = 0; d < dim; ++d) rhs[d] = mu2[d] - mu1[d];
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(sigma[r][col]) > std::abs(sigma[pivot][col])) pivot = r;
        std::swap(sigma[col], sigma[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        if (sigma[col][col] == 0.0)
            throw_numeric("singular pooled covariance in LDA despite ridge");
        for (std::size_t r = col + 1; r < dim; ++r) {
            const double f = sigma[r][col] / sigma[col][col];
            for (std::size_t cc = col; cc < dim; ++cc) sigma[r][cc] -= f * sigma[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    LinearDiscriminant lda;
    lda.weights.assign(dim, 0.0);
    for (std::size_t col = dim; col-- > 0;) {
        double acc = rhs[col];
        for (std::size_t cc = col + 1; cc < dim; ++cc) acc -= sigma[col][cc] * lda.weights[cc];
        lda.weights[col] = acc / sigma[col][col];
    }
    for (std::size_t d = 0; d < dim; ++d)
        lda.threshold += lda.weights[d] * (mu1[d] + mu2[d]) / 2.0;
    return lda;
}

Evaluation evaluate(const std::vector<int>& predictions, const std::vector<int>& truth,
                    int num_classes) {
    if (predictions.size() != truth.size())
        throw_validation("prediction and truth lengths differ");
    if (predictions.empty()) throw_validation("nothing to evaluate");
    Evaluation ev;
    ev.confusion.assign(static_cast<std::size_t>(num_classes),
                        std::vector<int>(static_cast<std::size_t>(num_classes), 0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const int p = predictions[i], t = truth[i];
        if (p < 1 || p > num_classes || t < 1 || t > num_classes)
            throw_validation("label out of range in evaluation");
        ++ev.confusion[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(p - 1)];
        if (p == t) ++correct;
    }
    ev.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
    return ev;
}

}  // namespace alt

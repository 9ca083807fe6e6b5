#pragma once

#include <cstddef>
#include <vector>

#include "alt/matrix.hpp"

namespace alt {

/// Window triplet (r, l, k): window length, embedding dimension, window
/// shift. The inner stride s = (r-1)/(2l-2) must be a positive integer.
struct WindowConfig {
    std::size_t r = 0;
    std::size_t l = 0;
    std::size_t k = 1;

    std::size_t stride() const { return (r - 1) / (2 * l - 2); }

    /// Throws a validation error unless l >= 2, k >= 1, r >= 2l-1 and
    /// (2l-2) divides (r-1). `which` names the config in messages.
    void validate(std::size_t which = 0) const;

    bool operator==(const WindowConfig&) const = default;
};

/// Unit-norm coefficient vector of the linear law a window nearly obeys.
struct Shapelet {
    std::vector<double> v;   // unit norm, sign-normalized
    double eigenvalue = 0;   // smallest-|.| eigenvalue of the embedding
    double residual = 0;     // ||S v||_2
};

/// Number of length-r windows at shift k in a series of length h:
/// floor((h - r + 1) / k). Zero when r > h.
std::size_t window_count(std::size_t h, std::size_t r, std::size_t k);

/// All windows w_p = series[p*k .. p*k+r-1], p = 0..W-1.
std::vector<std::vector<double>> extract_windows(const std::vector<double>& series,
                                                 const WindowConfig& cfg);

/// Keep every s-th sample: 2l-1 points, endpoints preserved.
std::vector<double> downsample(const std::vector<double>& window, const WindowConfig& cfg);

/// Symmetric l x l Hankel matrix S(a,b) = z[a+b] from 2l-1 samples.
Matrix hankel_embed(const std::vector<double>& z);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // sorted by |lambda| asc, ties by value asc
    Matrix eigenvectors;              // column i pairs with eigenvalues[i]
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Converges when
/// the off-diagonal Frobenius norm drops below 1e-12 * ||S||_F; throws a
/// numeric error after 100 sweeps without convergence.
EigenDecomposition eig_symmetric(const Matrix& s);

/// Eigenvector of the smallest-|lambda| eigenpair of hankel_embed(z),
/// sign-normalized: the largest-magnitude component is positive, ties
/// resolved toward the lowest index.
Shapelet compute_shapelet(const std::vector<double>& z);

void sign_normalize(std::vector<double>& v);

}  // namespace alt

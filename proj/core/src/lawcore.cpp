#include "alt/lawcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace alt {

void WindowConfig::validate(std::size_t which) const {
    const std::string tag =
        which ? "config " + std::to_string(which) + " " : std::string{};
    auto fail = [&](const std::string& what) {
        throw_validation(tag + "(r=" + std::to_string(r) + ", l=" + std::to_string(l) +
                         ", k=" + std::to_string(k) + "): " + what);
    };
    if (l < 2) fail("embedding dimension l must be at least 2");
    if (k < 1) fail("window shift k must be at least 1");
    if (r < 2 * l - 1) fail("window length r must be at least 2l-1");
    if ((r - 1) % (2 * l - 2) != 0)
        fail("(2l-2) = " + std::to_string(2 * l - 2) + " does not divide (r-1) = " +
             std::to_string(r - 1));
}

std::size_t window_count(std::size_t h, std::size_t r, std::size_t k) {
    if (r > h) return 0;
    return (h - r) / k + 1;
}

std::vector<std::vector<double>> extract_windows(const std::vector<double>& series,
                                                 const WindowConfig& cfg) {
    const std::size_t h = series.size();
    if (cfg.r > h)
        throw_validation("window length r=" + std::to_string(cfg.r) +
                         " exceeds instance length h=" + std::to_string(h));
    const std::size_t count = window_count(h, cfg.r, cfg.k);
    std::vector<std::vector<double>> windows;
    windows.reserve(count);
    for (std::size_t p = 0; p < count; ++p) {
        const auto begin = series.begin() + static_cast<std::ptrdiff_t>(p * cfg.k);
        windows.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(cfg.r));
    }
    return windows;
}

std::vector<double> downsample(const std::vector<double>& window, const WindowConfig& cfg) {
    if (window.size() != cfg.r)
        throw_validation("window length " + std::to_string(window.size()) +
                         " does not match r=" + std::to_string(cfg.r));
    const std::size_t s = cfg.stride();
    const std::size_t points = 2 * cfg.l - 1;
    std::vector<double> z(points);
    for (std::size_t q = 0; q < points; ++q) z[q] = window[q * s];
    return z;
}

Matrix hankel_embed(const std::vector<double>& z) {
    if (z.size() % 2 == 0 || z.size() < 3)
        throw_validation("time-delay embedding needs an odd sample count of at least 3, got " +
                         std::to_string(z.size()));
    const std::size_t l = (z.size() + 1) / 2;
    Matrix s(l, l);
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < l; ++b) s(a, b) = z[a + b];
    return s;
}

namespace {

double frobenius(const Matrix& m) {
    double sum = 0;
    for (double v : m.data()) sum += v * v;
    return std::sqrt(sum);
}

double off_diagonal_norm(const Matrix& m) {
    double sum = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) sum += m(i, j) * m(i, j);
    return std::sqrt(sum);
}

}  // namespace

EigenDecomposition eig_symmetric(const Matrix& s) {
    const std::size_t n = s.rows();
    if (n == 0 || s.cols() != n) throw_validation("eigendecomposition needs a square matrix");
    const double norm = frobenius(s);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(s(i, j) - s(j, i)) > 1e-12 * std::max(1.0, norm))
                throw_validation("matrix is not symmetric");

    Matrix a = s;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double target = 1e-12 * norm;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(a) > target && norm > 0) {
        if (++sweep > kMaxSweeps)
            throw_numeric("Jacobi eigensolver did not converge in " +
                          std::to_string(kMaxSweeps) + " sweeps (n=" + std::to_string(n) + ")");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = a(i, p), aiq = a(i, q);
                        a(i, p) = a(p, i) = aip - sn * (aiq + tau * aip);
                        a(i, q) = a(q, i) = aiq + sn * (aip - tau * aiq);
                    }
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip - sn * (viq + tau * vip);
                    v(i, q) = viq + sn * (vip - tau * viq);
                }
            }
        }
    }

    // Sort by |lambda| ascending; near-ties (within 1e-12 * max(1, ||S||_F))
    // prefer the smaller signed eigenvalue, then the original column.
    const double tie_tol = 1e-12 * std::max(1.0, norm);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double ai = std::abs(a(i, i)), aj = std::abs(a(j, j));
        if (std::abs(ai - aj) > tie_tol) return ai < aj;
        if (std::abs(a(i, i) - a(j, j)) > tie_tol) return a(i, i) < a(j, j);
        return i < j;
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues[col] = a(order[col], order[col]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, col) = v(i, order[col]);
    }
    return out;
}

void sign_normalize(std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    if (v[best] < 0)
        for (double& x : v) x = -x;
}

Shapelet compute_shapelet(const std::vector<double>& z) {
    const Matrix s = hankel_embed(z);
    const EigenDecomposition eig = eig_symmetric(s);

    Shapelet sh;
    const std::size_t l = s.rows();
    sh.v.resize(l);
    for (std::size_t i = 0; i < l; ++i) sh.v[i] = eig.eigenvectors(i, 0);
    sign_normalize(sh.v);
    sh.eigenvalue = eig.eigenvalues[0];

    double res = 0;
    for (std::size_t i = 0; i < l; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < l; ++j) acc += s(i, j) * sh.v[j];
        res += acc * acc;
    }
    sh.residual = std::sqrt(res);
    return sh;
}

}  // namespace alt

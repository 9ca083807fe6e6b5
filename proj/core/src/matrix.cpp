#include "alt/matrix.hpp"

#include <string>

namespace alt {

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw_validation("matrix dimension mismatch: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t d = 0; d < a.cols(); ++d) {
            const double av = arow[d];
            const double* brow = b.row_ptr(d);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

}  // namespace alt

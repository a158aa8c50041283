#include "efnz/linalg.hpp"

#include <cmath>

namespace efnz {

namespace {

std::size_t square_dim(const Tensor& a, const char* what) {
    if (a.shape().size() != 2 || a.shape()[0] != a.shape()[1]) {
        throw ShapeError(std::string(what) + ": expected a square rank-2 tensor, got " +
                         shape_to_string(a.shape()));
    }
    std::size_t n = a.shape()[0];
    if (n > kMaxDenseDim) {
        throw NumericError(std::string(what) + ": dimension " + std::to_string(n) +
                           " exceeds dense cap " + std::to_string(kMaxDenseDim));
    }
    return n;
}

void require_vector_of(const Tensor& b, std::size_t n, const char* what) {
    if (b.size() != n) {
        throw ShapeError(std::string(what) + ": rhs length " + std::to_string(b.size()) +
                         " does not match system size " + std::to_string(n));
    }
}

}  // namespace

Tensor cholesky(const Tensor& a) {
    std::size_t n = square_dim(a, "cholesky");
    Tensor l = Tensor::zeros({n, n});
    const double* A = a.data();
    double* L = l.data();
    for (std::size_t j = 0; j < n; ++j) {
        double d = A[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw NumericError("cholesky: matrix is not positive definite (pivot " +
                               std::to_string(d) + " at index " + std::to_string(j) + ")");
        }
        double diag = std::sqrt(d);
        L[j * n + j] = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            L[i * n + j] = s / diag;
        }
    }
    return l;
}

Tensor forward_substitute(const Tensor& l, const Tensor& b) {
    std::size_t n = square_dim(l, "forward_substitute");
    require_vector_of(b, n, "forward_substitute");
    Tensor y = b;
    const double* L = l.data();
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= L[i * n + k] * y[k];
        y[i] = s / L[i * n + i];
    }
    return y;
}

Tensor backward_substitute(const Tensor& l, const Tensor& y) {
    std::size_t n = square_dim(l, "backward_substitute");
    require_vector_of(y, n, "backward_substitute");
    Tensor x = y;
    const double* L = l.data();
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= L[k * n + ii] * x[k];
        x[ii] = s / L[ii * n + ii];
    }
    return x;
}

Tensor solve_with_cholesky(const Tensor& l, const Tensor& b) {
    return backward_substitute(l, forward_substitute(l, b));
}

Tensor solve_spd(const Tensor& a, const Tensor& b) {
    std::size_t n = square_dim(a, "solve_spd");
    require_vector_of(b, n, "solve_spd");
    const double* A = a.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(A[i * n + j] - A[j * n + i]) > 1e-10) {
                throw NumericError("solve_spd: matrix is not symmetric within 1e-10 at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    return solve_with_cholesky(cholesky(a), b);
}

Tensor matvec(const Tensor& a, const Tensor& x) {
    std::size_t n = square_dim(a, "matvec");
    require_vector_of(x, n, "matvec");
    Tensor y = Tensor::zeros({n});
    const double* A = a.data();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += A[i * n + j] * x[j];
        y[i] = s;
    }
    return y;
}

double log_diag_sum(const Tensor& l) {
    std::size_t n = square_dim(l, "log_diag_sum");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::log(l[i * n + i]);
    return s;
}

}  // namespace efnz

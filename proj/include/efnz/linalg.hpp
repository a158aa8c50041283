#ifndef EFNZ_LINALG_HPP
#define EFNZ_LINALG_HPP

#include "efnz/tensor.hpp"

namespace efnz {

/// Largest dense dimension these kernels accept. Desk-scale fields never
/// exceed 32x32x1 = 1024 unknowns.
inline constexpr std::size_t kMaxDenseDim = 4096;

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix
/// (rank-2 square Tensor, row-major). Throws NumericError when a pivot is
/// not strictly positive, ShapeError for non-square input.
Tensor cholesky(const Tensor& a);

/// Solves L * y = b for lower-triangular L.
Tensor forward_substitute(const Tensor& l, const Tensor& b);

/// Solves L^T * x = y for lower-triangular L.
Tensor backward_substitute(const Tensor& l, const Tensor& y);

/// Solves A x = b for SPD A via Cholesky. A must be square and symmetric
/// within 1e-10; non-SPD input raises NumericError.
Tensor solve_spd(const Tensor& a, const Tensor& b);

/// Solve with a precomputed Cholesky factor.
Tensor solve_with_cholesky(const Tensor& l, const Tensor& b);

/// y = A x for a rank-2 matrix and rank-1 vector.
Tensor matvec(const Tensor& a, const Tensor& x);

/// Sum of log of diagonal entries (log det of a triangular factor).
double log_diag_sum(const Tensor& l);

}  // namespace efnz

#endif  // EFNZ_LINALG_HPP

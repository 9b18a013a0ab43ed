#pragma once

#include <vector>

#include "tsllsr/matrix.hpp"

namespace tsllsr::linalg {

// Two interchangeable kernel backends. `ref` holds plain serial loops and is
// the reference the OpenMP kernels are tested against; `par` parallelizes
// over disjoint output blocks only, so every element sees the same reduction
// order and the two backends produce bit-identical results. That property is
// what keeps fits deterministic regardless of thread count.
enum class Backend { serial, parallel };

Backend backend();
void set_backend(Backend b);

namespace ref {
void matmul(const Matrix& a, const Matrix& b, Matrix& out);      // out = a b
void matmul_abt(const Matrix& a, const Matrix& b, Matrix& out);  // out = a b^T
void matmul_atb(const Matrix& a, const Matrix& b, Matrix& out);  // out = a^T b
// out = scale * a a^T + ridge * I
void gram(const Matrix& a, double scale, double ridge, Matrix& out);
// In-place lower Cholesky factor of a symmetric positive definite matrix.
// Throws NumericalError when a pivot is not strictly positive.
void cholesky_factor(Matrix& a);
// Solves A x = b per column given the lower factor of A; b overwritten.
void cholesky_solve(const Matrix& lower, Matrix& b);
} // namespace ref

namespace par {
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_abt(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_atb(const Matrix& a, const Matrix& b, Matrix& out);
void gram(const Matrix& a, double scale, double ridge, Matrix& out);
void cholesky_factor(Matrix& a);
void cholesky_solve(const Matrix& lower, Matrix& b);
} // namespace par

// Dispatching wrappers over the active backend.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_abt(const Matrix& a, const Matrix& b);
Matrix matmul_atb(const Matrix& a, const Matrix& b);
Matrix gram(const Matrix& a, double scale, double ridge);

/// Cholesky factorization of an SPD matrix, reusable across many solves.
class CholeskyFactor {
public:
    explicit CholeskyFactor(Matrix spd);
    /// Returns A^{-1} rhs, column by column.
    Matrix solve(const Matrix& rhs) const;
    Index dim() const { return lower_.rows(); }

private:
    Matrix lower_;
};

/// Thin SVD m = u diag(sigma) v^T with sigma sorted descending.
/// One-sided Jacobi on the narrow side; serial on purpose (rotation order
/// fixes the result bit for bit).
struct Svd {
    Matrix u;                   // rows(m) x k
    std::vector<double> sigma;  // k = min(rows, cols)
    Matrix v;                   // cols(m) x k
};

Svd svd(const Matrix& m);
std::vector<double> singular_values(const Matrix& m);
double nuclear_norm(const Matrix& m);

double frobenius_sq(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace tsllsr::linalg

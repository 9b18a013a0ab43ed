#include "tsllsr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "tsllsr/types.hpp"

namespace tsllsr::linalg {

namespace {

Backend g_backend = Backend::parallel;

// Below this many multiply-adds the fork/join overhead dominates; the par
// kernels run their serial bodies instead. Results are identical either way.
constexpr Index kParallelCutoff = 1 << 15;

void require(bool ok, const char* msg) {
    if (!ok) throw InputError(msg);
}

} // namespace

Backend backend() { return g_backend; }
void set_backend(Backend b) { g_backend = b; }

// ---------------------------------------------------------------------------
// Serial reference kernels. Straight textbook loops, kept deliberately plain:
// the OpenMP variants must reproduce these bit for bit.
// ---------------------------------------------------------------------------

namespace ref {

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
    require(a.cols() == b.rows(), "matmul: inner dimensions disagree");
    out = Matrix(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
}

void matmul_abt(const Matrix& a, const Matrix& b, Matrix& out) {
    require(a.cols() == b.cols(), "matmul_abt: inner dimensions disagree");
    out = Matrix(a.rows(), b.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.rows(); ++j) {
            double acc = 0.0;
            for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(j, k);
            out(i, j) = acc;
        }
}

void matmul_atb(const Matrix& a, const Matrix& b, Matrix& out) {
    require(a.rows() == b.rows(), "matmul_atb: inner dimensions disagree");
    out = Matrix(a.cols(), b.cols());
    for (Index i = 0; i < a.cols(); ++i)
        for (Index j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (Index k = 0; k < a.rows(); ++k) acc += a(k, i) * b(k, j);
            out(i, j) = acc;
        }
}

void gram(const Matrix& a, double scale, double ridge, Matrix& out) {
    const Index n = a.rows();
    out = Matrix(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * a(j, k);
            double v = scale * acc;
            out(i, j) = v;
            out(j, i) = v;
        }
    for (Index i = 0; i < n; ++i) out(i, i) += ridge;
}

void cholesky_factor(Matrix& a) {
    const Index n = a.rows();
    require(a.cols() == n, "cholesky_factor: matrix not square");
    for (Index k = 0; k < n; ++k) {
        double pivot = a(k, k);
        if (!(pivot > 0.0) || !std::isfinite(pivot))
            throw NumericalError("cholesky_factor: matrix is not positive definite");
        double lkk = std::sqrt(pivot);
        a(k, k) = lkk;
        double inv = 1.0 / lkk;
        for (Index i = k + 1; i < n; ++i) a(i, k) *= inv;
        for (Index i = k + 1; i < n; ++i) {
            double lik = a(i, k);
            for (Index j = k + 1; j <= i; ++j) a(i, j) -= lik * a(j, k);
        }
    }
    // Zero the strictly upper triangle so the factor compares cleanly.
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) a(i, j) = 0.0;
}

void cholesky_solve(const Matrix& lower, Matrix& b) {
    const Index n = lower.rows();
    require(b.rows() == n, "cholesky_solve: rhs rows disagree with factor");
    for (Index col = 0; col < b.cols(); ++col) {
        // L z = b
        for (Index i = 0; i < n; ++i) {
            double acc = b(i, col);
            for (Index k = 0; k < i; ++k) acc -= lower(i, k) * b(k, col);
            b(i, col) = acc / lower(i, i);
        }
        // L^T x = z
        for (Index i = n - 1; i >= 0; --i) {
            double acc = b(i, col);
            for (Index k = i + 1; k < n; ++k) acc -= lower(k, i) * b(k, col);
            b(i, col) = acc / lower(i, i);
        }
    }
}

} // namespace ref

// ---------------------------------------------------------------------------
// OpenMP kernels. Parallelism is over rows (or columns) of the output; every
// inner reduction keeps the serial k-ascending order, so each element is
// computed by exactly one thread with the same rounding as the reference.
// ---------------------------------------------------------------------------

namespace par {

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
    require(a.cols() == b.rows(), "matmul: inner dimensions disagree");
    const Index m = a.rows(), n = b.cols(), kk = a.cols();
    if (m * n * kk < kParallelCutoff) {
        ref::matmul(a, b, out);
        return;
    }
    out = Matrix(m, n);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        double* orow = out.data() + i * n;
        for (Index k = 0; k < kk; ++k) {
            const double aik = a(i, k);
            const double* brow = b.data() + k * n;
            for (Index j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
}

void matmul_abt(const Matrix& a, const Matrix& b, Matrix& out) {
    require(a.cols() == b.cols(), "matmul_abt: inner dimensions disagree");
    const Index m = a.rows(), n = b.rows(), kk = a.cols();
    if (m * n * kk < kParallelCutoff) {
        ref::matmul_abt(a, b, out);
        return;
    }
    out = Matrix(m, n);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        const double* arow = a.data() + i * kk;
        for (Index j = 0; j < n; ++j) {
            const double* brow = b.data() + j * kk;
            double acc = 0.0;
            for (Index k = 0; k < kk; ++k) acc += arow[k] * brow[k];
            out(i, j) = acc;
        }
    }
}

void matmul_atb(const Matrix& a, const Matrix& b, Matrix& out) {
    require(a.rows() == b.rows(), "matmul_atb: inner dimensions disagree");
    const Index m = a.cols(), n = b.cols(), kk = a.rows();
    if (m * n * kk < kParallelCutoff) {
        ref::matmul_atb(a, b, out);
        return;
    }
    out = Matrix(m, n);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) {
            double acc = 0.0;
            for (Index k = 0; k < kk; ++k) acc += a(k, i) * b(k, j);
            out(i, j) = acc;
        }
}

void gram(const Matrix& a, double scale, double ridge, Matrix& out) {
    const Index n = a.rows(), kk = a.cols();
    if (n * n * kk < kParallelCutoff) {
        ref::gram(a, scale, ridge, out);
        return;
    }
    out = Matrix(n, n);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
        const double* arow = a.data() + i * kk;
        for (Index j = 0; j <= i; ++j) {
            const double* brow = a.data() + j * kk;
            double acc = 0.0;
            for (Index k = 0; k < kk; ++k) acc += arow[k] * brow[k];
            out(i, j) = scale * acc;
        }
    }
    // Mirror after the parallel region; reads and writes stay disjoint.
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) out(i, j) = out(j, i);
        out(i, i) += ridge;
    }
}

void cholesky_factor(Matrix& a) {
    const Index n = a.rows();
    require(a.cols() == n, "cholesky_factor: matrix not square");
    if (n * n * n < kParallelCutoff) {
        ref::cholesky_factor(a);
        return;
    }
    for (Index k = 0; k < n; ++k) {
        double pivot = a(k, k);
        if (!(pivot > 0.0) || !std::isfinite(pivot))
            throw NumericalError("cholesky_factor: matrix is not positive definite");
        double lkk = std::sqrt(pivot);
        a(k, k) = lkk;
        double inv = 1.0 / lkk;
        for (Index i = k + 1; i < n; ++i) a(i, k) *= inv;
        // Right-looking trailing update; row i is owned by one thread and the
        // per-element subtraction order over k matches the reference factor.
#pragma omp parallel for schedule(static)
        for (Index i = k + 1; i < n; ++i) {
            double lik = a(i, k);
            for (Index j = k + 1; j <= i; ++j) a(i, j) -= lik * a(j, k);
        }
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) a(i, j) = 0.0;
}

void cholesky_solve(const Matrix& lower, Matrix& b) {
    const Index n = lower.rows();
    require(b.rows() == n, "cholesky_solve: rhs rows disagree with factor");
    if (n * n * b.cols() < kParallelCutoff) {
        ref::cholesky_solve(lower, b);
        return;
    }
#pragma omp parallel for schedule(static)
    for (Index col = 0; col < b.cols(); ++col) {
        for (Index i = 0; i < n; ++i) {
            double acc = b(i, col);
            for (Index k = 0; k < i; ++k) acc -= lower(i, k) * b(k, col);
            b(i, col) = acc / lower(i, i);
        }
        for (Index i = n - 1; i >= 0; --i) {
            double acc = b(i, col);
            for (Index k = i + 1; k < n; ++k) acc -= lower(k, i) * b(k, col);
            b(i, col) = acc / lower(i, i);
        }
    }
}

} // namespace par

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix out;
    g_backend == Backend::parallel ? par::matmul(a, b, out) : ref::matmul(a, b, out);
    return out;
}

Matrix matmul_abt(const Matrix& a, const Matrix& b) {
    Matrix out;
    g_backend == Backend::parallel ? par::matmul_abt(a, b, out) : ref::matmul_abt(a, b, out);
    return out;
}

Matrix matmul_atb(const Matrix& a, const Matrix& b) {
    Matrix out;
    g_backend == Backend::parallel ? par::matmul_atb(a, b, out) : ref::matmul_atb(a, b, out);
    return out;
}

Matrix gram(const Matrix& a, double scale, double ridge) {
    Matrix out;
    g_backend == Backend::parallel ? par::gram(a, scale, ridge, out)
                                   : ref::gram(a, scale, ridge, out);
    return out;
}

CholeskyFactor::CholeskyFactor(Matrix spd) : lower_(std::move(spd)) {
    g_backend == Backend::parallel ? par::cholesky_factor(lower_)
                                   : ref::cholesky_factor(lower_);
}

Matrix CholeskyFactor::solve(const Matrix& rhs) const {
    Matrix x = rhs;
    g_backend == Backend::parallel ? par::cholesky_solve(lower_, x)
                                   : ref::cholesky_solve(lower_, x);
    return x;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

namespace {

// Orthogonalizes the columns of `a` (tall, rows >= cols) by plane rotations,
// accumulating them in `v`. On return column norms of `a` are the singular
// values and a's normalized columns span the left space.
void jacobi_orthogonalize(Matrix& a, Matrix& v) {
    const Index m = a.rows(), n = a.cols();
    v = Matrix::identity(n);
    const double tol = 1e-14;
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p < n - 1; ++p)
            for (Index q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (Index r = 0; r < m; ++r) {
                    double x = a(r, p), y = a(r, q);
                    app += x * x;
                    aqq += y * y;
                    apq += x * y;
                }
                if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
                rotated = true;
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;
                for (Index r = 0; r < m; ++r) {
                    double x = a(r, p), y = a(r, q);
                    a(r, p) = cs * x - sn * y;
                    a(r, q) = sn * x + cs * y;
                }
                for (Index r = 0; r < n; ++r) {
                    double x = v(r, p), y = v(r, q);
                    v(r, p) = cs * x - sn * y;
                    v(r, q) = sn * x + cs * y;
                }
            }
        if (!rotated) return;
    }
    // Sweeps exhausted: remaining couplings are at roundoff level for any
    // finite input, so the factorization below is still usable.
}

Svd svd_tall(const Matrix& m_in) {
    Matrix a = m_in;
    Matrix v;
    jacobi_orthogonalize(a, v);
    const Index m = a.rows(), n = a.cols();

    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        double acc = 0.0;
        for (Index i = 0; i < m; ++i) acc += a(i, j) * a(i, j);
        sigma[static_cast<std::size_t>(j)] = std::sqrt(acc);
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
        return sigma[static_cast<std::size_t>(x)] > sigma[static_cast<std::size_t>(y)];
    });

    Svd out;
    out.u = Matrix(m, n);
    out.v = Matrix(n, n);
    out.sigma.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
        Index src = order[static_cast<std::size_t>(j)];
        double s = sigma[static_cast<std::size_t>(src)];
        out.sigma[static_cast<std::size_t>(j)] = s;
        double inv = s > 0.0 ? 1.0 / s : 0.0;  // zero column for a zero singular value
        for (Index i = 0; i < m; ++i) out.u(i, j) = a(i, src) * inv;
        for (Index i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    }
    return out;
}

} // namespace

Svd svd(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw InputError("svd: empty matrix");
    if (!all_finite(m)) throw NumericalError("svd: non-finite input");
    if (m.rows() >= m.cols()) return svd_tall(m);
    // Wide matrix: factor the transpose and swap the singular vector roles.
    Svd t = svd_tall(m.transposed());
    Svd out;
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    out.sigma = std::move(t.sigma);
    return out;
}

std::vector<double> singular_values(const Matrix& m) { return svd(m).sigma; }

double nuclear_norm(const Matrix& m) {
    auto s = singular_values(m);
    double acc = 0.0;
    for (double v : s) acc += v;
    return acc;
}

double frobenius_sq(const Matrix& m) {
    double acc = 0.0;
    const double* p = m.data();
    for (Index i = 0; i < m.size(); ++i) acc += p[i] * p[i];
    return acc;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (!same_shape(a, b)) throw InputError("max_abs_diff: shapes disagree");
    double best = 0.0;
    for (Index i = 0; i < a.size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

} // namespace tsllsr::linalg

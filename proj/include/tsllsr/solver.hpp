#pragma once

#include "tsllsr/linalg.hpp"
#include "tsllsr/types.hpp"

namespace tsllsr {

/// Cholesky factorization of (x x^T + lambda1 I), built once per fit and
/// reused by every first-projection update.
class SolveCache {
public:
    SolveCache(const Matrix& x, double lambda1);
    Matrix solve(const Matrix& rhs) const { return chol_.solve(rhs); }
    double lambda1() const { return lambda1_; }

private:
    linalg::CholeskyFactor chol_;
    double lambda1_;
};

/// Joint objective at the current iterates:
///   1/2 |w x - omega|_F^2 + alpha |omega|_* + beta/2 |q omega - h|_F^2
///   + lambda1/2 |w|_F^2 + lambda2/2 |q|_F^2
double objective(const AdmmState& state, const Matrix& x, const Matrix& h,
                 const Hyperparams& hp);

/// Augmented Lagrangian of the split formulation: the nuclear norm moves to
/// the auxiliary p, plus the penalty mu/2 |omega - p + y/mu|_F^2.
double augmented_lagrangian(const AdmmState& state, const Matrix& x, const Matrix& h,
                            const Hyperparams& hp);

/// First projection: w = omega x^T (x x^T + lambda1 I)^{-1}.
Matrix update_w(const Matrix& omega, const Matrix& x, const SolveCache& cache);

/// Second projection: q = beta h omega^T (beta omega omega^T + lambda2 I)^{-1}.
Matrix update_q(const Matrix& omega, const Matrix& h, double beta, double lambda2);

/// Transition matrix: omega = [(mu+1) I + beta q^T q]^{-1}
///                            (w x + beta q^T h + mu p - y).
Matrix update_omega(const Matrix& w, const Matrix& x, const Matrix& q, const Matrix& h,
                    const Matrix& p, const Matrix& y, double mu, double beta);

/// Singular value thresholding: shrink every singular value of m by
/// `threshold`, clamping at zero. Exact proximal operator of
/// threshold * |.|_* at m.
Matrix svt(const Matrix& m, double threshold);

/// Low-rank split: p = svt(omega + y/mu, alpha/mu).
Matrix update_p(const Matrix& omega, const Matrix& y, double mu, double alpha);

/// Multiplier step: y + mu (omega - p).
Matrix update_multiplier(const Matrix& y, const Matrix& omega, const Matrix& p, double mu);

/// Penalty step: min(mu_max, rho * mu).
double update_penalty(double mu, double rho, double mu_max);

struct FitResult {
    Model model;
    FitReport report;
};

/// Runs the full alternating scheme (w, q, omega, p, y, mu) from the cold
/// start w = q = p = 0, omega = one-hot labels (zero-padded or truncated when
/// the transition dimension differs from the class count), until the split
/// residual max|omega - p| drops to hp.tol or max_iters is hit. Hitting
/// max_iters is reported, not thrown. Fully deterministic.
FitResult fit(const Dataset& train, const Hyperparams& hp);

} // namespace tsllsr

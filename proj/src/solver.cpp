#include "tsllsr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace tsllsr {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InputError(msg);
}

void check_state_dims(const AdmmState& st, const Matrix& x, const Matrix& h) {
    const Index d = x.rows(), n = x.cols();
    const Index p = st.omega.rows(), c = h.rows();
    require(h.cols() == n, "objective: label matrix column count != sample count");
    require(st.w.rows() == p && st.w.cols() == d, "objective: w has inconsistent shape");
    require(st.q.rows() == c && st.q.cols() == p, "objective: q has inconsistent shape");
    require(st.omega.cols() == n, "objective: omega has inconsistent shape");
    require(same_shape(st.p, st.omega), "objective: p has inconsistent shape");
    require(same_shape(st.y, st.omega), "objective: y has inconsistent shape");
}

} // namespace

SolveCache::SolveCache(const Matrix& x, double lambda1) try
    : chol_(linalg::gram(x, 1.0, lambda1)), lambda1_(lambda1) {
} catch (const NumericalError&) {
    throw NumericalError(
        "sample Gram matrix is singular; set lambda1 > 0 to regularize the first projection");
}

double objective(const AdmmState& state, const Matrix& x, const Matrix& h,
                 const Hyperparams& hp) {
    check_state_dims(state, x, h);
    double fit1 = 0.5 * linalg::frobenius_sq(linalg::matmul(state.w, x) - state.omega);
    double nuc = hp.alpha * linalg::nuclear_norm(state.omega);
    double fit2 = 0.5 * hp.beta * linalg::frobenius_sq(linalg::matmul(state.q, state.omega) - h);
    double ridge = 0.5 * hp.lambda1 * linalg::frobenius_sq(state.w) +
                   0.5 * hp.lambda2 * linalg::frobenius_sq(state.q);
    return fit1 + nuc + fit2 + ridge;
}

double augmented_lagrangian(const AdmmState& state, const Matrix& x, const Matrix& h,
                            const Hyperparams& hp) {
    check_state_dims(state, x, h);
    if (!(state.mu > 0.0)) throw StateError("augmented_lagrangian: penalty must be > 0");
    double fit1 = 0.5 * linalg::frobenius_sq(linalg::matmul(state.w, x) - state.omega);
    double nuc = hp.alpha * linalg::nuclear_norm(state.p);
    double fit2 = 0.5 * hp.beta * linalg::frobenius_sq(linalg::matmul(state.q, state.omega) - h);
    double ridge = 0.5 * hp.lambda1 * linalg::frobenius_sq(state.w) +
                   0.5 * hp.lambda2 * linalg::frobenius_sq(state.q);
    double penalty = 0.5 * state.mu *
                     linalg::frobenius_sq(state.omega - state.p + (1.0 / state.mu) * state.y);
    return fit1 + nuc + fit2 + ridge + penalty;
}

Matrix update_w(const Matrix& omega, const Matrix& x, const SolveCache& cache) {
    require(omega.cols() == x.cols(), "update_w: omega and x column counts disagree");
    // Solve (x x^T + lambda1 I) w^T = x omega^T instead of forming the inverse.
    Matrix rhs = linalg::matmul_abt(x, omega);  // d x p
    return cache.solve(rhs).transposed();
}

Matrix update_q(const Matrix& omega, const Matrix& h, double beta, double lambda2) {
    require(omega.cols() == h.cols(), "update_q: omega and h column counts disagree");
    require(beta > 0.0, "update_q: beta must be > 0");
    require(lambda2 >= 0.0, "update_q: lambda2 must be >= 0");
    Matrix system = linalg::gram(omega, beta, lambda2);  // p x p
    Matrix rhs = beta * linalg::matmul_abt(omega, h);    // p x c
    try {
        linalg::CholeskyFactor factor(std::move(system));
        return factor.solve(rhs).transposed();
    } catch (const NumericalError&) {
        throw NumericalError(
            "transition Gram matrix is singular; set lambda2 > 0 to regularize the second "
            "projection");
    }
}

Matrix update_omega(const Matrix& w, const Matrix& x, const Matrix& q, const Matrix& h,
                    const Matrix& p, const Matrix& y, double mu, double beta) {
    require(mu > 0.0, "update_omega: mu must be > 0");
    require(beta > 0.0, "update_omega: beta must be > 0");
    const Index pdim = w.rows();
    Matrix system = linalg::matmul_atb(q, q);  // p x p
    for (Index i = 0; i < pdim; ++i)
        for (Index j = 0; j < pdim; ++j) {
            system(i, j) *= beta;
            if (i == j) system(i, j) += mu + 1.0;
        }
    Matrix rhs = linalg::matmul(w, x) + beta * linalg::matmul_atb(q, h) + mu * p - y;
    if (!all_finite(system) || !all_finite(rhs))
        throw NumericalError("update_omega: non-finite inputs");
    linalg::CholeskyFactor factor(std::move(system));
    return factor.solve(rhs);
}

Matrix svt(const Matrix& m, double threshold) {
    require(threshold >= 0.0, "svt: threshold must be >= 0");
    if (!all_finite(m)) throw NumericalError("svt: non-finite input");
    if (threshold == 0.0) return m;
    linalg::Svd dec = linalg::svd(m);
    const Index k = static_cast<Index>(dec.sigma.size());
    Matrix out(m.rows(), m.cols());
    for (Index r = 0; r < k; ++r) {
        double s = dec.sigma[static_cast<std::size_t>(r)] - threshold;
        if (s <= 0.0) continue;  // singular values come sorted descending
        for (Index i = 0; i < m.rows(); ++i) {
            double us = dec.u(i, r) * s;
            for (Index j = 0; j < m.cols(); ++j) out(i, j) += us * dec.v(j, r);
        }
    }
    return out;
}

Matrix update_p(const Matrix& omega, const Matrix& y, double mu, double alpha) {
    require(mu > 0.0, "update_p: mu must be > 0");
    return svt(omega + (1.0 / mu) * y, alpha / mu);
}

Matrix update_multiplier(const Matrix& y, const Matrix& omega, const Matrix& p, double mu) {
    require(mu > 0.0, "update_multiplier: mu must be > 0");
    return y + mu * (omega - p);
}

double update_penalty(double mu, double rho, double mu_max) {
    return std::min(mu_max, rho * mu);
}

namespace {

// Cold-start transition matrix: the one-hot labels, zero-padded or truncated
// when the transition dimension differs from the class count.
Matrix initial_transition(const Matrix& h, Index p) {
    if (p == h.rows()) return h;
    Matrix omega(p, h.cols());
    const Index copy_rows = std::min(p, h.rows());
    for (Index i = 0; i < copy_rows; ++i)
        for (Index j = 0; j < h.cols(); ++j) omega(i, j) = h(i, j);
    return omega;
}

void check_iterates_finite(const AdmmState& st, int iter) {
    if (!all_finite(st.w) || !all_finite(st.q) || !all_finite(st.omega) || !all_finite(st.p) ||
        !all_finite(st.y))
        throw NumericalError("fit: non-finite iterate at iteration " + std::to_string(iter));
}

} // namespace

FitResult fit(const Dataset& train, const Hyperparams& hp_in) {
    hp_in.validate();
    train.validate();
    Hyperparams hp = hp_in;
    hp.p = hp_in.resolve_p(train.num_classes);

    const Matrix& x = train.samples;
    const Index d = x.rows(), n = x.cols(), p = hp.p;
    const int c = train.num_classes;
    Matrix h = one_hot_encode(train.labels, c);

    AdmmState st;
    st.w = Matrix(p, d);
    st.q = Matrix(c, p);
    st.omega = initial_transition(h, p);
    st.p = Matrix(p, n);
    st.y = Matrix(p, n);
    st.mu = hp.mu0;

    SolveCache cache(x, hp.lambda1);

    FitReport report;
    StopReason reason = StopReason::max_iters;
    for (int iter = 1; iter <= hp.max_iters; ++iter) {
        try {
            st.w = update_w(st.omega, x, cache);
            st.q = update_q(st.omega, h, hp.beta, hp.lambda2);
            st.omega = update_omega(st.w, x, st.q, h, st.p, st.y, st.mu, hp.beta);
            st.p = update_p(st.omega, st.y, st.mu, hp.alpha);
            double residual = linalg::max_abs_diff(st.omega, st.p);
            st.y = update_multiplier(st.y, st.omega, st.p, st.mu);
            double mu_used = st.mu;
            st.mu = update_penalty(st.mu, hp.rho, hp.mu_max);
            st.iter = iter;
            check_iterates_finite(st, iter);

            report.objective_trace.push_back(objective(st, x, h, hp));
            report.residual_trace.push_back(residual);
            report.mu_trace.push_back(mu_used);
            if (residual <= hp.tol) {
                reason = StopReason::converged;
                break;
            }
        } catch (const NumericalError& e) {
            throw NumericalError("fit: iteration " + std::to_string(iter) + ": " + e.what());
        }
    }
    report.iterations_run = static_cast<int>(report.residual_trace.size());
    report.stop_reason = reason;

    Model model;
    model.w = st.w;
    model.q = st.q;
    model.d = d;
    model.p = p;
    model.c = c;
    model.hyperparams = hp;
    model.train_features = linalg::matmul(st.q, st.omega);
    model.train_labels = train.labels;
    return {std::move(model), std::move(report)};
}

} // namespace tsllsr

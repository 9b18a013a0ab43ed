#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tsllsr/matrix.hpp"

namespace tsllsr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Caller handed us something invalid (bad dimensions, bad flag, bad value).
struct InputError : Error {
    using Error::Error;
};
/// A numeric step failed (singular system, NaN/Inf propagation).
struct NumericalError : Error {
    using Error::Error;
};
/// An object is missing state the operation needs.
struct StateError : Error {
    using Error::Error;
};
/// A serialized file does not match the expected layout.
struct FormatError : Error {
    using Error::Error;
};

/// Labeled sample collection. Samples are the columns of a d x n matrix.
struct Dataset {
    Matrix samples;                        // d x n
    std::vector<int> labels;               // n entries in [0, num_classes)
    int num_classes = 0;
    std::vector<long long> label_values;   // dense index -> label as it appeared in the source

    Index dim() const { return samples.rows(); }
    Index count() const { return samples.cols(); }
    long long original_label(int cls) const {
        return label_values.empty() ? cls : label_values[static_cast<std::size_t>(cls)];
    }

    /// Throws InputError on inconsistency; warns (stderr) about empty classes.
    void validate() const;
};

/// Solver weights and schedule. `p == 0` means "use the class count".
struct Hyperparams {
    double alpha = 0.1;    // nuclear-norm weight on the transition matrix
    double beta = 0.1;     // weight of the transition-to-label fit
    double lambda1 = 0.01; // ridge on the first projection
    double lambda2 = 0.01; // ridge on the second projection
    Index p = 0;           // transition dimension; 0 = number of classes
    double mu0 = 1e-5;     // initial penalty
    double rho = 1.1;      // penalty growth factor
    double mu_max = 1e8;   // penalty cap
    double tol = 1e-6;     // stopping threshold on the split residual
    int max_iters = 500;

    /// Throws InputError when any range constraint is violated.
    void validate() const;
    Index resolve_p(int num_classes) const { return p == 0 ? Index{num_classes} : p; }
};

/// All iterates of one fit, mutated only inside that fit.
struct AdmmState {
    Matrix w;      // p x d, samples -> transition space
    Matrix q;      // c x p, transition space -> labels
    Matrix omega;  // p x n, transition matrix
    Matrix p;      // p x n, low-rank split of omega
    Matrix y;      // p x n, Lagrange multiplier
    double mu = 0.0;
    int iter = 0;
};

/// Trained projections plus (optionally) the training features used by the
/// nearest-neighbor rule.
struct Model {
    Matrix w;  // p x d
    Matrix q;  // c x p
    Index d = 0;
    Index p = 0;
    int c = 0;
    Hyperparams hyperparams;
    Matrix train_features;          // c x n, product of q and the final transition matrix
    std::vector<int> train_labels;  // n

    bool has_train_features() const { return !train_features.empty(); }
};

enum class StopReason { converged, max_iters };

struct FitReport {
    std::vector<double> objective_trace;  // objective value after each iteration
    std::vector<double> residual_trace;   // max |omega - p| after each iteration
    std::vector<double> mu_trace;         // penalty in effect during each iteration
    int iterations_run = 0;
    StopReason stop_reason = StopReason::max_iters;
};

/// c x n one-hot matrix: column i is the basis vector of labels[i].
Matrix one_hot_encode(const std::vector<int>& labels, int num_classes);

/// Scales every column to unit Euclidean length; all-zero columns pass
/// through unchanged. Idempotent up to machine precision.
Matrix normalize_samples(const Matrix& x);

} // namespace tsllsr

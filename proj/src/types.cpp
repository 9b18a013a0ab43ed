#include "tsllsr/types.hpp"

#include <cmath>
#include <iostream>

namespace tsllsr {

void Dataset::validate() const {
    if (samples.rows() < 1 || samples.cols() < 1)
        throw InputError("dataset: sample matrix must be at least 1x1");
    if (num_classes < 2) throw InputError("dataset: need at least 2 classes");
    if (static_cast<Index>(labels.size()) != samples.cols())
        throw InputError("dataset: label count does not match sample count");
    if (!all_finite(samples)) throw InputError("dataset: non-finite sample entry");
    std::vector<Index> per_class(static_cast<std::size_t>(num_classes), 0);
    for (int lab : labels) {
        if (lab < 0 || lab >= num_classes)
            throw InputError("dataset: label " + std::to_string(lab) + " out of range [0, " +
                             std::to_string(num_classes) + ")");
        ++per_class[static_cast<std::size_t>(lab)];
    }
    for (int cls = 0; cls < num_classes; ++cls)
        if (per_class[static_cast<std::size_t>(cls)] == 0)
            std::cerr << "warning: class " << cls << " has no samples\n";
    if (!label_values.empty() && static_cast<int>(label_values.size()) != num_classes)
        throw InputError("dataset: label value map size does not match class count");
}

void Hyperparams::validate() const {
    if (!(alpha > 0.0)) throw InputError("hyperparams: alpha must be > 0");
    if (!(beta > 0.0)) throw InputError("hyperparams: beta must be > 0");
    if (!(lambda1 >= 0.0)) throw InputError("hyperparams: lambda1 must be >= 0");
    if (!(lambda2 >= 0.0)) throw InputError("hyperparams: lambda2 must be >= 0");
    if (p < 0) throw InputError("hyperparams: p must be >= 1 (or 0 for the class count)");
    if (!(mu0 > 0.0)) throw InputError("hyperparams: mu0 must be > 0");
    if (!(rho > 1.0)) throw InputError("hyperparams: rho must be > 1");
    if (!(mu_max >= mu0)) throw InputError("hyperparams: mu_max must be >= mu0");
    if (!(tol > 0.0)) throw InputError("hyperparams: tol must be > 0");
    if (max_iters < 1) throw InputError("hyperparams: max_iters must be >= 1");
}

Matrix one_hot_encode(const std::vector<int>& labels, int num_classes) {
    Matrix h(num_classes, static_cast<Index>(labels.size()));
    for (Index i = 0; i < static_cast<Index>(labels.size()); ++i) {
        int lab = labels[static_cast<std::size_t>(i)];
        if (lab < 0 || lab >= num_classes)
            throw InputError("one_hot_encode: label " + std::to_string(lab) +
                             " out of range [0, " + std::to_string(num_classes) + ")");
        h(lab, i) = 1.0;
    }
    return h;
}

Matrix normalize_samples(const Matrix& x) {
    if (!all_finite(x)) throw InputError("normalize_samples: non-finite input");
    Matrix out = x;
    for (Index j = 0; j < x.cols(); ++j) {
        double norm_sq = 0.0;
        for (Index i = 0; i < x.rows(); ++i) norm_sq += x(i, j) * x(i, j);
        if (norm_sq == 0.0) continue;  // degenerate column, leave as is
        double inv = 1.0 / std::sqrt(norm_sq);
        for (Index i = 0; i < x.rows(); ++i) out(i, j) *= inv;
    }
    return out;
}

} // namespace tsllsr

#pragma once

#include "tsllsr/matrix.hpp"

namespace tsllsr {

/// Ridge regression onto one-hot targets: solves
/// w (x x^T + lambda I) = h x^T for the c x d projection w.
Matrix solve_standard_lsr(const Matrix& x, const Matrix& h, double lambda);

/// Index of the largest entry of w y; ties go to the lowest class index.
int predict_argmax(const Matrix& w, const Matrix& y);

/// Argmax of a score vector (n x 1), lowest index wins ties.
int argmax_index(const Matrix& scores);

} // namespace tsllsr

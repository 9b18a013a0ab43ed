#pragma once

#include <vector>

#include "tsllsr/types.hpp"

namespace tsllsr {

/// Two-stage features q (w x) for every column of x; returns c x m.
Matrix transform(const Model& model, const Matrix& x);

/// Nearest-neighbor rule: the label of the stored training feature column
/// closest (Euclidean) to q w y. Distance ties go to the lowest training
/// index. Requires a model saved with training features.
int predict_nn(const Model& model, const Matrix& y);

/// Batch form of predict_nn over the columns of x; parallel across columns.
std::vector<int> predict_nn_batch(const Model& model, const Matrix& x);

/// Fallback rule for models without stored features: argmax of q w y,
/// lowest class index on ties.
int predict_argmax_tsl(const Model& model, const Matrix& y);

std::vector<int> predict_argmax_tsl_batch(const Model& model, const Matrix& x);

} // namespace tsllsr

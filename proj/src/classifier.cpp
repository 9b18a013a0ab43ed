#include "tsllsr/classifier.hpp"

#include "tsllsr/baseline.hpp"
#include "tsllsr/linalg.hpp"

namespace tsllsr {

Matrix transform(const Model& model, const Matrix& x) {
    if (x.rows() != model.d)
        throw InputError("transform: input has " + std::to_string(x.rows()) +
                         " rows, model expects " + std::to_string(model.d));
    return linalg::matmul(model.q, linalg::matmul(model.w, x));
}

namespace {

int nearest_label(const Model& model, const Matrix& features, Index col) {
    const Matrix& train = model.train_features;
    Index best = 0;
    double best_dist = 0.0;
    for (Index t = 0; t < train.cols(); ++t) {
        double dist = 0.0;
        for (Index i = 0; i < train.rows(); ++i) {
            double diff = features(i, col) - train(i, t);
            dist += diff * diff;
        }
        if (t == 0 || dist < best_dist) {  // strict < keeps the lowest index on ties
            best_dist = dist;
            best = t;
        }
    }
    return model.train_labels[static_cast<std::size_t>(best)];
}

} // namespace

std::vector<int> predict_nn_batch(const Model& model, const Matrix& x) {
    if (!model.has_train_features() || model.train_labels.empty())
        throw StateError("predict_nn: model was saved without training features");
    Matrix features = transform(model, x);
    std::vector<int> out(static_cast<std::size_t>(x.cols()));
    const bool parallel = linalg::backend() == linalg::Backend::parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (Index j = 0; j < x.cols(); ++j)
        out[static_cast<std::size_t>(j)] = nearest_label(model, features, j);
    return out;
}

int predict_nn(const Model& model, const Matrix& y) {
    if (y.cols() != 1) throw InputError("predict_nn: expected a single column");
    return predict_nn_batch(model, y)[0];
}

std::vector<int> predict_argmax_tsl_batch(const Model& model, const Matrix& x) {
    Matrix features = transform(model, x);
    std::vector<int> out(static_cast<std::size_t>(x.cols()));
    for (Index j = 0; j < x.cols(); ++j) out[static_cast<std::size_t>(j)] = argmax_index(features.col(j));
    return out;
}

int predict_argmax_tsl(const Model& model, const Matrix& y) {
    if (y.cols() != 1) throw InputError("predict_argmax_tsl: expected a single column");
    return predict_argmax_tsl_batch(model, y)[0];
}

} // namespace tsllsr

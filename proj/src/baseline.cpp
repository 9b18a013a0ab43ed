#include "tsllsr/baseline.hpp"

#include <utility>

#include "tsllsr/linalg.hpp"
#include "tsllsr/types.hpp"

namespace tsllsr {

Matrix solve_standard_lsr(const Matrix& x, const Matrix& h, double lambda) {
    if (x.cols() != h.cols()) throw InputError("solve_standard_lsr: sample/label counts disagree");
    if (lambda < 0.0) throw InputError("solve_standard_lsr: lambda must be >= 0");
    Matrix system = linalg::gram(x, 1.0, lambda);  // d x d
    Matrix rhs = linalg::matmul_abt(x, h);         // d x c
    try {
        linalg::CholeskyFactor factor(std::move(system));
        return factor.solve(rhs).transposed();
    } catch (const NumericalError&) {
        throw NumericalError(
            "solve_standard_lsr: sample Gram matrix is singular; use lambda > 0");
    }
}

int argmax_index(const Matrix& scores) {
    int best = 0;
    for (Index i = 1; i < scores.rows(); ++i)
        if (scores(i, 0) > scores(best, 0)) best = static_cast<int>(i);
    return best;
}

int predict_argmax(const Matrix& w, const Matrix& y) {
    if (w.cols() != y.rows() || y.cols() != 1)
        throw InputError("predict_argmax: dimension mismatch");
    return argmax_index(linalg::matmul(w, y));
}

} // namespace tsllsr

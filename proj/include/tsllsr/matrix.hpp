#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tsllsr {

using Index = std::ptrdiff_t;

/// Dense row-major matrix of doubles. Value type; zero-initialized on resize.
class Matrix {
public:
    Matrix() = default;
    Matrix(Index rows, Index cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows >= 0 && cols >= 0 ? rows * cols : -1), 0.0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
    }

    static Matrix identity(Index n) {
        Matrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index size() const { return rows_ * cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(Index i, Index j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(Index i, Index j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix col(Index j) const {
        Matrix v(rows_, 1);
        for (Index i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
        return v;
    }

    void set_col(Index j, const Matrix& v) {
        for (Index i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Index rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline bool same_shape(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
}

inline bool all_finite(const Matrix& m) {
    const double* p = m.data();
    for (Index i = 0; i < m.size(); ++i)
        if (!std::isfinite(p[i])) return false;
    return true;
}

// Elementwise arithmetic. Shapes must already agree; these are building blocks
// for solver update rules, not a general expression system.
inline Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

inline Matrix operator*(double s, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.size(); ++i) out.data()[i] = s * a.data()[i];
    return out;
}

} // namespace tsllsr

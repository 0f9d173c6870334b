#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kmpspectra/scalar.hpp"

namespace kmpspectra {

/// Dense row-major matrix, generic over the scalar (exact rational or double).
template <typename S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, scalar_traits<S>::zero()) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    S& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t k = 0; k < cols_; ++k) {
                const S& a = (*this)(i, k);
                if (scalar_traits<S>::is_zero(a)) continue;
                for (size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += a * o(k, j);
            }
        }
        return r;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    Matrix scaled(const S& c) const {
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * c;
        return r;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix apply: shape mismatch");
        std::vector<S> r(rows_, scalar_traits<S>::zero());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_symmetric_exact() const {
        if (rows_ != cols_) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_symmetric(double tol) const {
        if (rows_ != cols_) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = i + 1; j < cols_; ++j) {
                double a = to_double((*this)(i, j));
                double b = to_double((*this)(j, i));
                if (std::fabs(a - b) > tol) return false;
            }
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& x : data_) m = std::max(m, std::fabs(to_double(x)));
        return m;
    }

    const std::vector<S>& raw() const { return data_; }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix op: shape mismatch");
    }

    size_t rows_, cols_;
    std::vector<S> data_;
};

template <typename S>
Matrix<double> to_double_matrix(const Matrix<S>& m) {
    Matrix<double> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
    return r;
}

inline Matrix<Rational> to_rational_matrix(const Matrix<double>& m) {
    Matrix<Rational> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = rational_from_double(m(i, j));
    return r;
}

template <typename S>
std::vector<S> scale_vector(const std::vector<S>& v, const S& c) {
    std::vector<S> r = v;
    for (auto& x : r) x = x * c;
    return r;
}

template <typename S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
    S s = scalar_traits<S>::zero();
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace kmpspectra

#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

#include "bidisk/rational.hpp"

namespace bidisk {

/// Dense row-major matrix over either scalar field. Deliberately small:
/// the heavy numerics go through Eigen on the float side.
template <typename S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, S()) {}
    Matrix(int rows, int cols, std::initializer_list<S> vals) : Matrix(rows, cols) {
        require(int(vals.size()) == rows * cols, ErrorCode::DimensionMismatch, "initializer size");
        std::size_t i = 0;
        for (const S& v : vals) data_[i++] = v;
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_from_long<S>(1);
        return m;
    }
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    S& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    const S& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    bool is_zero() const {
        for (const S& v : data_)
            if (!scalar_is_zero(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (const S& v : data_) m = std::max(m, scalar_abs(v));
        return m;
    }

    Matrix conj_transpose() const {
        Matrix out(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) out(c, r) = conj_scalar((*this)(r, c));
        return out;
    }

    Matrix block(int r0, int c0, int nr, int nc) const {
        Matrix out(nr, nc);
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
        return out;
    }

    void set_block(int r0, int c0, const Matrix& m) {
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
    }

    Matrix& operator+=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "matrix add");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "matrix sub");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const S& s) {
        for (S& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
    friend Matrix operator*(const S& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, ErrorCode::DimensionMismatch, "matrix mul");
        Matrix out(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                const S& ark = a(r, k);
                if (scalar_is_zero(ark)) continue;
                for (int c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_, cols_;
    std::vector<S> data_;
};

template <typename S>
Matrix<S> hstack(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.empty() && a.rows() == 0) return b;
    if (b.empty() && b.rows() == 0) return a;
    require(a.rows() == b.rows(), ErrorCode::DimensionMismatch, "hstack");
    Matrix<S> out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

template <typename S>
Matrix<S> vstack(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.empty() && a.cols() == 0) return b;
    if (b.empty() && b.cols() == 0) return a;
    require(a.cols() == b.cols(), ErrorCode::DimensionMismatch, "vstack");
    Matrix<S> out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

using CMat = Matrix<Cplx>;
using QMat = Matrix<GaussianRational>;

inline Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

inline CMat from_eigen(const Eigen::MatrixXcd& m) {
    CMat out(int(m.rows()), int(m.cols()));
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

inline CMat to_float(const QMat& m) {
    CMat out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex();
    return out;
}

inline QMat to_exact(const CMat& m) {
    QMat out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            out(r, c) = GaussianRational::from_double(m(r, c).real(), m(r, c).imag());
    return out;
}

template <typename S>
CMat matrix_to_complex(const Matrix<S>& m) {
    if constexpr (is_exact_field_v<S>)
        return to_float(m);
    else
        return m;
}

/// Operator 2-norm (float path only).
inline double op_norm(const CMat& m) {
    if (m.empty()) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues()(0);
}

/// Exact determinant by fraction-preserving Gaussian elimination over Q(i).
inline GaussianRational exact_det(QMat m) {
    require(m.rows() == m.cols(), ErrorCode::NotSquare, "exact_det needs square input");
    int n = m.rows();
    GaussianRational det(1);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r)
            if (!m(r, k).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return GaussianRational(0);
        if (pivot != k) {
            for (int c = k; c < n; ++c) std::swap(m(pivot, c), m(k, c));
            det = -det;
        }
        det *= m(k, k);
        for (int r = k + 1; r < n; ++r) {
            if (m(r, k).is_zero()) continue;
            GaussianRational f = m(r, k) / m(k, k);
            for (int c = k; c < n; ++c) m(r, c) -= f * m(k, c);
        }
    }
    return det;
}

}  // namespace bidisk

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace pinvlab {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double norm2(const Vector& v) {
    double s = 0.0;
    for (auto z : v) s += std::norm(z);
    return std::sqrt(s);
}

// Dense complex matrix, row-major. Plain value type; all operations allocate
// their result. Sized for desk-scale work (dims of a few hundred at most).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_check(rows, cols)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    cplx operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](cplx z) { return is_finite(z); });
    }

    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const cplx a = (*this)(i, k);
                if (a == cplx{}) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    friend Matrix operator*(cplx s, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.data_.size(); ++k) r.data_[k] = s * m.data_[k];
        return r;
    }

    Vector operator*(const Vector& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("matrix-vector product: dimension mismatch");
        Vector y(rows_, cplx{});
        for (int i = 0; i < rows_; ++i) {
            cplx s{};
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (auto z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (auto z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    // column as a vector; used by basis manipulation
    Vector col(int j) const {
        Vector v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(int j, const Vector& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

private:
    static std::size_t size_check(int rows, int cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shapes differ");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
    return (a - b).frobenius_norm();
}

// ||X - Y||_F / (1 + max(||X||_F, ||Y||_F)); the scale-damped residual used
// throughout the verification suites.
inline double relative_residual(const Matrix& x, const Matrix& y) {
    return frobenius_distance(x, y) / (1.0 + std::max(x.frobenius_norm(), y.frobenius_norm()));
}

}  // namespace pinvlab

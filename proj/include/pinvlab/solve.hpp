#pragma once

#include <limits>
#include <utility>

#include "pinvlab/matrix.hpp"

namespace pinvlab {

// LU factorization with partial pivoting. This is the second, SVD-free solve
// path: the definition-route pseudoinverse and the perturbation update both
// rest on it, so the two routes share no inversion machinery.
struct LuFactors {
    Matrix lu;              // packed L (unit diagonal) and U
    std::vector<int> piv;   // row permutation
};

inline LuFactors lu_factor(Matrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("lu_factor: matrix must be square");
    const int n = a.rows();
    const double floor = a.max_abs() * n * std::numeric_limits<double>::epsilon() * 1e-3;
    std::vector<int> piv(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= floor || best == 0.0)
            throw std::runtime_error("lu_factor: pivot vanished, system numerically singular");
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        const cplx inv_piv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx l = a(i, k) * inv_piv;
            a(i, k) = l;
            for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    return LuFactors{std::move(a), std::move(piv)};
}

// Solves A * X = B for a matrix right-hand side.
inline Matrix lu_solve(const LuFactors& f, Matrix b) {
    const int n = f.lu.rows();
    if (b.rows() != n) throw std::invalid_argument("lu_solve: right-hand side rows mismatch");
    const int k = b.cols();
    for (int i = 0; i < n; ++i)
        if (f.piv[i] != i)
            for (int j = 0; j < k; ++j) std::swap(b(i, j), b(f.piv[i], j));
    for (int i = 1; i < n; ++i)
        for (int r = 0; r < i; ++r) {
            const cplx l = f.lu(i, r);
            if (l == cplx{}) continue;
            for (int j = 0; j < k; ++j) b(i, j) -= l * b(r, j);
        }
    for (int i = n - 1; i >= 0; --i) {
        for (int r = i + 1; r < n; ++r) {
            const cplx u = f.lu(i, r);
            if (u == cplx{}) continue;
            for (int j = 0; j < k; ++j) b(i, j) -= u * b(r, j);
        }
        const cplx d = f.lu(i, i);
        for (int j = 0; j < k; ++j) b(i, j) /= d;
    }
    return b;
}

inline Matrix lu_inverse(const Matrix& a) { return lu_solve(lu_factor(a), Matrix::identity(a.rows())); }

}  // namespace pinvlab

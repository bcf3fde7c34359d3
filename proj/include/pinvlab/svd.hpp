#pragma once

#include <cstdint>
#include <limits>
#include <numeric>

#include "pinvlab/matrix.hpp"

namespace pinvlab {

// Full singular value decomposition A = U * diag(sigma) * V^H with U (m x m)
// and V (n x n) unitary and sigma non-increasing of length min(m, n).
struct SvdFactors {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
};

namespace detail {

// Orthonormal completion: fills the unset columns of q (marked by `missing`)
// with unit vectors orthogonal to all previously set columns. Two rounds of
// Gram-Schmidt keep the basis orthonormal to near machine precision.
inline void complete_basis(Matrix& q, const std::vector<bool>& missing) {
    const int m = q.rows();
    std::vector<int> have;
    for (int j = 0; j < q.cols(); ++j)
        if (!missing[j]) have.push_back(j);

    auto project_out = [&](Vector& w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int j : have) {
                cplx dot{};
                for (int i = 0; i < m; ++i) dot += std::conj(q(i, j)) * w[i];
                for (int i = 0; i < m; ++i) w[i] -= dot * q(i, j);
            }
        }
    };

    for (int j = 0; j < q.cols(); ++j) {
        if (!missing[j]) continue;
        // candidate basis vector with the largest residual after projection
        Vector best;
        double best_norm = -1.0;
        for (int e = 0; e < m; ++e) {
            Vector w(m, cplx{});
            w[e] = 1.0;
            project_out(w);
            double nw = norm2(w);
            if (nw > best_norm) {
                best_norm = nw;
                best = std::move(w);
            }
        }
        for (int i = 0; i < m; ++i) q(i, j) = best[i] / best_norm;
        have.push_back(j);
    }
}

}  // namespace detail

// One-sided Jacobi SVD. Right rotations orthogonalize the columns of the
// working copy; the accumulated rotations form V, the normalized columns form
// U. Chosen over bidiagonalization for the relative accuracy of small
// singular values, which the rank decisions downstream depend on.
inline SvdFactors svd(const Matrix& a) {
    if (!a.all_finite()) throw std::invalid_argument("svd: entries must be finite");
    const int m = a.rows();
    const int n = a.cols();
    if (m < n) {
        SvdFactors f = svd(a.adjoint());
        return SvdFactors{std::move(f.v), std::move(f.sigma), std::move(f.u)};
    }

    Matrix b = a;
    Matrix v = Matrix::identity(n);
    // convergence threshold a safe factor above the post-rotation rounding
    // noise; the residual cross terms it admits are ~m*eps, well inside the
    // 1e-12 factor tolerances
    const double eps = std::numeric_limits<double>::epsilon() * std::max(m, 8);
    constexpr int max_sweeps = 128;

    // Column noise floors: once rotations grind a column this far below its
    // starting norm, every significant digit is gone and what is left is
    // accumulated round-off of a null direction. Such columns are flushed to
    // exact zero so they cannot churn at denormal scale forever. Columns that
    // never rotate (already orthogonal, however tiny) are never flushed.
    std::vector<double> noise_floor2(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += std::norm(b(i, j));
        const double e2 = std::numeric_limits<double>::epsilon() *
                          std::numeric_limits<double>::epsilon();
        noise_floor2[j] = s * e2 * 1e-6;
    }

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq{};
                for (int i = 0; i < m; ++i) {
                    app += std::norm(b(i, p));
                    aqq += std::norm(b(i, q));
                    apq += std::conj(b(i, p)) * b(i, q);
                }
                const double off = std::abs(apq);
                if (app == 0.0 || aqq == 0.0 || off <= eps * std::sqrt(app * aqq)) continue;

                // phase that makes the cross term real, then a real rotation
                // diagonalizing the 2x2 Gram block [[app, off], [off, aqq]]
                const cplx ph = apq / off;
                const double zeta = (aqq - app) / (2.0 * off);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                const cplx phc = std::conj(ph);
                for (int i = 0; i < m; ++i) {
                    const cplx bp = b(i, p);
                    const cplx bq = phc * b(i, q);
                    b(i, p) = cs * bp - sn * bq;
                    b(i, q) = sn * bp + cs * bq;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vp = v(i, p);
                    const cplx vq = phc * v(i, q);
                    v(i, p) = cs * vp - sn * vq;
                    v(i, q) = sn * vp + cs * vq;
                }
                rotated = true;

                for (int col : {p, q}) {
                    double after = 0.0;
                    for (int i = 0; i < m; ++i) after += std::norm(b(i, col));
                    if (after <= noise_floor2[col])
                        for (int i = 0; i < m; ++i) b(i, col) = cplx{};
                }
            }
        }
        if (!rotated) break;
    }
    if (sweep == max_sweeps)
        throw std::runtime_error("svd: Jacobi sweeps did not converge (internal defect)");

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        int nonzeros = 0;
        cplx entry{};
        for (int i = 0; i < m; ++i) {
            s += std::norm(b(i, j));
            if (b(i, j) != cplx{}) {
                ++nonzeros;
                entry = b(i, j);
            }
        }
        // a single-entry column keeps its magnitude exactly (diagonal inputs
        // pass through the decomposition without rounding)
        sigma[j] = nonzeros == 1 ? std::abs(entry) : std::sqrt(s);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sigma[i] > sigma[j]; });

    Matrix u(m, m);
    Matrix v_sorted(n, n);
    std::vector<double> sigma_sorted(n);
    std::vector<bool> missing(m, true);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        sigma_sorted[j] = sigma[src];
        for (int i = 0; i < n; ++i) v_sorted(i, j) = v(i, src);
        if (sigma[src] > 0.0) {
            for (int i = 0; i < m; ++i) u(i, j) = b(i, src) / sigma[src];
            missing[j] = false;
        }
    }
    detail::complete_basis(u, missing);

    return SvdFactors{std::move(u), std::move(sigma_sorted), std::move(v_sorted)};
}

// Largest singular value of a dense matrix.
inline double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    SvdFactors f = svd(a);
    return f.sigma.empty() ? 0.0 : f.sigma.front();
}

}  // namespace pinvlab

#pragma once

#include <array>
#include <optional>

#include "pinvlab/operator.hpp"
#include "pinvlab/solve.hpp"
#include "pinvlab/svd.hpp"

namespace pinvlab {

// Moore-Penrose inverse together with the spectral data the rank decision
// rests on. gamma is the reduced minimum modulus (smallest singular value
// above the tolerance); it is absent exactly when the rank is zero.
struct PinvResult {
    Operator pinv = Operator::zero(1, 1);
    int rank = 0;
    double tol_used = 0.0;
    std::vector<double> sigma;
    std::optional<double> gamma;
};

inline double default_rank_tol(int rows, int cols, double sigma_max) {
    const double eps = std::numeric_limits<double>::epsilon();
    return sigma_max == 0.0 ? eps : std::max(rows, cols) * sigma_max * eps;
}

namespace detail {

inline double resolve_tol(const std::optional<double>& tol, int rows, int cols,
                          double sigma_max) {
    if (tol) {
        if (*tol <= 0.0) throw std::invalid_argument("rank tolerance must be positive");
        return *tol;
    }
    return default_rank_tol(rows, cols, sigma_max);
}

inline int rank_above(const std::vector<double>& sigma, double tol) {
    int r = 0;
    for (double s : sigma)
        if (s > tol) ++r;
    return r;
}

// first k columns as an m x k matrix
inline Matrix head_cols(const Matrix& a, int k) {
    Matrix r(a.rows(), k);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < k; ++j) r(i, j) = a(i, j);
    return r;
}

inline Matrix tail_cols(const Matrix& a, int from) {
    Matrix r(a.rows(), a.cols() - from);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = from; j < a.cols(); ++j) r(i, j - from) = a(i, j);
    return r;
}

}  // namespace detail

// Pseudoinverse by the SVD route: invert singular values above tol, zero the
// rest. The default tolerance is max(m, n) * sigma_max * eps.
inline PinvResult pinv(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double sigma_max = f.sigma.empty() ? 0.0 : f.sigma.front();
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(), sigma_max);
    const int r = detail::rank_above(f.sigma, t);

    // V * Sigma^+ * U^H assembled without forming the rectangular Sigma^+
    Matrix p(a.cols(), a.rows());
    for (int k = 0; k < r; ++k) {
        const double inv_s = 1.0 / f.sigma[k];
        for (int i = 0; i < a.cols(); ++i) {
            const cplx vik = f.v(i, k) * inv_s;
            if (vik == cplx{}) continue;
            for (int j = 0; j < a.rows(); ++j) p(i, j) += vik * std::conj(f.u(j, k));
        }
    }

    PinvResult res;
    res.pinv = Operator::dense(std::move(p));
    res.rank = r;
    res.tol_used = t;
    res.gamma = r > 0 ? std::optional<double>(f.sigma[r - 1]) : std::nullopt;
    res.sigma = std::move(f.sigma);
    return res;
}

// Definition-faithful second route: invert T on its carrier, vanish on the
// orthocomplement of the range. The carrier and range bases come from the
// SVD, but the inversion itself is an LU solve of the restricted system, so
// this path cross-checks the singular-value route rather than repeating it.
inline Matrix pinv_by_definition(const Operator& op, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("rank tolerance must be positive");
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const int r = detail::rank_above(f.sigma, tol);
    if (r == 0) return Matrix::zero(a.cols(), a.rows());

    const Matrix range_basis = detail::head_cols(f.u, r);    // R(T)
    const Matrix carrier_basis = detail::head_cols(f.v, r);  // C(T) = N(T)^perp
    const Matrix restricted = range_basis.adjoint() * (a * carrier_basis);
    Matrix solved;
    try {
        solved = lu_solve(lu_factor(restricted), Matrix::identity(r));
    } catch (const std::runtime_error&) {
        throw std::runtime_error(
            "pinv_by_definition: restricted system singular (rank tolerance misclassified)");
    }
    return carrier_basis * (solved * range_basis.adjoint());
}

// Orthogonal projector onto R(T), as a dense matrix on the codomain.
inline Matrix range_projector(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    const Matrix u_r = detail::head_cols(f.u, detail::rank_above(f.sigma, t));
    return u_r * u_r.adjoint();
}

// Orthogonal projector onto N(T), on the domain.
inline Matrix null_projector(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    const Matrix v_0 = detail::tail_cols(f.v, detail::rank_above(f.sigma, t));
    return v_0 * v_0.adjoint();
}

// Orthogonal projector onto the carrier N(T)^perp, on the domain.
inline Matrix carrier_projector(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    const Matrix v_r = detail::head_cols(f.v, detail::rank_above(f.sigma, t));
    return v_r * v_r.adjoint();
}

// Reduced minimum modulus: the smallest singular value above tol. Undefined
// for the zero-rank operator (1/||T^+|| has no finite meaning there).
inline double reduced_min_modulus(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    const int r = detail::rank_above(f.sigma, t);
    if (r == 0) throw std::domain_error("reduced minimum modulus undefined for zero-rank operator");
    return f.sigma[r - 1];
}

// Largest singular value of the materialized operator.
inline double operator_norm(const Operator& op) { return spectral_norm(materialize(op)); }

// Subspace held as an orthonormal column basis of the ambient space.
struct Subspace {
    Matrix basis;     // ambient_dim x k, orthonormal columns (k may be 0)
    int ambient_dim = 0;

    Matrix projector() const { return basis * basis.adjoint(); }
    int dim() const { return basis.cols(); }
};

inline Subspace range_space(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    return Subspace{detail::head_cols(f.u, detail::rank_above(f.sigma, t)), a.rows()};
}

inline Subspace null_space(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    return Subspace{detail::tail_cols(f.v, detail::rank_above(f.sigma, t)), a.cols()};
}

inline Subspace carrier_space(const Operator& op, std::optional<double> tol = std::nullopt) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    const double t = detail::resolve_tol(tol, a.rows(), a.cols(),
                                         f.sigma.empty() ? 0.0 : f.sigma.front());
    return Subspace{detail::head_cols(f.v, detail::rank_above(f.sigma, t)), a.cols()};
}

// a <= b as subspaces: ||(I - P_b) P_a||_2 below tol.
inline bool subspace_leq(const Subspace& a, const Subspace& b, double tol = 1e-8) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("subspace comparison: ambient dimensions differ");
    if (a.dim() == 0) return true;
    const Matrix pa = a.projector();
    const Matrix residual = pa - b.projector() * pa;
    return spectral_norm(residual) <= tol;
}

inline bool subspace_eq(const Subspace& a, const Subspace& b, double tol = 1e-8) {
    return subspace_leq(a, b, tol) && subspace_leq(b, a, tol);
}

// Spectral distance of the projectors; the quantitative form of subspace_eq.
inline double subspace_distance(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("subspace comparison: ambient dimensions differ");
    return spectral_norm(a.projector() - b.projector());
}

// The four defining residuals ||APA - A||, ||PAP - P||, ||(AP)^H - AP||,
// ||(PA)^H - PA|| in Frobenius norm.
inline std::array<double, 4> penrose_residuals(const Matrix& a, const Matrix& p) {
    const Matrix ap = a * p;
    const Matrix pa = p * a;
    return {frobenius_distance(ap * a, a), frobenius_distance(pa * p, p),
            frobenius_distance(ap.adjoint(), ap), frobenius_distance(pa.adjoint(), pa)};
}

}  // namespace pinvlab

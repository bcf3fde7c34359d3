#pragma once

#include "pinvlab/pinv.hpp"

namespace pinvlab {

// Absolute values from the polar decomposition: abs = (T^H T)^{1/2} on the
// domain, abs_adj = (T T^H)^{1/2} on the codomain. Both Hermitian positive
// semidefinite.
struct PolarParts {
    Operator abs;
    Operator abs_adj;
};

namespace detail {

// Q * diag(sigma padded with zeros) * Q^H for a full unitary Q.
inline Matrix scaled_gram(const Matrix& q, const std::vector<double>& sigma) {
    const int n = q.rows();
    Matrix r(n, n);
    const int k = static_cast<int>(sigma.size());
    for (int s = 0; s < k && s < n; ++s) {
        if (sigma[s] == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const cplx qis = q(i, s) * sigma[s];
            if (qis == cplx{}) continue;
            for (int j = 0; j < n; ++j) r(i, j) += qis * std::conj(q(j, s));
        }
    }
    return r;
}

}  // namespace detail

// Matrix square roots taken directly from the SVD factors; for the Gram
// matrices involved the SVD gives the root exactly.
inline PolarParts abs_op(const Operator& op) {
    const Matrix a = materialize(op);
    SvdFactors f = svd(a);
    return PolarParts{Operator::dense(detail::scaled_gram(f.v, f.sigma)),
                      Operator::dense(detail::scaled_gram(f.u, f.sigma))};
}

// Blockwise pseudoinverse of a direct sum; equals the pseudoinverse of the
// materialized block matrix.
inline Operator pinv_direct_sum(const Operator& t1, const Operator& t2,
                                std::optional<double> tol = std::nullopt) {
    return direct_sum(pinv(t1, tol).pinv, pinv(t2, tol).pinv);
}

// | ||pinv(t1) (+) pinv(t2)|| - max(||pinv(t1)||, ||pinv(t2)||) |
inline double norm_max_check(const Operator& t1, const Operator& t2) {
    const Operator p1 = pinv(t1).pinv;
    const Operator p2 = pinv(t2).pinv;
    const double whole = operator_norm(direct_sum(p1, p2));
    const double blocks = std::max(operator_norm(p1), operator_norm(p2));
    return std::abs(whole - blocks);
}

// Residuals of the two absolute-value factorizations over a direct sum:
//   first:  | (t1 (+) t2)^+ |  vs  |t1^+| (+) |t2^+|
//   second: | t1 (+) t2 |^+   vs  |t1|^+ (+) |t2|^+
inline std::pair<double, double> abs_pinv_identities(const Operator& t1, const Operator& t2,
                                                     std::optional<double> tol = std::nullopt) {
    const Operator sum = direct_sum(t1, t2);

    const Matrix lhs1 = materialize(abs_op(pinv(sum, tol).pinv).abs);
    const Matrix rhs1 = materialize(
        direct_sum(abs_op(pinv(t1, tol).pinv).abs, abs_op(pinv(t2, tol).pinv).abs));

    const Matrix lhs2 = materialize(pinv(abs_op(sum).abs, tol).pinv);
    const Matrix rhs2 = materialize(
        direct_sum(pinv(abs_op(t1).abs, tol).pinv, pinv(abs_op(t2).abs, tol).pinv));

    return {relative_residual(lhs1, rhs1), relative_residual(lhs2, rhs2)};
}

}  // namespace pinvlab

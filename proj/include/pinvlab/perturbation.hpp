#pragma once

#include "pinvlab/pinv.hpp"
#include "pinvlab/rng.hpp"

namespace pinvlab {

// Admissibility record for an additive perturbation S of T. The update
// formula (T + S)^+ = (I + T^+ S)^{-1} T^+ is valid when the null space of T
// sits inside that of S, the range of S sits inside that of T, and both
// ||T^+ S|| and ||S T^+|| stay strictly below one. Those two norms are the
// least constants c, b in ||S^H x|| <= c ||T^H x|| and ||S x|| <= b ||T x||
// once the inclusions hold.
struct PerturbationCheck {
    double t_dagger_s_norm = 0.0;  // ||T^+ S||, constant c
    double s_t_dagger_norm = 0.0;  // ||S T^+||, constant b
    bool null_inclusion = false;   // N(T) subset of N(S)
    bool range_inclusion = false;  // R(S) subset of R(T)
    bool admissible = false;
    bool marginal = false;  // a norm lies in [1 - 1e-8, 1): formally admissible, numerically fragile
};

inline PerturbationCheck check_conditions(const Operator& t, const Operator& s,
                                          double tol = 1e-8) {
    if (t.rows() != s.rows() || t.cols() != s.cols())
        throw std::invalid_argument("check_conditions: operators must have matching dimensions");
    PerturbationCheck c;
    const Operator t_dag = pinv(t).pinv;
    c.t_dagger_s_norm = operator_norm(compose(t_dag, s));
    c.s_t_dagger_norm = operator_norm(compose(s, t_dag));
    c.null_inclusion = subspace_leq(null_space(t), null_space(s), tol);
    c.range_inclusion = subspace_leq(range_space(s), range_space(t), tol);
    c.admissible = c.null_inclusion && c.range_inclusion && c.t_dagger_s_norm < 1.0 &&
                   c.s_t_dagger_norm < 1.0;
    const double hi = std::max(c.t_dagger_s_norm, c.s_t_dagger_norm);
    c.marginal = c.admissible && hi >= 1.0 - 1e-8;
    return c;
}

// Closed-form update (I + T^+ S)^{-1} T^+ by a dense linear solve. Refuses
// inadmissible pairs; never falls back to recomputing from scratch.
inline Operator perturbed_pinv(const Operator& t, const Operator& s, double tol = 1e-8) {
    const PerturbationCheck c = check_conditions(t, s, tol);
    if (!c.admissible)
        throw std::invalid_argument("perturbed_pinv: perturbation fails the admissibility conditions");
    const Matrix t_dag = materialize(pinv(t).pinv);
    const Matrix system = Matrix::identity(t.cols()) + t_dag * materialize(s);
    Matrix x;
    try {
        x = lu_solve(lu_factor(system), t_dag);
    } catch (const std::runtime_error&) {
        throw std::runtime_error(
            "perturbed_pinv: solve failed, ||T^+ S|| < 1 was misclassified");
    }
    return Operator::dense(std::move(x));
}

struct NeumannResult {
    Operator value = Operator::zero(1, 1);
    int terms = 0;
    double last_term_norm = 0.0;
    bool converged = false;
};

// Series variant: partial sums of sum_j (-T^+ S)^j T^+, valid on the same
// admissibility region (the expansion ratio is ||T^+ S|| < 1).
inline NeumannResult neumann_perturbed_pinv(const Operator& t, const Operator& s,
                                            int max_terms = 200, double series_tol = 1e-12,
                                            double tol = 1e-8) {
    const PerturbationCheck c = check_conditions(t, s, tol);
    if (!c.admissible)
        throw std::invalid_argument(
            "neumann_perturbed_pinv: perturbation fails the admissibility conditions");
    const Matrix t_dag = materialize(pinv(t).pinv);
    const Matrix step = cplx(-1.0) * (t_dag * materialize(s));  // -T^+ S
    Matrix term = t_dag;
    Matrix sum = t_dag;
    NeumannResult r;
    r.terms = 1;
    r.last_term_norm = term.frobenius_norm();
    while (r.terms < max_terms) {
        term = step * term;
        r.last_term_norm = term.frobenius_norm();
        if (r.last_term_norm < series_tol) {
            r.converged = true;
            break;
        }
        sum = sum + term;
        ++r.terms;
    }
    r.value = Operator::dense(std::move(sum));
    return r;
}

// Deterministic admissible-pair generator: S = eps * T * C * P with C a random
// contraction and P the projector onto the carrier of T. Composing with P
// keeps N(T) inside N(S) for rank-deficient T; a final downscale caps
// ||S T^+|| at 0.9 so the pair is admissible by construction.
inline Operator random_admissible_perturbation(const Operator& t, Rng& rng,
                                               double eps_max = 0.5) {
    const int n = t.cols();
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
    const double gn = spectral_norm(g);
    const Matrix contraction = gn > 0.0 ? cplx(1.0 / gn) * g : g;
    const double eps = rng.uniform(0.05, eps_max);

    const PinvResult tp = pinv(t);
    const Matrix carrier = materialize(compose(tp.pinv, t));  // T^+ T
    Matrix s = cplx(eps) * (materialize(t) * (contraction * carrier));

    const double b = spectral_norm(s * materialize(tp.pinv));
    if (b > 0.9) s = cplx(0.9 / b) * s;
    return Operator::dense(std::move(s));
}

}  // namespace pinvlab

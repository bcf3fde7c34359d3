#pragma once

#include <bit>
#include <functional>
#include <string>

#include "pinvlab/instances.hpp"
#include "pinvlab/perturbation.hpp"
#include "pinvlab/polar.hpp"

namespace pinvlab {

// One catalog entry: a named operator identity evaluated as a scale-damped
// residual over randomized instances. Entries marked vacuous hold by
// construction in finite dimensions (domain bookkeeping with no content
// there); they stay in the catalog so coverage is visibly complete.
struct IdentitySpec {
    std::string id;          // stable across releases
    std::string description;
    std::string statement;   // the identity in operator notation
    int arity = 1;           // independent operators per instance
    double tol_factor = 1.0; // pass tolerance = suite tolerance * tol_factor
    bool vacuous = false;
    int min_rank = 0;        // rank floor for generated instances
    std::function<double(const std::vector<Operator>&, double)> residual;
};

struct IdentityReport {
    std::string id;
    int trials = 0;
    std::vector<std::pair<int, int>> dims;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
};

namespace detail {

inline Matrix pinv_mat(const Operator& op) { return materialize(pinv(op).pinv); }

inline double hermitian_defect(const Matrix& x) {
    return frobenius_distance(x, x.adjoint()) / (1.0 + x.frobenius_norm());
}

// Perturbation derived from the operator's own entries, so the residual map
// stays a pure function of the instance.
inline Operator derived_perturbation(const Operator& t) {
    std::uint64_t h = fnv1a("derived-perturbation");
    for (cplx z : materialize(t).data()) {
        h = hash_combine(h, std::bit_cast<std::uint64_t>(z.real()));
        h = hash_combine(h, std::bit_cast<std::uint64_t>(z.imag()));
    }
    Rng rng(h);
    return random_admissible_perturbation(t, rng);
}

}  // namespace detail

// The identity catalog. Every entry is an exact operator identity in finite
// dimensions; inclusions between densely defined operators saturate to
// equalities there and are checked as such.
inline const std::vector<IdentitySpec>& registry() {
    static const std::vector<IdentitySpec> entries = [] {
        using Ops = std::vector<Operator>;
        std::vector<IdentitySpec> r;

        auto add = [&r](IdentitySpec s) { r.push_back(std::move(s)); };

        add({"thm-1.4-4", "pinv-composition projects onto the carrier",
             "T^+ T = P_C(T)", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix pa = detail::pinv_mat(o[0]) * materialize(o[0]);
                 return relative_residual(pa, carrier_projector(o[0]));
             }});
        add({"thm-1.4-5", "composition with the pinv projects onto the range",
             "T T^+ = P_R(T)", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix ap = materialize(o[0]) * detail::pinv_mat(o[0]);
                 return relative_residual(ap, range_projector(o[0]));
             }});
        add({"thm-1.4-6", "the pinv is an involution",
             "(T^+)^+ = T", 1, 1.0, false, 0, [](const Ops& o, double) {
                 return relative_residual(detail::pinv_mat(pinv(o[0]).pinv), materialize(o[0]));
             }});
        add({"thm-1.4-7", "pinv commutes with the adjoint",
             "(T^H)^+ = (T^+)^H", 1, 1.0, false, 0, [](const Ops& o, double) {
                 return relative_residual(detail::pinv_mat(adjoint(o[0])),
                                          detail::pinv_mat(o[0]).adjoint());
             }});
        add({"thm-1.4-8", "null space of the adjoint's pinv",
             "N((T^H)^+) = N(T)", 1, 10.0, false, 0, [](const Ops& o, double) {
                 return subspace_distance(null_space(pinv(adjoint(o[0])).pinv),
                                          null_space(o[0]));
             }});
        add({"thm-1.4-9", "pinv of the domain Gram operator factors",
             "(T^H T)^+ = T^+ (T^H)^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix lhs = detail::pinv_mat(compose(adjoint(o[0]), o[0]));
                 const Matrix rhs = detail::pinv_mat(o[0]) * detail::pinv_mat(adjoint(o[0]));
                 return relative_residual(lhs, rhs);
             }});
        add({"thm-1.4-10", "pinv of the codomain Gram operator factors",
             "(T T^H)^+ = (T^H)^+ T^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix lhs = detail::pinv_mat(compose(o[0], adjoint(o[0])));
                 const Matrix rhs = detail::pinv_mat(adjoint(o[0])) * detail::pinv_mat(o[0]);
                 return relative_residual(lhs, rhs);
             }});
        add({"thm-2.2", "adjoint of the pinv equals pinv of the adjoint",
             "(T^+)^H = (T^H)^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 return relative_residual(detail::pinv_mat(o[0]).adjoint(),
                                          detail::pinv_mat(adjoint(o[0])));
             }});
        add({"thm-2.3", "double pinv recovers the operator",
             "(T^+)^+ = T", 1, 1.0, false, 0, [](const Ops& o, double) {
                 return relative_residual(detail::pinv_mat(pinv(o[0]).pinv), materialize(o[0]));
             }});
        add({"prop-2.4", "both pinv compositions are Hermitian",
             "T^+ T and T T^+ symmetric", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix p = detail::pinv_mat(o[0]);
                 const Matrix a = materialize(o[0]);
                 return std::max(detail::hermitian_defect(p * a),
                                 detail::hermitian_defect(a * p));
             }});
        add({"thm-2.5-1", "range and null bookkeeping of T^+ T",
             "R(T^+) = R(T^+ T), N(T) = N(T^+ T)", 1, 10.0, false, 0,
             [](const Ops& o, double) {
                 const Operator p = pinv(o[0]).pinv;
                 const Operator pt = compose(p, o[0]);
                 return std::max(subspace_distance(range_space(p), range_space(pt)),
                                 subspace_distance(null_space(o[0]), null_space(pt)));
             }});
        add({"thm-2.5-2", "range and null bookkeeping of T T^+",
             "R(T) = R(T T^+), N(T^+) = N(T T^+)", 1, 10.0, false, 0,
             [](const Ops& o, double) {
                 const Operator p = pinv(o[0]).pinv;
                 const Operator tp = compose(o[0], p);
                 return std::max(subspace_distance(range_space(o[0]), range_space(tp)),
                                 subspace_distance(null_space(p), null_space(tp)));
             }});
        add({"thm-2.5-3", "closure chain through the carrier",
             "R(T^+) = N(T)^perp = R(T^H)", 1, 10.0, false, 0, [](const Ops& o, double) {
                 const Subspace carrier = carrier_space(o[0]);
                 return std::max(
                     subspace_distance(range_space(pinv(o[0]).pinv), carrier),
                     subspace_distance(carrier, range_space(adjoint(o[0]))));
             }});
        add({"thm-2.6", "domain Gram inclusion saturates",
             "(T^H T)^+ = T^+ (T^H)^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix lhs = detail::pinv_mat(compose(adjoint(o[0]), o[0]));
                 const Matrix rhs = detail::pinv_mat(o[0]) * detail::pinv_mat(adjoint(o[0]));
                 return relative_residual(lhs, rhs);
             }});
        add({"thm-2.7", "codomain Gram inclusion saturates",
             "(T T^H)^+ = (T^H)^+ T^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix lhs = detail::pinv_mat(compose(o[0], adjoint(o[0])));
                 const Matrix rhs = detail::pinv_mat(adjoint(o[0])) * detail::pinv_mat(o[0]);
                 return relative_residual(lhs, rhs);
             }});
        add({"cor-2.8", "pinv via the codomain Gram operator",
             "T^H (T T^H)^+ = T^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix lhs =
                     materialize(o[0]).adjoint() * detail::pinv_mat(compose(o[0], adjoint(o[0])));
                 return relative_residual(lhs, detail::pinv_mat(o[0]));
             }});
        add({"cor-2.9", "pinv via the domain Gram operator",
             "(T^H T)^+ T^H = T^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix lhs =
                     detail::pinv_mat(compose(adjoint(o[0]), o[0])) * materialize(o[0]).adjoint();
                 return relative_residual(lhs, detail::pinv_mat(o[0]));
             }});
        add({"thm-2.10-1", "domain bookkeeping (finite-dim vacuous)",
             "D(T T^+) = D(T^+), D(T^+ T) = D(T)", 1, 1.0, true, 0,
             [](const Ops&, double) { return 0.0; }});
        add({"thm-2.10-2", "ranges of the pinv compositions",
             "R(T T^+) = R(T), R(T^+ T) = R(T^+)", 1, 10.0, false, 0,
             [](const Ops& o, double) {
                 const Operator p = pinv(o[0]).pinv;
                 return std::max(
                     subspace_distance(range_space(compose(o[0], p)), range_space(o[0])),
                     subspace_distance(range_space(compose(p, o[0])), range_space(p)));
             }});
        add({"thm-2.10-3", "null space identification",
             "N(T) = N((T^H)^+)", 1, 10.0, false, 0, [](const Ops& o, double) {
                 return subspace_distance(null_space(o[0]),
                                          null_space(pinv(adjoint(o[0])).pinv));
             }});
        add({"thm-2.11", "recovery through the adjoint's pinv",
             "T = T T^H (T^H)^+", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix a = materialize(o[0]);
                 const Matrix lhs = a * (a.adjoint() * detail::pinv_mat(adjoint(o[0])));
                 return relative_residual(lhs, a);
             }});
        add({"thm-2.12", "recovery through the domain Gram operator",
             "T = (T^H)^+ T^H T", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix a = materialize(o[0]);
                 const Matrix lhs = detail::pinv_mat(adjoint(o[0])) * (a.adjoint() * a);
                 return relative_residual(lhs, a);
             }});
        add({"thm-2.13", "adjoint pinv absorbed by the range projector",
             "(T^+)^H = T T^+ (T^+)^H", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix p = detail::pinv_mat(o[0]);
                 const Matrix lhs = materialize(o[0]) * (p * p.adjoint());
                 return relative_residual(lhs, p.adjoint());
             }});
        add({"thm-2.14", "adjoint pinv absorbed by the carrier projector",
             "(T^+)^H T^+ T = (T^+)^H", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix p = detail::pinv_mat(o[0]);
                 const Matrix lhs = p.adjoint() * (p * materialize(o[0]));
                 return relative_residual(lhs, p.adjoint());
             }});
        add({"thm-2.15", "adjoint fixed by the carrier projector",
             "T^H = (T^+ T)^H T^H", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix a = materialize(o[0]);
                 const Matrix pa = detail::pinv_mat(o[0]) * a;
                 return relative_residual(pa.adjoint() * a.adjoint(), a.adjoint());
             }});
        add({"thm-2.16", "adjoint absorbed on the carrier",
             "T^H = T^+ T T^H", 1, 1.0, false, 0, [](const Ops& o, double) {
                 const Matrix a = materialize(o[0]);
                 const Matrix lhs = detail::pinv_mat(o[0]) * (a * a.adjoint());
                 return relative_residual(lhs, a.adjoint());
             }});
        add({"thm-3.1", "pinv distributes over the direct sum",
             "(T1 (+) T2)^+ = T1^+ (+) T2^+", 2, 1.0, false, 0, [](const Ops& o, double) {
                 return relative_residual(detail::pinv_mat(direct_sum(o[0], o[1])),
                                          materialize(pinv_direct_sum(o[0], o[1])));
             }});
        add({"cor-3.2", "pinv distributes over n-fold direct sums",
             "(T1 (+) ... (+) Tn)^+ = T1^+ (+) ... (+) Tn^+", 2, 1.0, false, 0,
             [](const Ops& o, double) {
                 const Operator whole = direct_sum(o[0], direct_sum(o[1], o[0]));
                 const Operator blocks = direct_sum(
                     pinv(o[0]).pinv, direct_sum(pinv(o[1]).pinv, pinv(o[0]).pinv));
                 return relative_residual(detail::pinv_mat(whole), materialize(blocks));
             }});
        add({"lem-3.3", "adjoint distributes over the direct sum",
             "(T1 (+) T2)^H = T1^H (+) T2^H", 2, 1.0, false, 0, [](const Ops& o, double) {
                 return relative_residual(
                     materialize(adjoint(direct_sum(o[0], o[1]))),
                     materialize(direct_sum(adjoint(o[0]), adjoint(o[1]))));
             }});
        add({"cor-3.4", "adjoint and pinv commute over the direct sum",
             "((T1 (+) T2)^+)^H = ((T1 (+) T2)^H)^+", 2, 1.0, false, 0,
             [](const Ops& o, double) {
                 const Operator sum = direct_sum(o[0], o[1]);
                 return relative_residual(detail::pinv_mat(sum).adjoint(),
                                          detail::pinv_mat(adjoint(sum)));
             }});
        add({"cor-3.6", "reduced minimum modulus of a direct sum",
             "gamma(T1 (+) T2) = min(gamma(T1), gamma(T2))", 2, 1.0, false, 1,
             [](const Ops& o, double) {
                 const double whole = reduced_min_modulus(direct_sum(o[0], o[1]));
                 const double blocks =
                     std::min(reduced_min_modulus(o[0]), reduced_min_modulus(o[1]));
                 return std::abs(whole - blocks) / (1.0 + std::max(whole, blocks));
             }});
        add({"eq-12-13", "operator norm of a direct sum of pinvs",
             "||T1^+ (+) T2^+|| = max(||T1^+||, ||T2^+||)", 2, 1.0, false, 0,
             [](const Ops& o, double) {
                 const Operator p1 = pinv(o[0]).pinv;
                 const Operator p2 = pinv(o[1]).pinv;
                 const double whole = operator_norm(direct_sum(p1, p2));
                 const double blocks = std::max(operator_norm(p1), operator_norm(p2));
                 return std::abs(whole - blocks) / (1.0 + std::max(whole, blocks));
             }});
        add({"thm-3.7", "absolute value of the direct-sum pinv",
             "|(T1 (+) T2)^+| = |T1^+| (+) |T2^+|", 2, 1.0, false, 0,
             [](const Ops& o, double) { return abs_pinv_identities(o[0], o[1]).first; }});
        add({"cor-3.8", "pinv of the direct-sum absolute value",
             "|T1 (+) T2|^+ = |T1|^+ (+) |T2|^+", 2, 1.0, false, 0,
             [](const Ops& o, double) { return abs_pinv_identities(o[0], o[1]).second; }});
        add({"thm-3.10", "closed-form pinv update under admissible perturbation",
             "(T + S)^+ = (I + T^+ S)^{-1} T^+", 1, 1.0, false, 0,
             [](const Ops& o, double) {
                 const Operator s = detail::derived_perturbation(o[0]);
                 const Operator sum =
                     Operator::dense(materialize(o[0]) + materialize(s));
                 return relative_residual(materialize(perturbed_pinv(o[0], s)),
                                          detail::pinv_mat(sum));
             }});

        return r;
    }();
    return entries;
}

// Evaluates every catalog entry over cfg.trials randomized instances drawn
// from the dimension schedule; arity-1 entries additionally see structural
// direct-sum instances every fourth trial. Reports come back sorted by id.
// Per-trial randomness derives from (seed, identity id, trial), so execution
// order cannot change the outcome.
inline std::vector<IdentityReport> run_suite(const InstanceConfig& cfg, double tol = 1e-9) {
    if (tol <= 0.0) throw std::invalid_argument("run_suite: tolerance must be positive");
    if (cfg.trials < 0) throw std::invalid_argument("run_suite: trials must be non-negative");
    std::vector<IdentityReport> reports;
    if (cfg.trials == 0) return reports;

    std::vector<std::pair<int, int>> sched;
    for (auto d : cfg.schedule)
        if (std::max(d.first, d.second) <= cfg.max_dim) sched.push_back(d);
    if (sched.empty())
        throw std::invalid_argument("run_suite: dimension schedule empty after max_dim filter");

    for (const IdentitySpec& spec : registry()) {
        InstanceConfig ecfg = cfg;
        ecfg.seed = hash_combine(cfg.seed, fnv1a(spec.id));

        IdentityReport rep;
        rep.id = spec.id;
        rep.trials = cfg.trials;
        rep.tol = tol * spec.tol_factor;
        rep.seed = cfg.seed;

        for (int trial = 0; trial < cfg.trials; ++trial) {
            const auto d1 = sched[trial % sched.size()];
            const auto d2 = sched[(trial + 1) % sched.size()];
            Rng rr(hash_combine(ecfg.seed, 0x72616e6bULL + static_cast<std::uint64_t>(trial)));
            auto draw_rank = [&](int m, int n) {
                const int lo = spec.min_rank;
                const int hi = std::min(m, n);
                return lo + static_cast<int>(rr.below(static_cast<std::uint64_t>(hi - lo + 1)));
            };

            std::vector<Operator> ops;
            if (spec.arity == 1) {
                if (trial % 4 == 3) {
                    const Operator a = random_operator(ecfg, trial, d1.first, d1.second,
                                                       draw_rank(d1.first, d1.second));
                    const Operator b = random_operator(ecfg, trial + 1000003, d2.first,
                                                       d2.second, draw_rank(d2.first, d2.second));
                    ops.push_back(direct_sum(a, b));
                } else {
                    ops.push_back(random_operator(ecfg, trial, d1.first, d1.second,
                                                  draw_rank(d1.first, d1.second)));
                }
                rep.dims.emplace_back(ops[0].rows(), ops[0].cols());
            } else {
                ops.push_back(random_operator(ecfg, trial, d1.first, d1.second,
                                              draw_rank(d1.first, d1.second)));
                ops.push_back(random_operator(ecfg, trial + 1000003, d2.first, d2.second,
                                              draw_rank(d2.first, d2.second)));
                rep.dims.emplace_back(d1.first + d2.first, d1.second + d2.second);
            }

            double res;
            try {
                res = spec.residual(ops, rep.tol);
            } catch (const std::exception&) {
                // stressed configurations may push instances past the rank
                // tolerance; report the failure rather than aborting the run
                res = std::numeric_limits<double>::max();
            }
            rep.max_residual = std::max(rep.max_residual, res);
        }
        rep.pass = rep.max_residual <= rep.tol;
        reports.push_back(std::move(rep));
    }

    std::sort(reports.begin(), reports.end(),
              [](const IdentityReport& a, const IdentityReport& b) { return a.id < b.id; });
    return reports;
}

inline bool all_pass(const std::vector<IdentityReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const IdentityReport& r) { return r.pass; });
}

}  // namespace pinvlab

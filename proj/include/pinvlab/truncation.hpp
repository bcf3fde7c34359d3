#pragma once

#include <cstdint>
#include <string>

#include "pinvlab/identities.hpp"

namespace pinvlab {

// A truncation family realizes an operator on an infinite-dimensional space
// as a sequence of growing finite sections, together with the analytic
// pseudoinverse action as ground truth. Sequence families live on the first
// n coordinates of a square-summable sequence; grid families discretize a
// multiplication operator on [0, 1] at n cell midpoints with uniform weight.
enum class FamilyKind { sequence, grid };

struct TruncationFamily {
    std::string name;
    FamilyKind kind = FamilyKind::sequence;
    std::string description;
    std::function<Operator(int)> generate;
    std::optional<std::function<Vector(const Vector&)>> analytic_pinv_action;
    std::function<double(double)> symbol;  // grid families: the multiplier phi
};

struct Probe {
    std::string name;
    FamilyKind kind = FamilyKind::sequence;
    std::function<cplx(std::int64_t)> coord;  // 1-based coordinates (sequence)
    std::function<cplx(double)> sample;       // point values on [0, 1] (grid)
};

struct ConvergenceRecord {
    int n = 0;
    double residual = 0.0;  // section distance plus analytic tail
    double tail = 0.0;
};

// Coordinatewise stretching: (x1, 2 x2, 3 x3, ...). Injective with dense
// range; unbounded in the limit.
inline TruncationFamily family_diag_unbounded() {
    TruncationFamily f;
    f.name = "diag-unbounded";
    f.kind = FamilyKind::sequence;
    f.description = "k-th coordinate scaled by k; pinv divides by k";
    f.generate = [](int n) {
        if (n < 1) throw std::invalid_argument("truncation size must be positive");
        Vector d(n);
        for (int k = 0; k < n; ++k) d[k] = static_cast<double>(k + 1);
        return Operator::diagonal(std::move(d));
    };
    f.analytic_pinv_action = [](const Vector& y) {
        Vector x(y.size());
        for (std::size_t k = 0; k < y.size(); ++k)
            x[k] = y[k] * (1.0 / static_cast<double>(k + 1));
        return x;
    };
    return f;
}

// Same scaling but the first coordinate is annihilated, so every section has
// a one-dimensional kernel.
inline TruncationFamily family_diag_kernel() {
    TruncationFamily f;
    f.name = "diag-kernel";
    f.kind = FamilyKind::sequence;
    f.description = "first coordinate killed, k-th scaled by k for k >= 2";
    f.generate = [](int n) {
        if (n < 1) throw std::invalid_argument("truncation size must be positive");
        Vector d(n);
        for (int k = 1; k < n; ++k) d[k] = static_cast<double>(k + 1);
        return Operator::diagonal(std::move(d));
    };
    f.analytic_pinv_action = [](const Vector& y) {
        Vector x(y.size(), cplx{});
        for (std::size_t k = 1; k < y.size(); ++k)
            x[k] = y[k] * (1.0 / static_cast<double>(k + 1));
        return x;
    };
    return f;
}

// Multiplication by phi on L2([0, 1]), |phi| >= 1, sampled at cell midpoints
// (i - 1/2)/n. Uniform measure keeps the section a plain diagonal.
inline TruncationFamily family_multiplication(std::function<double(double)> phi,
                                              int n_max = 4096) {
    if (!phi) throw std::invalid_argument("family_multiplication: empty symbol");
    for (int i = 0; i < n_max; ++i) {
        const double t = (i + 0.5) / n_max;
        if (std::abs(phi(t)) < 1.0)
            throw std::domain_error("family_multiplication: |phi| < 1 on the grid");
    }
    TruncationFamily f;
    f.name = "mult-phi";
    f.kind = FamilyKind::grid;
    f.description = "multiplication operator sampled at midpoints of [0, 1]";
    f.symbol = phi;
    f.generate = [phi, n_max](int n) {
        if (n < 1) throw std::invalid_argument("truncation size must be positive");
        if (n > n_max) throw std::invalid_argument("truncation size exceeds family n_max");
        Vector d(n);
        for (int i = 0; i < n; ++i) {
            const double v = phi((i + 0.5) / n);
            if (std::abs(v) < 1.0)
                throw std::domain_error("family_multiplication: |phi| < 1 on the grid");
            d[i] = v;
        }
        return Operator::diagonal(std::move(d));
    };
    f.analytic_pinv_action = [phi](const Vector& y) {
        const int n = static_cast<int>(y.size());
        Vector x(y.size());
        for (int i = 0; i < n; ++i) x[i] = y[i] / phi((i + 0.5) / n);
        return x;
    };
    return f;
}

inline Probe probe_inv_k() {
    Probe p;
    p.name = "inv-k";
    p.kind = FamilyKind::sequence;
    p.coord = [](std::int64_t k) { return cplx(1.0 / static_cast<double>(k)); };
    return p;
}

inline Probe probe_first_coords() {
    Probe p;
    p.name = "first-coords";
    p.kind = FamilyKind::sequence;
    p.coord = [](std::int64_t k) {
        switch (k) {
            case 1: return cplx(1.0);
            case 2: return cplx(0.5);
            case 3: return cplx(0.25);
            default: return cplx(0.0);
        }
    };
    return p;
}

inline Probe probe_const_one() {
    Probe p;
    p.name = "const-one";
    p.kind = FamilyKind::grid;
    p.sample = [](double) { return cplx(1.0); };
    return p;
}

namespace detail {

// L2([0, 1]) error of the piecewise-constant embedding of the grid values of
// g against g itself; 5-node Gauss-Legendre per cell.
inline double embedding_error(const std::function<cplx(double)>& g, int n) {
    static constexpr double node[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
    static constexpr double weight[5] = {0.2369268850561891, 0.4786286704993665,
                                         0.5688888888888889, 0.4786286704993665,
                                         0.2369268850561891};
    double total = 0.0;
    const double h = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        const double mid = (i + 0.5) * h;
        const cplx gi = g(mid);
        double cell = 0.0;
        for (int q = 0; q < 5; ++q) {
            const double t = mid + 0.5 * h * node[q];
            cell += weight[q] * std::norm(g(t) - gi);
        }
        total += cell * 0.5 * h;
    }
    return std::sqrt(total);
}

}  // namespace detail

// Truncated pseudoinverse actions against the analytic ground truth. The
// residual at section size n is the distance between the computed and
// analytic actions on the first n coordinates plus the analytic tail beyond
// them, so shrinking residuals witness genuine convergence rather than
// truncation blindness.
inline std::vector<ConvergenceRecord> convergence_study(const TruncationFamily& fam,
                                                        const Probe& probe,
                                                        const std::vector<int>& ns) {
    if (!fam.analytic_pinv_action)
        throw std::invalid_argument("convergence_study: family has no analytic action");
    if (probe.kind != fam.kind)
        throw std::invalid_argument("convergence_study: probe does not fit the family");
    if (ns.empty()) throw std::invalid_argument("convergence_study: empty section list");
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1])
            throw std::invalid_argument("convergence_study: sections must increase");
    if (ns.front() < 1) throw std::invalid_argument("convergence_study: sections must be positive");

    const auto& analytic = *fam.analytic_pinv_action;
    std::vector<ConvergenceRecord> out;

    if (fam.kind == FamilyKind::sequence) {
        const int n_tail = std::max(1 << 20, 8 * ns.back());
        Vector y_full(n_tail);
        for (int k = 0; k < n_tail; ++k) y_full[k] = probe.coord(k + 1);
        const Vector a_full = analytic(y_full);

        for (int n : ns) {
            const Vector y(y_full.begin(), y_full.begin() + n);
            const Vector x = pinvlab::apply(pinv(fam.generate(n)).pinv, y);
            double d2 = 0.0;
            for (int k = 0; k < n; ++k) d2 += std::norm(x[k] - a_full[k]);
            double t2 = 0.0;
            for (int k = n; k < n_tail; ++k) t2 += std::norm(a_full[k]);
            const double tail = std::sqrt(t2);
            out.push_back({n, std::sqrt(d2) + tail, tail});
        }
        return out;
    }

    const auto g = [&](double t) { return probe.sample(t) / fam.symbol(t); };
    for (int n : ns) {
        Vector y(n);
        for (int i = 0; i < n; ++i) y[i] = probe.sample((i + 0.5) / n);
        const Vector x = pinvlab::apply(pinv(fam.generate(n)).pinv, y);
        const Vector a = analytic(y);
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += std::norm(x[i] - a[i]);
        const double dist = std::sqrt(d2 / n);
        const double tail = detail::embedding_error(g, n);
        out.push_back({n, dist + tail, tail});
    }
    return out;
}

// Runs the whole identity catalog on the n-th section (pairing the section
// with itself for two-operator identities).
inline std::vector<IdentityReport> identity_suite_on_truncation(const TruncationFamily& fam,
                                                                int n, double tol = 1e-9) {
    const Operator op = fam.generate(n);
    std::vector<IdentityReport> reports;
    for (const IdentitySpec& spec : registry()) {
        std::vector<Operator> ops(spec.arity == 2 ? 2 : 1, op);
        IdentityReport rep;
        rep.id = spec.id;
        rep.trials = 1;
        rep.dims.emplace_back(spec.arity == 2 ? 2 * op.rows() : op.rows(),
                              spec.arity == 2 ? 2 * op.cols() : op.cols());
        rep.tol = tol * spec.tol_factor;
        rep.seed = 0;
        try {
            rep.max_residual = spec.residual(ops, rep.tol);
        } catch (const std::exception&) {
            rep.max_residual = std::numeric_limits<double>::max();
        }
        rep.pass = rep.max_residual <= rep.tol;
        reports.push_back(std::move(rep));
    }
    std::sort(reports.begin(), reports.end(),
              [](const IdentityReport& a, const IdentityReport& b) { return a.id < b.id; });
    return reports;
}

}  // namespace pinvlab

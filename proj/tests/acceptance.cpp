// Acceptance gate: each criterion prints one PASS/FAIL line; the exit code is
// the number of failed criteria. The CLI binary path may be passed as argv[1]
// (used by the byte-determinism criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pinvlab/pinvlab.hpp"

using namespace pinvlab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Operator stretch_section(int n) {
    Vector d(n);
    for (int k = 0; k < n; ++k) d[k] = static_cast<double>(k + 1);
    return Operator::diagonal(std::move(d));
}

Operator kernel_section(int n) {
    Vector d(n);
    for (int k = 1; k < n; ++k) d[k] = static_cast<double>(k + 1);
    return Operator::diagonal(std::move(d));
}

double max_entry_error_reciprocal(const Matrix& p, bool kill_first) {
    double worst = 0.0;
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < p.cols(); ++j) {
            const cplx expect =
                i == j ? (kill_first && i == 0 ? cplx{} : cplx(1.0 / (i + 1.0))) : cplx{};
            worst = std::max(worst, std::abs(p(i, j) - expect));
        }
    return worst;
}

// Criterion 1: blockwise reproduction of the stretched diagonal pair at
// sections 3 and 8.
void criterion_1() {
    const auto start = Clock::now();
    double worst_diag = 0.0, worst_block = 0.0;
    for (int n : {3, 8}) {
        const Operator t1 = stretch_section(n);
        const Operator t2 = kernel_section(n);
        worst_diag = std::max(worst_diag,
                              max_entry_error_reciprocal(materialize(pinv(t1).pinv), false));
        worst_diag = std::max(worst_diag,
                              max_entry_error_reciprocal(materialize(pinv(t2).pinv), true));
        const Matrix whole = materialize(pinv(direct_sum(t1, t2)).pinv);
        const Matrix blocks = materialize(direct_sum(pinv(t1).pinv, pinv(t2).pinv));
        double d = 0.0;
        for (int i = 0; i < whole.rows(); ++i)
            for (int j = 0; j < whole.cols(); ++j)
                d = std::max(d, std::abs(whole(i, j) - blocks(i, j)));
        worst_block = std::max(worst_block, d);
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "diag dev " << worst_diag << ", block dev " << worst_block << ", " << elapsed
           << " s";
    report(1, "diagonal pair reproduction at n=3 and n=8",
           worst_diag <= 1e-14 && worst_block <= 1e-12 && elapsed < 1.0, detail.str());
}

// Criterion 2: the full identity suite at seed 42, 50 trials, tol 1e-9.
void criterion_2() {
    const auto start = Clock::now();
    InstanceConfig cfg;  // seed 42, trials 50, sigma in [0.1, 10], stock schedule
    const auto reports = run_suite(cfg, 1e-9);
    const double elapsed = seconds_since(start);
    int failed = 0;
    double worst = 0.0;
    for (const auto& r : reports) {
        if (!r.pass) ++failed;
        worst = std::max(worst, r.max_residual);
    }
    std::ostringstream detail;
    detail << reports.size() << " identities, worst residual " << worst << ", " << elapsed
           << " s";
    report(2, "identity suite (seed 42, 50 trials, tol 1e-9)",
           reports.size() >= 25 && failed == 0 && elapsed < 30.0, detail.str());
}

// Criterion 3: the SVD route and the definition route agree over 200
// instances spanning every rank.
void criterion_3() {
    InstanceConfig cfg;
    cfg.seed = 1003;
    Rng rng(1003);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng.below(32));
        const int n = 1 + static_cast<int>(rng.below(32));
        const int r = static_cast<int>(rng.below(std::min(m, n) + 1));
        const Operator op = random_operator(cfg, trial, m, n, r);
        const PinvResult svd_route = pinv(op);
        const Matrix def_route = pinv_by_definition(op, svd_route.tol_used);
        worst = std::max(worst,
                         relative_residual(def_route, materialize(svd_route.pinv)));
    }
    std::ostringstream detail;
    detail << "200 instances, worst relative deviation " << worst;
    report(3, "definition-route oracle agreement", worst <= 1e-10, detail.str());
}

// Criterion 4: perturbation update against direct recomputation, plus rank
// and subspace preservation, over 100 admissible pairs.
void criterion_4() {
    InstanceConfig cfg;
    cfg.seed = 1004;
    Rng rng(1004);
    double worst_update = 0.0, worst_series = 0.0;
    bool structure_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng.below(32));
        const int n = 1 + static_cast<int>(rng.below(32));
        const int r = static_cast<int>(rng.below(std::min(m, n) + 1));
        const Operator t = random_operator(cfg, trial, m, n, r);
        const Operator s = random_admissible_perturbation(t, rng);
        const Operator sum = Operator::dense(materialize(t) + materialize(s));

        const Matrix direct = materialize(pinv(sum).pinv);
        const Matrix updated = materialize(perturbed_pinv(t, s));
        worst_update = std::max(worst_update, frobenius_distance(updated, direct) /
                                                  (1.0 + direct.frobenius_norm()));

        const auto series = neumann_perturbed_pinv(t, s, 400, 1e-12);
        worst_series =
            std::max(worst_series, frobenius_distance(materialize(series.value), updated) /
                                       (1.0 + updated.frobenius_norm()));

        if (pinv(sum).rank != pinv(t).rank ||
            !subspace_eq(range_space(sum), range_space(t), 1e-8) ||
            !subspace_eq(null_space(sum), null_space(t), 1e-8))
            structure_ok = false;
    }
    std::ostringstream detail;
    detail << "100 pairs, worst update dev " << worst_update << ", worst series dev "
           << worst_series;
    report(4, "perturbation update theorem",
           worst_update <= 1e-9 && worst_series <= 1e-9 && structure_ok, detail.str());
}

// Criterion 5: reduced minimum modulus and pinv norm of direct sums.
void criterion_5() {
    InstanceConfig cfg;
    cfg.seed = 1005;
    Rng rng(1005);
    double worst_gamma = 0.0, worst_norm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m1 = 1 + static_cast<int>(rng.below(10));
        const int n1 = 1 + static_cast<int>(rng.below(10));
        const int m2 = 1 + static_cast<int>(rng.below(10));
        const int n2 = 1 + static_cast<int>(rng.below(10));
        const Operator a = random_operator(cfg, 2 * trial, m1, n1,
                                           1 + static_cast<int>(rng.below(std::min(m1, n1))));
        const Operator b = random_operator(cfg, 2 * trial + 1, m2, n2,
                                           1 + static_cast<int>(rng.below(std::min(m2, n2))));

        const double g_whole = reduced_min_modulus(direct_sum(a, b));
        const double g_blocks = std::min(reduced_min_modulus(a), reduced_min_modulus(b));
        worst_gamma = std::max(worst_gamma, std::abs(g_whole - g_blocks) / g_blocks);

        const double n_whole = operator_norm(pinv_direct_sum(a, b));
        const double n_blocks =
            std::max(operator_norm(pinv(a).pinv), operator_norm(pinv(b).pinv));
        worst_norm = std::max(worst_norm, std::abs(n_whole - n_blocks) / n_blocks);
    }
    std::ostringstream detail;
    detail << "100 pairs, gamma dev " << worst_gamma << ", norm dev " << worst_norm;
    report(5, "direct-sum gamma and norm formulas",
           worst_gamma <= 1e-10 && worst_norm <= 1e-10, detail.str());
}

// Criterion 6: absolute-value identities over direct sums.
void criterion_6() {
    InstanceConfig cfg;
    cfg.seed = 1006;
    Rng rng(1006);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m1 = 1 + static_cast<int>(rng.below(16));
        const int n1 = 1 + static_cast<int>(rng.below(16));
        const int m2 = 1 + static_cast<int>(rng.below(16));
        const int n2 = 1 + static_cast<int>(rng.below(16));
        const Operator a = random_operator(cfg, 2 * trial, m1, n1,
                                           static_cast<int>(rng.below(std::min(m1, n1) + 1)));
        const Operator b = random_operator(cfg, 2 * trial + 1, m2, n2,
                                           static_cast<int>(rng.below(std::min(m2, n2) + 1)));
        const auto res = abs_pinv_identities(a, b);
        worst = std::max({worst, res.first, res.second});
    }
    std::ostringstream detail;
    detail << "100 pairs, worst residual " << worst;
    report(6, "absolute-value identities over direct sums", worst <= 1e-9, detail.str());
}

// Criterion 7: convergence studies against analytic tails.
void criterion_7() {
    const auto start = Clock::now();
    const std::vector<int> ns{4, 8, 16, 32, 64};
    const auto seq = convergence_study(family_diag_unbounded(), probe_inv_k(), ns);

    bool strictly_decreasing = true;
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i].residual >= seq[i - 1].residual) strictly_decreasing = false;

    double worst_tail_dev = 0.0;
    for (const auto& r : seq) {
        double s = 0.0;
        for (long k = 2000000; k > r.n; --k) {
            const double kd = static_cast<double>(k);
            s += 1.0 / (kd * kd * kd * kd);
        }
        worst_tail_dev = std::max(worst_tail_dev, std::abs(r.residual - std::sqrt(s)));
    }

    const auto grid = convergence_study(
        family_multiplication([](double t) { return 1.0 + t; }), probe_const_one(), ns);
    bool grid_monotone = true;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i].residual >= grid[i - 1].residual) grid_monotone = false;

    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "tail dev " << worst_tail_dev << ", " << elapsed << " s";
    report(7, "truncation convergence studies",
           strictly_decreasing && worst_tail_dev <= 1e-12 && grid_monotone && elapsed < 5.0,
           detail.str());
}

// Criterion 8: two identical verify invocations produce byte-identical files.
void criterion_8(const char* cli_path) {
    if (cli_path == nullptr) {
        report(8, "byte-identical verify runs", false, "CLI path not supplied");
        return;
    }
    const std::string out1 = "acceptance_verify_1.json";
    const std::string out2 = "acceptance_verify_2.json";
    const std::string base = std::string("\"") + cli_path +
                             "\" verify --seed 42 --trials 10 --tol 1e-9 --output ";
    const int rc1 = std::system((base + out1).c_str());
    const int rc2 = std::system((base + out2).c_str());

    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(out1);
    const std::string b = slurp(out2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());

    std::ostringstream detail;
    detail << "exit codes " << rc1 << "/" << rc2 << ", " << a.size() << " bytes";
    report(8, "byte-identical verify runs",
           rc1 == 0 && rc2 == 0 && !a.empty() && a == b, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(argc > 1 ? argv[1] : nullptr);
    return failures;
}

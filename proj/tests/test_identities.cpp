#include <set>

#include "test_helpers.hpp"

using namespace pinvlab;

TEST_CASE("registry shape") {
    const auto& entries = registry();
    REQUIRE(entries.size() >= 25);

    std::set<std::string> ids;
    for (const auto& e : entries) {
        REQUIRE((e.arity == 1 || e.arity == 2));
        REQUIRE(e.tol_factor >= 1.0);
        REQUIRE(static_cast<bool>(e.residual));
        REQUIRE_FALSE(e.statement.empty());
        ids.insert(e.id);
    }
    REQUIRE(ids.size() == entries.size());
    REQUIRE(ids.count("thm-3.1") == 1);
    REQUIRE(ids.count("thm-3.10") == 1);
    REQUIRE(ids.count("eq-12-13") == 1);
}

TEST_CASE("every identity is exact on the identity operator") {
    const Operator id4 = Operator::identity(4);
    for (const auto& e : registry()) {
        const std::vector<Operator> ops(e.arity, id4);
        REQUIRE(e.residual(ops, 1e-9) <= 1e-12);
    }
}

TEST_CASE("vacuous domain entries always hold") {
    for (const auto& e : registry())
        if (e.vacuous) {
            const std::vector<Operator> ops(e.arity, Operator::zero(3, 2));
            REQUIRE(e.residual(ops, 1e-9) == 0.0);
        }
}

TEST_CASE("spot check on a rank-deficient rectangular instance") {
    InstanceConfig cfg;
    const Operator t = random_operator(cfg, 0, 6, 4, 2);
    for (const auto& e : registry())
        if (e.id == "thm-2.12") REQUIRE(e.residual({t}, 1e-9) <= 1e-10);
}

TEST_CASE("random instances honor the requested spectrum") {
    InstanceConfig cfg;
    REQUIRE(materialize(random_operator(cfg, 1, 5, 4, 0)).frobenius_norm() == 0.0);

    InstanceConfig iso = cfg;
    iso.sigma_min = iso.sigma_max = 1.0;
    const SvdFactors f = svd(materialize(random_operator(iso, 2, 6, 4, 4)));
    for (double s : f.sigma) REQUIRE(std::abs(s - 1.0) <= 1e-12);

    const Matrix a = materialize(random_operator(cfg, 9, 7, 5, 3));
    const Matrix b = materialize(random_operator(cfg, 9, 7, 5, 3));
    REQUIRE(th::max_abs_diff(a, b) == 0.0);

    REQUIRE_THROWS_AS(random_operator(cfg, 0, 3, 3, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(random_operator(cfg, 0, 3, 3, -1), std::invalid_argument);
}

TEST_CASE("suite passes on a reduced run and stays deterministic") {
    InstanceConfig cfg;
    cfg.trials = 8;
    const auto reports = run_suite(cfg, 1e-9);
    REQUIRE(reports.size() == registry().size());
    for (const auto& r : reports) {
        REQUIRE(r.pass);
        REQUIRE(r.trials == 8);
        REQUIRE(static_cast<int>(r.dims.size()) == 8);
    }
    for (std::size_t i = 1; i < reports.size(); ++i) REQUIRE(reports[i - 1].id < reports[i].id);

    const auto again = run_suite(cfg, 1e-9);
    REQUIRE(reports_to_json(reports).dump() == reports_to_json(again).dump());
}

TEST_CASE("zero trials give a vacuous empty report") {
    InstanceConfig cfg;
    cfg.trials = 0;
    const auto reports = run_suite(cfg, 1e-9);
    REQUIRE(reports.empty());
    REQUIRE(all_pass(reports));
}

TEST_CASE("near-singular stress profile reports failures without crashing") {
    InstanceConfig cfg;
    cfg.trials = 4;
    cfg.sigma_min = 1e-14;
    const auto reports = run_suite(cfg, 1e-9);
    REQUIRE(reports.size() == registry().size());
    for (const auto& r : reports) REQUIRE(std::isfinite(r.tol));
}

TEST_CASE("residuals are scale-damped") {
    InstanceConfig cfg;
    Rng rng(13001);
    for (const auto& e : registry()) {
        if (e.vacuous) continue;
        std::vector<Operator> ops, doubled;
        for (int k = 0; k < e.arity; ++k) {
            const int m = 3 + static_cast<int>(rng.below(6));
            const int n = 3 + static_cast<int>(rng.below(6));
            const int lo = e.min_rank;
            const int r =
                lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(m, n) - lo + 1)));
            const Operator op = random_operator(cfg, static_cast<int>(rng.below(1 << 16)), m, n, r);
            ops.push_back(op);
            doubled.push_back(Operator::dense(cplx(2.0) * materialize(op)));
        }
        const double base = e.residual(ops, 1e-9);
        const double scaled = e.residual(doubled, 1e-9);
        REQUIRE(scaled <= std::max(10.0 * base, 1e-13));
    }
}

TEST_CASE("suite validates its inputs") {
    InstanceConfig cfg;
    REQUIRE_THROWS_AS(run_suite(cfg, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(run_suite(cfg, -1.0), std::invalid_argument);
    cfg.trials = -2;
    REQUIRE_THROWS_AS(run_suite(cfg, 1e-9), std::invalid_argument);
    cfg.trials = 1;
    cfg.max_dim = 1;
    REQUIRE_THROWS_AS(run_suite(cfg, 1e-9), std::invalid_argument);
}

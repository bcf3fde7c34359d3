#include "test_helpers.hpp"

using namespace pinvlab;
using th::diag_op;
using th::max_abs_diff;

TEST_CASE("diagonal stretching family") {
    const TruncationFamily fam = family_diag_unbounded();
    REQUIRE(max_abs_diff(materialize(fam.generate(3)), materialize(diag_op({1, 2, 3}))) ==
            0.0);
    REQUIRE(fam.generate(1).rows() == 1);
    REQUIRE(max_abs_diff(materialize(pinv(fam.generate(1)).pinv),
                         Matrix::identity(1)) == 0.0);

    // action on y_k = 1/k is coordinatewise (1/k) * (1/k)
    Vector y(6);
    for (int k = 0; k < 6; ++k) y[k] = 1.0 / (k + 1.0);
    const Vector x = (*fam.analytic_pinv_action)(y);
    for (int k = 0; k < 6; ++k)
        REQUIRE(x[k] == y[k] * (1.0 / (k + 1.0)));
}

TEST_CASE("diagonal family with kernel") {
    const TruncationFamily fam = family_diag_kernel();
    REQUIRE(max_abs_diff(materialize(fam.generate(3)), materialize(diag_op({0, 2, 3}))) ==
            0.0);
    REQUIRE(max_abs_diff(materialize(pinv(fam.generate(3)).pinv),
                         materialize(diag_op({0, 0.5, 1.0 / 3.0}))) == 0.0);

    const Vector first{cplx(2.5), cplx{}, cplx{}};
    for (auto z : (*fam.analytic_pinv_action)(first)) REQUIRE(z == cplx{});
}

TEST_CASE("sections of diagonal families invert exactly at every size") {
    Rng rng(12001);
    for (const TruncationFamily& fam : {family_diag_unbounded(), family_diag_kernel()}) {
        for (int n : {1, 2, 5, 16, 33}) {
            const Vector y = th::random_vector(n, rng);
            const Vector via_pinv = pinvlab::apply(pinv(fam.generate(n)).pinv, y);
            const Vector via_analytic = (*fam.analytic_pinv_action)(y);
            for (int k = 0; k < n; ++k) REQUIRE(via_pinv[k] == via_analytic[k]);
        }
    }
}

TEST_CASE("multiplication family samples the symbol at midpoints") {
    const TruncationFamily fam = family_multiplication([](double t) { return 1.0 + t; });
    REQUIRE(max_abs_diff(materialize(fam.generate(4)),
                         materialize(diag_op({1.125, 1.375, 1.625, 1.875}))) == 0.0);

    // reciprocal diagonal, cross-checked by the definition route
    const PinvResult pr = pinv(fam.generate(4));
    REQUIRE(max_abs_diff(materialize(pr.pinv),
                         materialize(diag_op({1.0 / 1.125, 1.0 / 1.375, 1.0 / 1.625,
                                              1.0 / 1.875}))) <= 1e-16);
    REQUIRE(max_abs_diff(pinv_by_definition(fam.generate(4), pr.tol_used),
                         materialize(pr.pinv)) <= 1e-14);

    const TruncationFamily flat = family_multiplication([](double) { return 1.0; });
    REQUIRE(max_abs_diff(materialize(pinv(flat.generate(5)).pinv), Matrix::identity(5)) ==
            0.0);

    REQUIRE_THROWS_AS(family_multiplication([](double) { return 0.5; }), std::domain_error);
    REQUIRE_THROWS_AS(family_multiplication([](double t) { return 2.0 * t; }),
                      std::domain_error);
}

TEST_CASE("multiplication sections are uniformly invertible") {
    const TruncationFamily fam = family_multiplication([](double t) { return 1.0 + t; });
    for (int n : {2, 8, 31}) {
        REQUIRE(reduced_min_modulus(fam.generate(n)) >= 1.0);
        REQUIRE(operator_norm(pinv(fam.generate(n)).pinv) <= 1.0 + 1e-12);
    }
}

TEST_CASE("convergence of the stretching family against the analytic tail") {
    const auto records =
        convergence_study(family_diag_unbounded(), probe_inv_k(), {4, 8, 16});

    // independent tail oracle: sum_{k>n} k^-4, summed small-to-large
    auto tail_ref = [](int n) {
        double s = 0.0;
        for (long k = 2000000; k > n; --k) {
            const double kd = static_cast<double>(k);
            s += 1.0 / (kd * kd * kd * kd);
        }
        return std::sqrt(s);
    };

    REQUIRE(records.size() == 3);
    for (const auto& r : records) {
        REQUIRE(r.residual == r.tail);  // diagonal sections are exact
        REQUIRE(std::abs(r.tail - tail_ref(r.n)) <= 1e-12);
    }
    REQUIRE(records[0].residual <= 0.09);
    REQUIRE(records[1].residual < records[0].residual);
    REQUIRE(records[2].residual < records[1].residual);
}

TEST_CASE("finitely supported probes converge to zero residual") {
    const auto records =
        convergence_study(family_diag_unbounded(), probe_first_coords(), {1, 2, 4, 8});
    REQUIRE(records[0].residual > records[1].residual);
    REQUIRE(records[1].residual > records[2].residual);
    REQUIRE(records[2].residual == 0.0);
    REQUIRE(records[3].residual == 0.0);
}

TEST_CASE("multiplication family converges at first order") {
    const auto records = convergence_study(
        family_multiplication([](double t) { return 1.0 + t; }), probe_const_one(),
        {8, 16, 32});
    REQUIRE(records[0].residual > records[1].residual);
    REQUIRE(records[1].residual > records[2].residual);
    const double ratio = records[0].residual / records[2].residual;
    REQUIRE(ratio >= 2.5);
    REQUIRE(ratio <= 6.0);
}

TEST_CASE("convergence study rejects misuse") {
    TruncationFamily no_action = family_diag_unbounded();
    no_action.analytic_pinv_action.reset();
    REQUIRE_THROWS_AS(convergence_study(no_action, probe_inv_k(), {2, 4}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        convergence_study(family_diag_unbounded(), probe_const_one(), {2, 4}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(convergence_study(family_diag_unbounded(), probe_inv_k(), {4, 4}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(convergence_study(family_diag_unbounded(), probe_inv_k(), {}),
                      std::invalid_argument);
}

TEST_CASE("identity catalog passes on truncated sections") {
    for (const auto& rep : identity_suite_on_truncation(family_diag_kernel(), 8, 1e-10))
        REQUIRE(rep.pass);

    // identity sections: every residual at noise level
    const TruncationFamily flat = family_multiplication([](double) { return 1.0; });
    for (const auto& rep : identity_suite_on_truncation(flat, 6, 1e-9))
        REQUIRE(rep.max_residual <= 1e-12);

    for (const auto& rep : identity_suite_on_truncation(
             family_multiplication([](double t) { return 1.0 + t; }), 16, 1e-10))
        REQUIRE(rep.pass);
}

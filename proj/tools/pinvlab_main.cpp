// Command-line front end: run the identity verification suite, truncation
// convergence studies, pseudoinverse computation, and perturbation updates
// over matrix files. Data goes to stdout (or --output), diagnostics to
// stderr. Exit codes: 0 success / all checks pass, 1 a check failed or the
// pair was inadmissible, 2 usage or input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pinvlab/pinvlab.hpp"

namespace {

using pinvlab::json;

int write_output(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return 0;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << output_path << "\n";
        return 2;
    }
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    return 0;
}

bool parse_dims(const std::string& text, std::vector<std::pair<int, int>>& out) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos) return false;
        try {
            const int m = std::stoi(item.substr(0, x));
            const int n = std::stoi(item.substr(x + 1));
            if (m < 1 || n < 1) return false;
            out.emplace_back(m, n);
        } catch (const std::exception&) {
            return false;
        }
    }
    return !out.empty();
}

struct VerifyArgs {
    std::uint64_t seed = 42;
    int trials = 50;
    double tol = 1e-9;
    double sigma_min = 0.1;
    double sigma_max = 10.0;
    std::string dims;
    std::string output;
};

int cmd_verify(const VerifyArgs& a) {
    pinvlab::InstanceConfig cfg;
    cfg.seed = a.seed;
    cfg.trials = a.trials;
    cfg.sigma_min = a.sigma_min;
    cfg.sigma_max = a.sigma_max;
    if (cfg.sigma_min <= 0.0 || cfg.sigma_max < cfg.sigma_min) {
        std::cerr << "error: need 0 < sigma-min <= sigma-max\n";
        return 2;
    }
    if (!a.dims.empty()) {
        std::vector<std::pair<int, int>> sched;
        if (!parse_dims(a.dims, sched)) {
            std::cerr << "error: --dims expects MxN[,MxN...] with positive sizes\n";
            return 2;
        }
        cfg.schedule = std::move(sched);
        cfg.max_dim = 0;
        for (auto d : cfg.schedule) cfg.max_dim = std::max({cfg.max_dim, d.first, d.second});
    }

    const auto reports = pinvlab::run_suite(cfg, a.tol);
    if (a.trials == 0)
        std::cerr << "warning: zero trials requested; the run is vacuous\n";

    const int rc = write_output(pinvlab::reports_to_json(reports).dump(2), a.output);
    if (rc != 0) return rc;
    if (!pinvlab::all_pass(reports)) {
        for (const auto& r : reports)
            if (!r.pass)
                std::cerr << "fail: " << r.id << " max residual " << r.max_residual
                          << " tol " << r.tol << "\n";
        return 1;
    }
    return 0;
}

struct ConvergeArgs {
    std::string family = "diag-unbounded";
    std::string probe;
    std::vector<int> n_list;
    std::string output;
    std::string format = "json";
};

int cmd_converge(const ConvergeArgs& a) {
    pinvlab::TruncationFamily fam;
    if (a.family == "diag-unbounded") {
        fam = pinvlab::family_diag_unbounded();
    } else if (a.family == "diag-kernel") {
        fam = pinvlab::family_diag_kernel();
    } else if (a.family == "mult-phi") {
        fam = pinvlab::family_multiplication([](double t) { return 1.0 + t; });
    } else {
        std::cerr << "error: unknown family '" << a.family
                  << "' (expected diag-unbounded, diag-kernel, or mult-phi)\n";
        return 2;
    }

    std::string probe_name = a.probe;
    if (probe_name.empty())
        probe_name = fam.kind == pinvlab::FamilyKind::grid ? "const-one" : "inv-k";
    pinvlab::Probe probe;
    if (probe_name == "inv-k") {
        probe = pinvlab::probe_inv_k();
    } else if (probe_name == "first-coords") {
        probe = pinvlab::probe_first_coords();
    } else if (probe_name == "const-one") {
        probe = pinvlab::probe_const_one();
    } else {
        std::cerr << "error: unknown probe '" << probe_name
                  << "' (expected inv-k, first-coords, or const-one)\n";
        return 2;
    }

    if (a.n_list.empty()) {
        std::cerr << "error: --n-list must not be empty\n";
        return 2;
    }
    for (std::size_t i = 1; i < a.n_list.size(); ++i)
        if (a.n_list[i] <= a.n_list[i - 1]) {
            std::cerr << "error: --n-list must be strictly ascending\n";
            return 2;
        }

    std::vector<pinvlab::ConvergenceRecord> records;
    try {
        records = pinvlab::convergence_study(fam, probe, a.n_list);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text;
    if (a.format == "json") {
        text = pinvlab::convergence_to_json(records).dump(2);
    } else if (a.format == "csv") {
        text = pinvlab::convergence_to_csv(records);
    } else {
        std::cerr << "error: --format must be json or csv\n";
        return 2;
    }
    const int rc = write_output(text, a.output);
    if (rc != 0) return rc;

    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].residual > records[i - 1].residual) {
            std::cerr << "fail: residual increased from n=" << records[i - 1].n
                      << " to n=" << records[i].n << "\n";
            return 1;
        }
    return 0;
}

struct PinvArgs {
    std::string input;
    std::optional<double> tol;
    std::string output;
    std::string format = "json";
};

int cmd_pinv(const PinvArgs& a) {
    pinvlab::Matrix m;
    try {
        m = pinvlab::read_matrix_file(a.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    pinvlab::PinvResult res;
    try {
        res = pinvlab::pinv(pinvlab::Operator::dense(std::move(m)), a.tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text;
    if (a.format == "json") {
        json j{{"pinv", pinvlab::matrix_to_json(pinvlab::materialize(res.pinv))},
               {"rank", res.rank},
               {"tol_used", res.tol_used},
               {"sigma", res.sigma}};
        if (res.gamma) j["gamma"] = *res.gamma;
        text = j.dump(2);
    } else if (a.format == "csv") {
        std::string body;
        try {
            body = pinvlab::matrix_to_csv(pinvlab::materialize(res.pinv));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        text = "# rank," + std::to_string(res.rank) + "\n# tol_used," +
               pinvlab::format_double(res.tol_used) + "\n";
        if (res.gamma) text += "# gamma," + pinvlab::format_double(*res.gamma) + "\n";
        text += "# sigma";
        for (double s : res.sigma) text += "," + pinvlab::format_double(s);
        text += "\n" + body;
    } else {
        std::cerr << "error: --format must be json or csv\n";
        return 2;
    }
    return write_output(text, a.output);
}

struct PerturbArgs {
    std::string t_path;
    std::string s_path;
    double tol = 1e-9;
    std::string output;
};

int cmd_perturb(const PerturbArgs& a) {
    pinvlab::Matrix tm, sm;
    try {
        tm = pinvlab::read_matrix_file(a.t_path);
        sm = pinvlab::read_matrix_file(a.s_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (tm.rows() != sm.rows() || tm.cols() != sm.cols()) {
        std::cerr << "error: operator and perturbation dimensions differ\n";
        return 2;
    }
    const auto t = pinvlab::Operator::dense(tm);
    const auto s = pinvlab::Operator::dense(sm);
    const auto check = pinvlab::check_conditions(t, s);
    json j{{"check",
            json{{"t_dagger_s_norm", check.t_dagger_s_norm},
                 {"s_t_dagger_norm", check.s_t_dagger_norm},
                 {"null_inclusion", check.null_inclusion},
                 {"range_inclusion", check.range_inclusion},
                 {"admissible", check.admissible},
                 {"marginal", check.marginal}}}};
    if (!check.admissible) {
        const int rc = write_output(j.dump(2), a.output);
        return rc != 0 ? rc : 1;
    }

    const auto updated = pinvlab::perturbed_pinv(t, s);
    const auto direct =
        pinvlab::pinv(pinvlab::Operator::dense(tm + sm)).pinv;
    const auto um = pinvlab::materialize(updated);
    const auto dm = pinvlab::materialize(direct);
    const double residual =
        pinvlab::frobenius_distance(um, dm) / (1.0 + dm.frobenius_norm());
    j["pinv_update"] = pinvlab::matrix_to_json(um);
    j["agreement_residual"] = residual;
    const int rc = write_output(j.dump(2), a.output);
    if (rc != 0) return rc;
    return residual <= a.tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Moore-Penrose inverses"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the identity verification suite");
    verify->add_option("--seed", va.seed, "instance seed");
    verify->add_option("--trials", va.trials, "trials per identity")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--tol", va.tol, "pass tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--sigma-min", va.sigma_min, "smallest generated singular value");
    verify->add_option("--sigma-max", va.sigma_max, "largest generated singular value");
    verify->add_option("--dims", va.dims, "dimension schedule override, MxN[,MxN...]");
    verify->add_option("--output", va.output, "write the report here instead of stdout");

    ConvergeArgs ca;
    auto* converge = app.add_subcommand("converge", "run a truncation convergence study");
    converge->add_option("--family", ca.family,
                         "diag-unbounded, diag-kernel, or mult-phi");
    converge->add_option("--probe", ca.probe, "inv-k, first-coords, or const-one");
    converge->add_option("--n-list", ca.n_list, "ascending section sizes")
        ->delimiter(',');
    converge->add_option("--output", ca.output, "output path");
    converge->add_option("--format", ca.format, "json or csv");

    PinvArgs pa;
    auto* pv = app.add_subcommand("pinv", "pseudoinverse of a matrix file");
    pv->add_option("--input", pa.input, "matrix file (json or csv)")->required();
    double pinv_tol = 0.0;
    auto* tol_opt = pv->add_option("--tol", pinv_tol, "rank tolerance")
                        ->check(CLI::PositiveNumber);
    pv->add_option("--output", pa.output, "output path");
    pv->add_option("--format", pa.format, "json or csv");

    PerturbArgs ra;
    auto* perturb = app.add_subcommand("perturb", "pseudoinverse update T -> T + S");
    perturb->add_option("--t", ra.t_path, "matrix file for T")->required();
    perturb->add_option("--s", ra.s_path, "matrix file for S")->required();
    perturb->add_option("--tol", ra.tol, "agreement tolerance")->check(CLI::PositiveNumber);
    perturb->add_option("--output", ra.output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(va);
        if (app.got_subcommand(converge)) return cmd_converge(ca);
        if (app.got_subcommand(pv)) {
            if (tol_opt->count() > 0) pa.tol = pinv_tol;
            return cmd_pinv(pa);
        }
        if (app.got_subcommand(perturb)) return cmd_perturb(ra);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

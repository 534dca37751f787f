// fracdiff: convergence studies, solver comparisons and diagnostics for the
// time-space fractional diffusion solver.

#include "harness.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/ifl.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace fracdiff;
using namespace fracdiff::harness;

namespace {

struct Flags {
    RunConfig cfg;
    std::string coupling, rounding = "floor", scheme = "dids", solver = "auto", format = "csv";
};

void add_common(CLI::App* sub, Flags& f) {
    auto& c = f.cfg;
    sub->add_option("--case", c.case_name, "example1 | example2")->capture_default_str();
    sub->add_option("--gamma", c.gamma, "Caputo order in (0,1)")->capture_default_str();
    sub->add_option("--alpha", c.alpha, "fractional Laplacian order in (0,2)")->capture_default_str();
    sub->add_option("--r", c.r, "mesh grading exponent >= 1")->capture_default_str();
    sub->add_option("--mu", c.mu, "splitting parameter (default 1 + alpha/2)");
    sub->add_option("--s", c.s, "regularity index of the exact solution (default per case)");
    sub->add_option("--M", c.M, "time steps, comma separated list")->delimiter(',');
    sub->add_option("--N", c.N, "space intervals, comma separated list")->delimiter(',');
    sub->add_option("--coupling", f.coupling, "time2 | timemu | space2 | spacemu");
    sub->add_option("--rounding", f.rounding, "floor | ceil for coupled sizes")->capture_default_str();
    sub->add_option("--scheme", f.scheme, "dids | fids")->capture_default_str();
    sub->add_option("--solver", f.solver, "auto | direct | krylov | pkrylov")->capture_default_str();
    sub->add_option("--direct-threshold", c.direct_threshold, "largest N-1 solved directly by auto")
        ->capture_default_str();
    sub->add_option("--eps", c.epsilon, "SOE tolerance")->capture_default_str();
    sub->add_option("--tol", c.tol, "Krylov relative residual tolerance")->capture_default_str();
    sub->add_option("--format", f.format, "csv | json")->capture_default_str();
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--reps", c.reps, "repetitions for the timing column")->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for randomised diagnostics")->capture_default_str();
}

void finish(Flags& f, const std::string& name) {
    auto& c = f.cfg;
    c.subcommand = name;
    if (!f.coupling.empty()) c.coupling = parse_coupling(f.coupling);
    c.rounding = parse_rounding(f.rounding);
    c.scheme = parse_scheme(f.scheme);
    c.solver = parse_solver(f.solver);
    c.format = parse_format(f.format);
}

template <class Report>
void emit(const RunConfig& c, const Report& r) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file) throw std::runtime_error("cannot open " + c.out);
        out = &file;
    }
    if (c.format == Format::json) {
        write_json(*out, r);
    } else {
        write_csv(*out, r);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-free solver for time-space fractional diffusion equations"};
    app.require_subcommand(1);
    Flags f;

    auto* time = app.add_subcommand("convergence-time", "error table over a list of M");
    auto* space = app.add_subcommand("convergence-space", "error table over a list of N");
    auto* compare = app.add_subcommand("solver-compare", "DIDS/FIDS x direct/krylov/pkrylov");
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the original and preconditioned systems");
    auto* soe = app.add_subcommand("soe-check", "error profile of the sum-of-exponentials kernel");
    auto* column = app.add_subcommand("ifl-column", "first column of the fractional Laplacian matrix");
    for (auto* sub : {time, space, compare, spectrum, soe, column}) add_common(sub, f);
    spectrum->add_option("--level", f.cfg.level, "time level m")->capture_default_str();
    spectrum->add_flag("--frozen-kappa", f.cfg.frozen_kappa, "replace kappa by its mean (symmetric case)");
    soe->add_option("--delta", f.cfg.delta, "lower end of the interval (default tau_1 from --M and --r)");
    soe->add_option("--points", f.cfg.points, "points of the log grid")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        finish(f, name);
        const auto& c = f.cfg;
        if (name == "convergence-time" || name == "convergence-space" || name == "solver-compare") {
            const auto table = name == "convergence-time"    ? cmd_convergence_time(c)
                               : name == "convergence-space" ? cmd_convergence_space(c)
                                                             : cmd_solver_compare(c);
            emit(c, table);
            if (!table.ok()) {
                std::cerr << "fracdiff: some runs did not converge (see note column)\n";
                return 2;
            }
        } else if (name == "spectrum") {
            emit(c, cmd_spectrum(c));
        } else if (name == "soe-check") {
            emit(c, cmd_soe_check(c));
        } else if (name == "ifl-column") {
            detail::require(c.N.size() == 1, "ifl-column needs exactly one --N");
            const auto d = build_ifl(c.alpha, c.effective_mu(), 1.0, c.N.front());
            if (c.out.empty()) {
                write_first_column_csv(std::cout, d);
            } else {
                std::ofstream out(c.out);
                write_first_column_csv(out, d);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "fracdiff: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

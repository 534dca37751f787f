#include "fracdiff/scheme.hpp"

#include "fracdiff/error.hpp"
#include "fracdiff/krylov.hpp"
#include "fracdiff/time_mesh.hpp"
#include "fracdiff/toeplitz.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

namespace fracdiff {

std::string to_string(SchemeKind s) { return s == SchemeKind::dids ? "DIDS" : "FIDS"; }

std::string to_string(SolverTag s) {
    switch (s) {
        case SolverTag::direct:
            return "direct";
        case SolverTag::krylov:
            return "krylov";
        case SolverTag::precond_krylov:
            return "precond-krylov";
    }
    return "?";
}

SchemeKind parse_scheme(std::string_view s) {
    if (s == "dids" || s == "DIDS") return SchemeKind::dids;
    if (s == "fids" || s == "FIDS") return SchemeKind::fids;
    throw InvalidArgument("unknown scheme '" + std::string(s) + "'");
}

SolverKind parse_solver(std::string_view s) {
    if (s == "auto") return SolverKind::automatic;
    if (s == "direct") return SolverKind::direct;
    if (s == "krylov") return SolverKind::krylov;
    if (s == "pkrylov") return SolverKind::pkrylov;
    throw InvalidArgument("unknown solver '" + std::string(s) + "'");
}

SolverChoice select_solver(std::size_t N, const SolverOptions& options, bool kappa_x_independent) {
    SolverChoice c;
    c.use_cg = kappa_x_independent;
    switch (options.kind) {
        case SolverKind::direct:
            c.tag = SolverTag::direct;
            break;
        case SolverKind::krylov:
            c.tag = SolverTag::krylov;
            break;
        case SolverKind::pkrylov:
            c.tag = SolverTag::precond_krylov;
            break;
        case SolverKind::automatic:
            if (N <= options.direct_threshold + 1) {
                c.tag = SolverTag::direct;
            } else {
                c.tag = options.no_precond ? SolverTag::krylov : SolverTag::precond_krylov;
            }
            break;
    }
    if (c.tag == SolverTag::direct) c.use_cg = false;
    return c;
}

DenseMatrix assemble_dense(const TimeStepSystem& sys) {
    detail::require(sys.ifl != nullptr, "assemble_dense: system has no discretization");
    auto m = DenseMatrix::symmetric_toeplitz(sys.ifl->first_col);
    const std::size_t n = m.rows();
    detail::require_size(sys.kappa_diag.size(), n, "assemble_dense");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) *= sys.kappa_diag[i];
        m(i, i) += sys.shift;
    }
    return m;
}

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Linear solves of one run; the Toeplitz spectrum and the circulant
// eigenvalues are built once and reused at every level.
class LevelSolver {
public:
    LevelSolver(const IflDiscretization& ifl, SolverChoice choice, const SolverOptions& options)
        : ifl_(ifl), choice_(choice), options_(options) {
        if (choice.tag == SolverTag::direct) {
            a_dense_ = DenseMatrix::symmetric_toeplitz(ifl.first_col);
        } else {
            toeplitz_ = std::make_unique<ToeplitzOperator>(ifl.first_col);
            scratch_.resize(ifl.dimension());
        }
        if (choice.tag == SolverTag::precond_krylov) {
            // kappa_bar = 1 is a placeholder; coefficients are replaced per level.
            base_precond_ = std::make_unique<CirculantPreconditioner>(strang_first_column(ifl.first_col), 1.0, 1.0);
        }
    }

    std::vector<double> solve(const TimeStepSystem& sys, KrylovReport& rep) {
        const std::size_t n = ifl_.dimension();
        if (choice_.tag == SolverTag::direct) {
            DenseMatrix m = a_dense_;
            for (std::size_t i = 0; i < n; ++i) {
                auto row = m.row(i);
                for (double& v : row) v *= sys.kappa_diag[i];
                row[i] += sys.shift;
            }
            rep = KrylovReport{};
            rep.converged = true;
            return LuFactorization(std::move(m)).solve(sys.rhs);
        }

        LinearOperator op = [&](std::span<const double> v, std::span<double> out) {
            toeplitz_->apply(v, scratch_, toeplitz_ws_);
            for (std::size_t i = 0; i < n; ++i) out[i] = sys.shift * v[i] + sys.kappa_diag[i] * scratch_[i];
        };
        Preconditioner pc;
        std::optional<CirculantPreconditioner> level_pc;
        if (choice_.tag == SolverTag::precond_krylov) {
            double kbar = 0.0;
            for (double k : sys.kappa_diag) kbar += k;
            kbar /= static_cast<double>(n);
            level_pc.emplace(base_precond_->with_coefficients(sys.shift, kbar));
            pc = [&](std::span<const double> v, std::span<double> out) { level_pc->solve(v, out, pc_ws_); };
        }
        KrylovResult res = choice_.use_cg ? solve_cg(op, pc, sys.rhs, options_.tol, options_.max_iters)
                                          : solve_bicgstab(op, pc, sys.rhs, options_.tol, options_.max_iters);
        rep = res.report;
        return std::move(res.x);
    }

private:
    const IflDiscretization& ifl_;
    SolverChoice choice_;
    SolverOptions options_;
    DenseMatrix a_dense_;
    std::unique_ptr<ToeplitzOperator> toeplitz_;
    std::unique_ptr<CirculantPreconditioner> base_precond_;
    ToeplitzWorkspace toeplitz_ws_;
    PreconditionerWorkspace pc_ws_;
    std::vector<double> scratch_;
};

}  // namespace

RunResult run_scheme(const ProblemSpec& p, const RunOptions& opt) {
    detail::require(opt.M >= 1, "run: M must be positive");
    detail::require(opt.N >= 3, "run: N must be at least 3");
    detail::require(p.gamma > 0.0 && p.gamma < 1.0, "run: gamma must lie in (0,1)");
    detail::require(static_cast<bool>(p.kappa) && static_cast<bool>(p.source) && static_cast<bool>(p.initial),
                    "run: problem needs kappa, source and initial data");
    if (opt.scheme == SchemeKind::fids) detail::require(opt.epsilon > 0.0, "run: epsilon must be positive");

    const auto start = std::chrono::steady_clock::now();
    const double mu = opt.mu > 0.0 ? opt.mu : 1.0 + p.alpha / 2.0;
    const IflDiscretization ifl = build_ifl(p.alpha, mu, p.l, opt.N);
    const GradedMesh mesh(opt.M, opt.r, p.T);
    const std::size_t n = ifl.dimension();
    const std::size_t M = opt.M;
    const double gamma = p.gamma;
    const double gamma_factor = caputo_gamma_factor(gamma);
    const auto t = mesh.times();

    RunResult result;
    auto& rep = result.report;
    rep.scheme = opt.scheme;
    rep.M = M;
    rep.N = opt.N;
    const SolverChoice choice = select_solver(opt.N, opt.solver, p.kappa_x_independent);
    rep.solver = choice.tag;
    rep.used_cg = choice.use_cg;
    rep.history_ops.assign(M, 0);

    result.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.nodes[i] = ifl.node(i + 1);
    const auto& x = result.nodes;

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = p.initial(x[i]);
    const bool measure = static_cast<bool>(p.exact);
    double err_inf = 0.0, err_2 = 0.0;
    auto record_error = [&](std::span<const double> v, double time) {
        double emax = 0.0, esq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = v[i] - p.exact(x[i], time);
            emax = std::max(emax, std::fabs(e));
            esq += e * e;
        }
        err_inf = std::max(err_inf, emax);
        err_2 = std::max(err_2, std::sqrt(ifl.h * esq));
    };
    if (measure) record_error(u, 0.0);

    // DIDS needs every past level; FIDS only the accumulators and u^{m-1}.
    std::vector<std::vector<double>> past;
    if (opt.scheme == SchemeKind::dids || opt.keep_history) past.push_back(u);

    std::optional<FastHistory> fast;
    if (opt.scheme == SchemeKind::fids) {
        SoeApproximation soe;
        soe.gamma = gamma;
        soe.epsilon = opt.epsilon;
        soe.final_time = p.T;
        if (M >= 2) soe = build_soe(gamma, opt.epsilon, mesh.tau(1), p.T);
        rep.exponentials = soe.size();
        fast.emplace(soe, n);
    }

    LevelSolver solver(ifl, choice, opt.solver);
    TimeStepSystem sys;
    sys.ifl = &ifl;
    sys.kappa_diag.resize(n);
    sys.rhs.resize(n);
    std::vector<double> f(n), delta(n);
    std::size_t total_iters = 0;

    for (std::size_t m = 1; m <= M; ++m) {
        const double tm = t[m];
        const double tau = mesh.tau(m);
        const double a_mm = l1_weight(mesh, gamma, m, m);
        sys.level = m;
        sys.shift = a_mm / gamma_factor;
        for (std::size_t i = 0; i < n; ++i) {
            const double k = p.kappa(x[i], tm);
            if (!(k > 0.0)) {
                throw InvalidArgument("kappa must be positive on the grid (x=" + std::to_string(x[i]) +
                                      ", t=" + std::to_string(tm) + ")");
            }
            sys.kappa_diag[i] = k;
            f[i] = p.source(x[i], tm);
        }

        double first_coefficient = 0.0;
        if (opt.scheme == SchemeKind::dids) {
            const L1Weights w = l1_weights(mesh, gamma, m);
            for (std::size_t i = 0; i < n; ++i) sys.rhs[i] = w.at(1) * past[0][i];
            for (std::size_t k = 1; k < m; ++k) {
                const double c = w.at(k + 1) - w.at(k);
                const auto& uk = past[k];
                for (std::size_t i = 0; i < n; ++i) sys.rhs[i] += c * uk[i];
            }
            for (std::size_t i = 0; i < n; ++i) sys.rhs[i] = sys.rhs[i] / gamma_factor + f[i];
            rep.history_ops[m - 1] = static_cast<std::uint64_t>(m) * n;
            first_coefficient = w.at(1);
        } else {
            const std::uint64_t before = fast->operation_count();
            const auto known = fast_caputo_rhs(*fast, a_mm, u, gamma, tau);
            for (std::size_t i = 0; i < n; ++i) sys.rhs[i] = known[i] + f[i];
            if (m == 1) {
                first_coefficient = a_mm;
            } else {
                const auto& soe = fast->soe();
                const double tau1 = mesh.tau(1);
                const double gap = tm - t[1];
                for (std::size_t j = 0; j < soe.size(); ++j) {
                    const double s = soe.nodes[j];
                    first_coefficient += soe.weights[j] * std::exp(-s * gap) * (-std::expm1(-s * tau1)) / (s * tau1);
                }
            }
            // The push of the previous level is charged to this level as well.
            rep.history_ops[m - 1] += fast->operation_count() - before;
        }

        KrylovReport krep;
        std::vector<double> next = solver.solve(sys, krep);
        total_iters += krep.iterations;
        rep.max_iterations = std::max(rep.max_iterations, krep.iterations);
        if (!krep.converged) {
            if (rep.unconverged_levels == 0) {
                rep.first_failure = "level " + std::to_string(m) + ": " +
                                    (krep.breakdown.empty() ? "iteration limit reached" : krep.breakdown);
            }
            ++rep.unconverged_levels;
        }

        if (fast) {
            for (std::size_t i = 0; i < n; ++i) delta[i] = next[i] - u[i];
            const std::uint64_t before = fast->operation_count();
            fast->push(delta, tau);
            rep.history_ops[m - 1] += fast->operation_count() - before;
        }
        u = std::move(next);
        if (measure) record_error(u, tm);
        if (opt.scheme == SchemeKind::dids || opt.keep_history) past.push_back(u);

        if (opt.observer) {
            LevelInfo info;
            info.level = m;
            info.t = tm;
            info.first_coefficient = first_coefficient;
            info.u = u;
            info.f = f;
            info.iterations = krep.iterations;
            info.system = &sys;
            opt.observer(info);
        }
    }

    rep.avg_iterations = static_cast<double>(total_iters) / static_cast<double>(M);
    if (measure) {
        rep.err_inf = err_inf;
        rep.err_2 = err_2;
    }
    rep.history_memory = fast ? fast->stored_values() : past.size() * n;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.final_state = u;
    if (opt.keep_history) result.history = std::move(past);
    return result;
}

RunResult run_dids(const ProblemSpec& p, RunOptions options) {
    options.scheme = SchemeKind::dids;
    return run_scheme(p, options);
}

RunResult run_fids(const ProblemSpec& p, RunOptions options) {
    options.scheme = SchemeKind::fids;
    return run_scheme(p, options);
}

StabilityCheck stability_probe(const ProblemSpec& p, const RunOptions& options) {
    StabilityCheck check;
    double u0 = 0.0;
    {
        const IflDiscretization ifl = build_ifl(p.alpha, options.mu > 0.0 ? options.mu : 1.0 + p.alpha / 2.0, p.l,
                                                options.N);
        for (std::size_t i = 1; i < options.N; ++i) u0 = std::max(u0, std::fabs(p.initial(ifl.node(i))));
    }
    const double gamma_factor = caputo_gamma_factor(p.gamma);
    double worst_ratio = 0.0;
    check.min_slack = INFINITY;

    RunOptions opt = options;
    auto user = options.observer;
    opt.observer = [&](const LevelInfo& info) {
        worst_ratio = std::max(worst_ratio, max_abs(info.f) / info.first_coefficient);
        const double bound = u0 + gamma_factor * worst_ratio;
        const double norm = max_abs(info.u);
        check.norms.push_back(norm);
        check.bounds.push_back(bound);
        check.min_slack = std::min(check.min_slack, bound - norm);
        // Relative slack covers round-off when the bound is attained.
        if (norm > bound * (1.0 + 1e-12)) check.holds = false;
        if (user) user(info);
    };
    run_scheme(p, opt);
    return check;
}

}  // namespace fracdiff

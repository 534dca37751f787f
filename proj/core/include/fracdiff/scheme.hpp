#pragma once

#include "fracdiff/dense.hpp"
#include "fracdiff/ifl.hpp"
#include "fracdiff/problems.hpp"
#include "fracdiff/soe.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracdiff {

enum class SchemeKind { dids, fids };
enum class SolverKind { automatic, direct, krylov, pkrylov };
enum class SolverTag { direct, krylov, precond_krylov };

std::string to_string(SchemeKind s);
std::string to_string(SolverTag s);
SchemeKind parse_scheme(std::string_view s);
SolverKind parse_solver(std::string_view s);

struct SolverOptions {
    SolverKind kind = SolverKind::automatic;
    double tol = 1e-10;
    std::size_t max_iters = 0;  // 0 means 10 n
    std::size_t direct_threshold = 128;
    /// With kind == automatic, pick the unpreconditioned iteration above the threshold.
    bool no_precond = false;
};

struct SolverChoice {
    SolverTag tag = SolverTag::direct;
    bool use_cg = false;
};

/// Direct when N-1 <= threshold, else (preconditioned) BiCGSTAB, or CG when
/// kappa does not depend on x.
SolverChoice select_solver(std::size_t N, const SolverOptions& options, bool kappa_x_independent = false);

/// (shift I + diag(kappa) A) u^m = rhs at one time level.
struct TimeStepSystem {
    std::size_t level = 0;
    double shift = 0.0;
    std::vector<double> kappa_diag;
    const IflDiscretization* ifl = nullptr;
    std::vector<double> rhs;
};

/// Dense copy of shift I + diag(kappa) A.
DenseMatrix assemble_dense(const TimeStepSystem& system);

struct LevelInfo {
    std::size_t level = 0;
    double t = 0.0;
    /// Coefficient b_1 (FIDS) or a_1 (DIDS) of the current level.
    double first_coefficient = 0.0;
    std::span<const double> u;
    std::span<const double> f;
    std::size_t iterations = 0;
    const TimeStepSystem* system = nullptr;
};

struct RunOptions {
    std::size_t M = 16;
    std::size_t N = 16;
    double r = 1.0;
    /// Splitting parameter; zero selects 1 + alpha/2.
    double mu = 0.0;
    SchemeKind scheme = SchemeKind::dids;
    double epsilon = 1e-10;
    SolverOptions solver;
    /// Keep u^0..u^M in the result (DIDS stores them anyway).
    bool keep_history = false;
    std::function<void(const LevelInfo&)> observer;
};

struct SolveReport {
    SchemeKind scheme = SchemeKind::dids;
    SolverTag solver = SolverTag::direct;
    bool used_cg = false;
    std::size_t M = 0;
    std::size_t N = 0;
    std::optional<double> err_inf;
    std::optional<double> err_2;
    double avg_iterations = 0.0;
    std::size_t max_iterations = 0;
    std::size_t unconverged_levels = 0;
    std::string first_failure;
    double wall_time = 0.0;
    std::size_t exponentials = 0;
    /// Multiply-adds spent on the history term at each level (index m-1).
    std::vector<std::uint64_t> history_ops;
    /// Stored history values at the end of the run.
    std::size_t history_memory = 0;

    bool ok() const noexcept { return unconverged_levels == 0; }
};

struct RunResult {
    std::vector<double> final_state;
    std::vector<std::vector<double>> history;  // filled when keep_history
    std::vector<double> nodes;                 // interior x_i
    SolveReport report;
};

RunResult run_scheme(const ProblemSpec& p, const RunOptions& options);
RunResult run_dids(const ProblemSpec& p, RunOptions options);
RunResult run_fids(const ProblemSpec& p, RunOptions options);

struct StabilityCheck {
    bool holds = true;
    /// min over levels of bound - ||u^k||_inf
    double min_slack = 0.0;
    std::vector<double> norms;   // ||u^k||_inf, k = 1..M
    std::vector<double> bounds;  // right-hand side of the inequality
};

/// Runs the scheme and checks
///   ||u^k||_inf <= ||u^0||_inf + Gamma(1-gamma) max_{s<=k} ||f^s||_inf / c_1^{(s)}
/// at every level, with c_1 = b_1 for FIDS and a_1 for DIDS.
StabilityCheck stability_probe(const ProblemSpec& p, const RunOptions& options);

}  // namespace fracdiff

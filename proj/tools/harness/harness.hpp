#pragma once

#include "fracdiff/scheme.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracdiff::harness {

enum class Coupling { time2, timemu, space2, spacemu };
/// How a non-integer coupled size is turned into an integer. `floor` is the
/// rule that reproduces the published tables; `ceil` follows the captions
/// literally (with a 1e-9 guard against round-off just above an integer).
enum class Rounding { floor, ceil };
enum class Format { csv, json };

Coupling parse_coupling(std::string_view s);
Rounding parse_rounding(std::string_view s);
Format parse_format(std::string_view s);
std::string to_string(Coupling c);
std::string to_string(Rounding r);

double temporal_order(double r, double gamma);  // min(r gamma, 2 - gamma)
std::size_t round_size(double value, Rounding rounding);
/// N(M) = 2 M^{order/q}
std::size_t coupled_N(std::size_t M, double r, double gamma, double q, Rounding rounding);
/// M(N) = (N/2)^{q/order}
std::size_t coupled_M(std::size_t N, double r, double gamma, double q, Rounding rounding);

struct RunConfig {
    std::string subcommand = "convergence-time";
    std::string case_name = "example1";
    double gamma = 0.5;
    double alpha = 1.5;
    double r = 1.0;
    double mu = 0.0;  // 0 selects 1 + alpha/2
    int s = 0;        // 0 keeps the case default
    std::vector<std::size_t> M;
    std::vector<std::size_t> N;
    std::optional<Coupling> coupling;
    Rounding rounding = Rounding::floor;
    SchemeKind scheme = SchemeKind::dids;
    SolverKind solver = SolverKind::automatic;
    std::size_t direct_threshold = 128;
    double epsilon = 1e-10;
    double tol = 1e-10;
    Format format = Format::csv;
    std::string out;
    std::size_t reps = 3;
    std::uint64_t seed = 1;
    std::size_t level = 1;
    bool frozen_kappa = false;
    double delta = 0.0;  // soe-check; 0 derives tau_1 from M and r
    std::size_t points = 200;

    double effective_mu() const { return mu > 0.0 ? mu : 1.0 + alpha / 2.0; }
    /// Throws InvalidArgument when the combination is inconsistent.
    void validate() const;
    /// "key=value" lines describing the run, echoed into outputs.
    std::vector<std::string> describe() const;
};

struct ConvergenceRow {
    std::size_t M = 0;
    std::size_t N = 0;
    double err_inf = 0.0;
    std::optional<double> rate_inf;
    double err_2 = 0.0;
    std::optional<double> rate_2;
    double avg_iterations = 0.0;
    double wall_seconds = 0.0;
    std::string scheme;
    std::string solver;
    std::string note;  // non-empty when the run did not converge
};

struct ConvergenceTable {
    std::vector<std::string> config;
    std::vector<ConvergenceRow> rows;
    bool ok() const;
};

/// log2(previous / current)
double convergence_rate(double previous, double current);
void fill_rates(ConvergenceTable& table);

ConvergenceTable cmd_convergence_time(const RunConfig& config);
ConvergenceTable cmd_convergence_space(const RunConfig& config);
/// Every (scheme, solver) cell in {DIDS, FIDS} x {direct, krylov, pkrylov} for each N.
ConvergenceTable cmd_solver_compare(const RunConfig& config);

struct SpectrumReport {
    std::vector<std::string> config;
    bool symmetric = true;
    std::size_t N = 0;
    std::size_t level = 0;
    std::vector<double> original;        // eigenvalues, or singular values when not symmetric
    std::vector<double> preconditioned;  // of P^{-1/2} M P^{-1/2}
    /// Gershgorin discs of the original matrix: smallest left end, largest right end.
    double gershgorin_min = 0.0;
    double gershgorin_max = 0.0;
    /// Count of preconditioned values outside (0.9, 1.1).
    std::size_t outliers = 0;
    double condition_original = 0.0;
    double condition_preconditioned = 0.0;
};

SpectrumReport cmd_spectrum(const RunConfig& config);

struct SoeCheckReport {
    std::vector<std::string> config;
    std::size_t exponentials = 0;
    double delta = 0.0;
    double max_error = 0.0;
    std::vector<SoeErrorSample> profile;
};

SoeCheckReport cmd_soe_check(const RunConfig& config);

void write_csv(std::ostream& out, const ConvergenceTable& table);
void write_json(std::ostream& out, const ConvergenceTable& table);
void write_csv(std::ostream& out, const SpectrumReport& report);
void write_json(std::ostream& out, const SpectrumReport& report);
void write_csv(std::ostream& out, const SoeCheckReport& report);
void write_json(std::ostream& out, const SoeCheckReport& report);

/// Parses a table written by write_csv (comments skipped).
ConvergenceTable read_csv(std::istream& in);

/// "%.3e" and "%.3f" as used in the tables.
std::string format_error(double v);
std::string format_rate(double v);

}  // namespace fracdiff::harness

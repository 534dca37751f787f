#include "harness.hpp"

#include "fracdiff/dense.hpp"
#include "fracdiff/error.hpp"
#include "fracdiff/ifl.hpp"
#include "fracdiff/time_mesh.hpp"
#include "fracdiff/toeplitz.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fracdiff::harness {

using detail::require;

Coupling parse_coupling(std::string_view s) {
    if (s == "time2") return Coupling::time2;
    if (s == "timemu") return Coupling::timemu;
    if (s == "space2") return Coupling::space2;
    if (s == "spacemu") return Coupling::spacemu;
    throw InvalidArgument("unknown coupling '" + std::string(s) + "' (time2|timemu|space2|spacemu)");
}

Rounding parse_rounding(std::string_view s) {
    if (s == "floor") return Rounding::floor;
    if (s == "ceil") return Rounding::ceil;
    throw InvalidArgument("unknown rounding '" + std::string(s) + "' (floor|ceil)");
}

Format parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw InvalidArgument("unknown format '" + std::string(s) + "' (csv|json)");
}

std::string to_string(Coupling c) {
    switch (c) {
        case Coupling::time2:
            return "time2";
        case Coupling::timemu:
            return "timemu";
        case Coupling::space2:
            return "space2";
        case Coupling::spacemu:
            return "spacemu";
    }
    return "?";
}

std::string to_string(Rounding r) { return r == Rounding::floor ? "floor" : "ceil"; }

double temporal_order(double r, double gamma) { return std::min(r * gamma, 2.0 - gamma); }

std::size_t round_size(double value, Rounding rounding) {
    require(value >= 0.0 && std::isfinite(value), "coupled size must be finite and non-negative");
    const double v = rounding == Rounding::floor ? std::floor(value) : std::ceil(value - 1e-9);
    return static_cast<std::size_t>(v);
}

std::size_t coupled_N(std::size_t M, double r, double gamma, double q, Rounding rounding) {
    return round_size(2.0 * std::pow(static_cast<double>(M), temporal_order(r, gamma) / q), rounding);
}

std::size_t coupled_M(std::size_t N, double r, double gamma, double q, Rounding rounding) {
    return round_size(std::pow(static_cast<double>(N) / 2.0, q / temporal_order(r, gamma)), rounding);
}

namespace {

bool is_time(Coupling c) { return c == Coupling::time2 || c == Coupling::timemu; }

double coupling_exponent(Coupling c, double mu) {
    return (c == Coupling::time2 || c == Coupling::space2) ? 2.0 : mu;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
}

std::string solver_name(SolverKind k) {
    switch (k) {
        case SolverKind::automatic:
            return "auto";
        case SolverKind::direct:
            return "direct";
        case SolverKind::krylov:
            return "krylov";
        case SolverKind::pkrylov:
            return "pkrylov";
    }
    return "?";
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

ProblemSpec problem_for(const RunConfig& c) { return make_case(c.case_name, c.alpha, c.gamma, c.s).spec(); }

RunOptions options_for(const RunConfig& c, std::size_t M, std::size_t N, SchemeKind scheme, SolverKind solver) {
    RunOptions o;
    o.M = M;
    o.N = N;
    o.r = c.r;
    o.mu = c.effective_mu();
    o.scheme = scheme;
    o.epsilon = c.epsilon;
    o.solver.kind = solver;
    o.solver.tol = c.tol;
    o.solver.direct_threshold = c.direct_threshold;
    return o;
}

ConvergenceRow run_row(const RunConfig& c, const ProblemSpec& p, std::size_t M, std::size_t N, SchemeKind scheme,
                       SolverKind solver) {
    ConvergenceRow row;
    row.M = M;
    row.N = N;
    const auto opt = options_for(c, M, N, scheme, solver);
    double wall = 0.0;
    SolveReport rep;
    for (std::size_t k = 0; k < std::max<std::size_t>(c.reps, 1); ++k) {
        rep = run_scheme(p, opt).report;
        wall += rep.wall_time;
    }
    row.err_inf = rep.err_inf.value_or(NAN);
    row.err_2 = rep.err_2.value_or(NAN);
    row.avg_iterations = rep.avg_iterations;
    row.wall_seconds = wall / static_cast<double>(std::max<std::size_t>(c.reps, 1));
    row.scheme = to_string(rep.scheme);
    row.solver = to_string(rep.solver);
    if (!rep.ok()) {
        row.note = std::to_string(rep.unconverged_levels) + " unconverged levels; " + rep.first_failure;
    }
    return row;
}

}  // namespace

void RunConfig::validate() const {
    require(gamma > 0.0 && gamma < 1.0, "--gamma must lie in (0,1)");
    require(alpha > 0.0 && alpha < 2.0, "--alpha must lie in (0,2)");
    require(r >= 1.0, "--r must be >= 1");
    require(effective_mu() > alpha && effective_mu() <= 2.0, "--mu must lie in (alpha, 2]");
    require(epsilon > 0.0, "--eps must be positive");
    require(tol > 0.0, "--tol must be positive");
    require(reps >= 1, "--reps must be at least 1");
    for (auto m : M) require(m >= 1, "--M values must be positive");
    for (auto n : N) require(n >= 3, "--N values must be at least 3");

    if (subcommand == "convergence-time") {
        require(!M.empty(), "convergence-time needs --M");
        if (coupling) {
            require(is_time(*coupling), "convergence-time needs a time coupling (time2|timemu)");
            require(N.empty(), "--coupling and an explicit --N list are mutually exclusive");
        } else {
            require(N.empty() || N.size() == 1 || N.size() == M.size(),
                    "--N must have one value or as many values as --M");
        }
    } else if (subcommand == "convergence-space" || subcommand == "solver-compare") {
        require(!N.empty(), subcommand + " needs --N");
        if (coupling) {
            require(!is_time(*coupling), subcommand + " needs a space coupling (space2|spacemu)");
            require(M.empty(), "--coupling and an explicit --M list are mutually exclusive");
        } else {
            require(M.empty() || M.size() == 1 || M.size() == N.size(),
                    "--M must have one value or as many values as --N");
        }
    } else if (subcommand == "spectrum") {
        require(N.size() == 1, "spectrum needs exactly one --N");
        require(N.front() <= 256, "spectrum: N is capped at 256 for dense diagonalisation");
        require(M.size() <= 1, "spectrum takes at most one --M");
        const std::size_t m_steps = M.empty() ? 1 : M.front();
        require(level >= 1 && level <= m_steps, "--level must lie in [1, M]");
    } else if (subcommand == "soe-check") {
        require(delta > 0.0 || M.size() == 1, "soe-check needs --delta or a single --M");
        require(points >= 2, "--points must be at least 2");
    }
}

std::vector<std::string> RunConfig::describe() const {
    std::vector<std::string> d;
    d.push_back("command=" + subcommand);
    d.push_back("case=" + case_name + (s > 0 ? " s=" + std::to_string(s) : ""));
    d.push_back("gamma=" + fmt("%g", gamma) + " alpha=" + fmt("%g", alpha) + " r=" + fmt("%g", r) +
                " mu=" + fmt("%.6g", effective_mu()));
    if (!M.empty()) d.push_back("M=" + join(M));
    if (!N.empty()) d.push_back("N=" + join(N));
    if (coupling) d.push_back("coupling=" + to_string(*coupling) + " rounding=" + to_string(rounding));
    d.push_back("scheme=" + to_string(scheme) + " solver=" + solver_name(solver) +
                " direct_threshold=" + std::to_string(direct_threshold));
    d.push_back("eps=" + fmt("%g", epsilon) + " tol=" + fmt("%g", tol) + " reps=" + std::to_string(reps));
    return d;
}

bool ConvergenceTable::ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.note.empty(); });
}

double convergence_rate(double previous, double current) { return std::log2(previous / current); }

void fill_rates(ConvergenceTable& t) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        auto& row = t.rows[i];
        row.rate_inf.reset();
        row.rate_2.reset();
        if (i == 0) continue;
        const auto& prev = t.rows[i - 1];
        if (prev.scheme != row.scheme || prev.solver != row.solver) continue;
        if (prev.err_inf > 0.0 && row.err_inf > 0.0) row.rate_inf = convergence_rate(prev.err_inf, row.err_inf);
        if (prev.err_2 > 0.0 && row.err_2 > 0.0) row.rate_2 = convergence_rate(prev.err_2, row.err_2);
    }
}

ConvergenceTable cmd_convergence_time(const RunConfig& c) {
    RunConfig cfg = c;
    cfg.subcommand = "convergence-time";
    if (!cfg.coupling && cfg.N.empty()) cfg.coupling = Coupling::time2;
    cfg.validate();
    const auto p = problem_for(cfg);
    ConvergenceTable t;
    t.config = cfg.describe();
    for (std::size_t i = 0; i < cfg.M.size(); ++i) {
        const std::size_t M = cfg.M[i];
        std::size_t N;
        if (cfg.coupling) {
            N = coupled_N(M, cfg.r, cfg.gamma, coupling_exponent(*cfg.coupling, cfg.effective_mu()), cfg.rounding);
        } else {
            N = cfg.N.size() == 1 ? cfg.N.front() : cfg.N[i];
        }
        t.rows.push_back(run_row(cfg, p, M, N, cfg.scheme, cfg.solver));
    }
    fill_rates(t);
    return t;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> space_pairs(const RunConfig& cfg) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < cfg.N.size(); ++i) {
        const std::size_t N = cfg.N[i];
        std::size_t M;
        if (cfg.coupling) {
            M = coupled_M(N, cfg.r, cfg.gamma, coupling_exponent(*cfg.coupling, cfg.effective_mu()), cfg.rounding);
        } else {
            M = cfg.M.size() == 1 ? cfg.M.front() : cfg.M[i];
        }
        out.emplace_back(M, N);
    }
    return out;
}

}  // namespace

ConvergenceTable cmd_convergence_space(const RunConfig& c) {
    RunConfig cfg = c;
    cfg.subcommand = "convergence-space";
    if (!cfg.coupling && cfg.M.empty()) cfg.coupling = Coupling::space2;
    cfg.validate();
    const auto p = problem_for(cfg);
    ConvergenceTable t;
    t.config = cfg.describe();
    for (auto [M, N] : space_pairs(cfg)) t.rows.push_back(run_row(cfg, p, M, N, cfg.scheme, cfg.solver));
    fill_rates(t);
    return t;
}

ConvergenceTable cmd_solver_compare(const RunConfig& c) {
    RunConfig cfg = c;
    cfg.subcommand = "solver-compare";
    if (!cfg.coupling && cfg.M.empty()) cfg.coupling = Coupling::spacemu;
    cfg.validate();
    const auto p = problem_for(cfg);
    ConvergenceTable t;
    t.config = cfg.describe();
    for (auto [M, N] : space_pairs(cfg)) {
        for (auto scheme : {SchemeKind::dids, SchemeKind::fids}) {
            for (auto solver : {SolverKind::direct, SolverKind::krylov, SolverKind::pkrylov}) {
                t.rows.push_back(run_row(cfg, p, M, N, scheme, solver));
            }
        }
    }
    // Rates compare equal cells of consecutive N.
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i < 6) continue;
        auto& row = t.rows[i];
        const auto& prev = t.rows[i - 6];
        row.rate_inf = convergence_rate(prev.err_inf, row.err_inf);
        row.rate_2 = convergence_rate(prev.err_2, row.err_2);
    }
    return t;
}

SpectrumReport cmd_spectrum(const RunConfig& c) {
    RunConfig cfg = c;
    cfg.subcommand = "spectrum";
    cfg.validate();
    const auto p = problem_for(cfg);
    const std::size_t N = cfg.N.front();
    const std::size_t M = cfg.M.empty() ? 1 : cfg.M.front();
    const auto ifl = build_ifl(p.alpha, cfg.effective_mu(), p.l, N);
    const GradedMesh mesh(M, cfg.r, p.T);
    const std::size_t n = ifl.dimension();
    const double tm = mesh.time(cfg.level);

    TimeStepSystem sys;
    sys.level = cfg.level;
    sys.ifl = &ifl;
    sys.shift = l1_weight(mesh, p.gamma, cfg.level, cfg.level) / caputo_gamma_factor(p.gamma);
    sys.kappa_diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) sys.kappa_diag[i] = p.kappa(ifl.node(i + 1), tm);
    const double kbar = std::accumulate(sys.kappa_diag.begin(), sys.kappa_diag.end(), 0.0) / static_cast<double>(n);
    if (cfg.frozen_kappa) std::fill(sys.kappa_diag.begin(), sys.kappa_diag.end(), kbar);

    SpectrumReport rep;
    rep.config = cfg.describe();
    rep.config.push_back("level=" + std::to_string(cfg.level) + (cfg.frozen_kappa ? " frozen_kappa" : ""));
    rep.N = N;
    rep.level = cfg.level;
    const auto [kmin, kmax] = std::minmax_element(sys.kappa_diag.begin(), sys.kappa_diag.end());
    rep.symmetric = (*kmin == *kmax);

    const DenseMatrix m = assemble_dense(sys);
    rep.gershgorin_min = INFINITY;
    rep.gershgorin_max = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) radius += std::fabs(m(i, j));
        rep.gershgorin_min = std::min(rep.gershgorin_min, m(i, i) - radius);
        rep.gershgorin_max = std::max(rep.gershgorin_max, m(i, i) + radius);
    }

    // B = P^{-1/2} M P^{-1/2}; P^{-1/2} is a symmetric circulant applied spectrally.
    const auto pc = build_preconditioner(ifl, sys.shift, kbar);
    PreconditionerWorkspace ws;
    DenseMatrix half(n, n), b(n, n);
    std::vector<double> col(n), out(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = m(i, j);
        pc.inverse_sqrt(col, out, ws);
        for (std::size_t i = 0; i < n; ++i) half(i, j) = out[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = half.row(i);
        col.assign(row.begin(), row.end());
        pc.inverse_sqrt(col, out, ws);
        for (std::size_t j = 0; j < n; ++j) b(i, j) = out[j];
    }

    if (rep.symmetric) {
        rep.original = jacobi_eigenvalues(m);
        rep.preconditioned = jacobi_eigenvalues(b);
        rep.condition_original = rep.original.back() / rep.original.front();
        rep.condition_preconditioned = rep.preconditioned.back() / rep.preconditioned.front();
    } else {
        rep.original = singular_values(m);
        rep.preconditioned = singular_values(b);
        rep.condition_original = rep.original.front() / rep.original.back();
        rep.condition_preconditioned = rep.preconditioned.front() / rep.preconditioned.back();
    }
    rep.outliers = static_cast<std::size_t>(std::count_if(rep.preconditioned.begin(), rep.preconditioned.end(),
                                                          [](double v) { return v <= 0.9 || v >= 1.1; }));
    return rep;
}

SoeCheckReport cmd_soe_check(const RunConfig& c) {
    RunConfig cfg = c;
    cfg.subcommand = "soe-check";
    cfg.validate();
    const double T = 1.0;
    const double delta = cfg.delta > 0.0 ? cfg.delta : GradedMesh(cfg.M.front(), cfg.r, T).tau(1);
    const auto soe = build_soe(cfg.gamma, cfg.epsilon, delta, T);
    SoeCheckReport rep;
    rep.config = cfg.describe();
    rep.exponentials = soe.size();
    rep.delta = delta;
    rep.profile = soe_error_profile(soe, cfg.points);
    for (const auto& s : rep.profile) rep.max_error = std::max(rep.max_error, s.error);
    return rep;
}

std::string format_error(double v) { return fmt("%.3e", v); }
std::string format_rate(double v) { return fmt("%.3f", v); }

namespace {

void write_comments(std::ostream& out, const std::vector<std::string>& config) {
    for (const auto& line : config) out << "# " << line << '\n';
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

void write_csv(std::ostream& out, const ConvergenceTable& t) {
    write_comments(out, t.config);
    out << "M,N,scheme,solver,err_inf,rate_inf,err_2,rate_2,avg_its,wall_s,note\n";
    for (const auto& r : t.rows) {
        out << r.M << ',' << r.N << ',' << r.scheme << ',' << r.solver << ',' << format_error(r.err_inf) << ','
            << (r.rate_inf ? format_rate(*r.rate_inf) : "") << ',' << format_error(r.err_2) << ','
            << (r.rate_2 ? format_rate(*r.rate_2) : "") << ',' << fmt("%.1f", r.avg_iterations) << ','
            << fmt("%.3f", r.wall_seconds) << ',' << csv_field(r.note) << '\n';
    }
}

void write_json(std::ostream& out, const ConvergenceTable& t) {
    nlohmann::json j;
    j["config"] = t.config;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::json row{{"M", r.M},
                           {"N", r.N},
                           {"scheme", r.scheme},
                           {"solver", r.solver},
                           {"err_inf", r.err_inf},
                           {"err_2", r.err_2},
                           {"avg_its", r.avg_iterations},
                           {"wall_s", r.wall_seconds}};
        row["rate_inf"] = r.rate_inf ? nlohmann::json(*r.rate_inf) : nlohmann::json(nullptr);
        row["rate_2"] = r.rate_2 ? nlohmann::json(*r.rate_2) : nlohmann::json(nullptr);
        if (!r.note.empty()) row["note"] = r.note;
        j["rows"].push_back(row);
    }
    out << j.dump(2) << '\n';
}

ConvergenceTable read_csv(std::istream& in) {
    ConvergenceTable t;
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.config.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        const auto fields = split_csv(line);
        if (header.empty()) {
            header = fields;
            continue;
        }
        require(fields.size() == header.size(), "read_csv: row has " + std::to_string(fields.size()) + " fields");
        std::map<std::string, std::string> f;
        for (std::size_t i = 0; i < header.size(); ++i) f[header[i]] = fields[i];
        ConvergenceRow r;
        r.M = std::stoul(f["M"]);
        r.N = std::stoul(f["N"]);
        r.scheme = f["scheme"];
        r.solver = f["solver"];
        r.err_inf = std::stod(f["err_inf"]);
        if (!f["rate_inf"].empty()) r.rate_inf = std::stod(f["rate_inf"]);
        r.err_2 = std::stod(f["err_2"]);
        if (!f["rate_2"].empty()) r.rate_2 = std::stod(f["rate_2"]);
        r.avg_iterations = std::stod(f["avg_its"]);
        r.wall_seconds = std::stod(f["wall_s"]);
        r.note = f["note"];
        t.rows.push_back(r);
    }
    require(!header.empty(), "read_csv: missing header row");
    return t;
}

void write_csv(std::ostream& out, const SpectrumReport& r) {
    write_comments(out, r.config);
    out << "# symmetric=" << (r.symmetric ? "yes" : "no") << " values=" << (r.symmetric ? "eigenvalues" : "singular")
        << '\n';
    out << "# gershgorin=[" << fmt("%.6e", r.gershgorin_min) << ", " << fmt("%.6e", r.gershgorin_max) << "]\n";
    out << "# cond_original=" << fmt("%.6e", r.condition_original)
        << " cond_preconditioned=" << fmt("%.6e", r.condition_preconditioned)
        << " outliers_outside_0.9_1.1=" << r.outliers << '\n';
    out << "matrix,index,value\n";
    for (std::size_t i = 0; i < r.original.size(); ++i) out << "original," << i << ',' << fmt("%.12e", r.original[i]) << '\n';
    for (std::size_t i = 0; i < r.preconditioned.size(); ++i)
        out << "preconditioned," << i << ',' << fmt("%.12e", r.preconditioned[i]) << '\n';
}

void write_json(std::ostream& out, const SpectrumReport& r) {
    nlohmann::json j{{"config", r.config},
                     {"symmetric", r.symmetric},
                     {"N", r.N},
                     {"level", r.level},
                     {"gershgorin", {r.gershgorin_min, r.gershgorin_max}},
                     {"cond_original", r.condition_original},
                     {"cond_preconditioned", r.condition_preconditioned},
                     {"outliers", r.outliers},
                     {"original", r.original},
                     {"preconditioned", r.preconditioned}};
    out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const SoeCheckReport& r) {
    write_comments(out, r.config);
    out << "# n_exp=" << r.exponentials << " delta=" << fmt("%.6e", r.delta)
        << " max_error=" << fmt("%.3e", r.max_error) << '\n';
    out << "t,error\n";
    for (const auto& s : r.profile) out << fmt("%.10e", s.t) << ',' << fmt("%.3e", s.error) << '\n';
}

void write_json(std::ostream& out, const SoeCheckReport& r) {
    nlohmann::json j{{"config", r.config},
                     {"n_exp", r.exponentials},
                     {"delta", r.delta},
                     {"max_error", r.max_error},
                     {"profile", nlohmann::json::array()}};
    for (const auto& s : r.profile) j["profile"].push_back({{"t", s.t}, {"error", s.error}});
    out << j.dump(2) << '\n';
}

}  // namespace fracdiff::harness

#include "heatobs/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "heatobs/ensemble.hpp"
#include "heatobs/error.hpp"
#include "heatobs/estimates.hpp"
#include "heatobs/frequency.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/random.hpp"
#include "heatobs/semigroup.hpp"

namespace heatobs {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string label(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

SolverOptions solver_options(const ExperimentConfig& cfg) {
    SolverOptions opt;
    opt.blowup_threshold = cfg.blowup_threshold;
    return opt;
}

ObservationRegion region_of(const ExperimentConfig& cfg) {
    return build_region(cfg.grid, cfg.L, cfg.r, cfg.placement, cfg.region_seed);
}

std::vector<SolutionPair> ensemble(const ExperimentConfig& cfg, std::size_t count) {
    return solve_ensemble(cfg.grid, cfg.ensemble, cfg.f, cfg.T, cfg.dt, cfg.stride, solver_options(cfg), 0,
                          std::min(count, cfg.ensemble.count));
}

// Cube whose centre is nearest the origin, or the configured index.
std::size_t pick_cube(const ExperimentConfig& cfg, const std::string& suite, const ObservationRegion& region) {
    const double j = cfg.check_double(suite, "j", -1.0);
    if (j >= 0.0) {
        const auto k = static_cast<std::size_t>(j);
        require(k < region.count(), ErrorKind::IndexOutOfRange, "cube index out of range");
        return k;
    }
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t k = 0; k < region.count(); ++k) {
        const double d = region.spec.distance_sq(region.centers[k], Point{0.0, 0.0, 0.0});
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

double l2sq(const Field& f) {
    const double v = lp_norm(f, 2.0);
    return v * v;
}

void tag_member(std::vector<EstimateReport>& reports, std::size_t from, std::size_t member) {
    for (std::size_t i = from; i < reports.size(); ++i) reports[i].meta["member"] = member;
}

EstimateReport holdout_report(const std::string& kind, const HoldoutResult& h) {
    EstimateReport r;
    r.kind = kind;
    r.lhs = static_cast<double>(h.test_failures);
    r.factor("beta", h.fit.beta).factor("C", h.fit.C).factor("inflate", h.inflate);
    r.factor("train", static_cast<double>(h.train)).factor("test", static_cast<double>(h.test));
    r.fitted = FittedConstants{h.fit.C, h.fit.beta};
    r.pass = h.test_failures == 0 && h.fit.beta > 0.0 && h.fit.beta < 1.0;
    r.meta["holdout"] = true;
    return r;
}

SuiteResult semigroup_suite(const ExperimentConfig& cfg) {
    LpLqSuiteOptions opt;
    opt.fields = cfg.check_size("semigroup", "fields", 100);
    opt.seed = cfg.ensemble.seed;
    opt.times = cfg.check_list("semigroup", "times", {0.1, 0.5, 1.0});
    opt.tol = cfg.check_double("semigroup", "tol", 1e-8) * cfg.tol_scale;
    SuiteResult out{"semigroup", lp_lq_suite(cfg.grid, opt), {}};
    std::ostringstream csv;
    csv << "field,t,p,q,lhs,rhs,pass\n";
    for (const auto& r : out.reports)
        csv << r.meta.value("field", 0) << ',' << r.meta.value("t", 0.0) << ',' << label(r.meta["p"]) << ','
            << label(r.meta["q"]) << ',' << num(r.lhs) << ',' << num(r.rhs("rhs")) << ',' << (r.pass ? 1 : 0) << '\n';
    out.tables.push_back({"semigroup", csv.str()});
    return out;
}

SuiteResult smoothing_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"smoothing", {}, {}};
    SmoothingOptions opt;
    opt.min_slope = cfg.check_double("smoothing", "min_slope", -0.05) * cfg.tol_scale;
    const double lo = cfg.check_double("smoothing", "window_lo", 0.0);
    const double hi = cfg.check_double("smoothing", "window_hi", 0.0);
    if (hi > lo && lo > 0.0) opt.exponent_window = std::make_pair(lo, hi);
    const double sigma = cfg.check_double("smoothing", "sigma", 1.0);
    const double width = cfg.check_double("smoothing", "width", 1e-4);
    // the first sample must resolve the spike's own time scale
    const double steps = std::ceil(cfg.T / std::min(cfg.dt, width) - 1e-9);
    const double dt = cfg.T / steps;
    for (double q : cfg.check_list("smoothing", "q", {1.0, 2.0})) {
        const Field y0 = init::spike(cfg.grid, q, width);
        const Trajectory traj = solve_semilinear(y0, cfg.f, cfg.T, dt, 1, solver_options(cfg));
        out.reports.push_back(smoothing_check(traj, q, opt));
        const Potential a = Potential::constant(
            init::smooth_bump(cfg.grid, Point{0.0, 0.0, 0.0}, cfg.grid.X / 8, cfg.grid.X / 4, 1.0));
        const Trajectory u = solve_linear_potential(y0, a, cfg.T, dt, 1, solver_options(cfg));
        out.reports.push_back(potential_smoothing_check(u, a, sigma, q, opt));
    }
    return out;
}

SuiteResult frequency_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"frequency", {}, {}};
    const ObservationRegion region = region_of(cfg);
    const std::size_t j = pick_cube(cfg, "frequency", region);
    const double h = cfg.check_double("frequency", "h", 0.05);
    const double frac = cfg.check_double("frequency", "window_fraction", 0.5);
    require(frac > 0.0 && frac <= 1.0, ErrorKind::ConfigInvalid, "check.frequency.window_fraction must be in (0, 1]");
    const double slack = cfg.check_double("frequency", "slack", 0.05) * cfg.tol_scale;
    const double itol = cfg.check_double("frequency", "identity_tol", 0.05) * cfg.tol_scale;
    const auto pairs = ensemble(cfg, cfg.check_size("frequency", "pairs", 10));
    const double t_lo = cfg.T * (1.0 - frac);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const FrequencyTrace trace = frequency_trace(pairs[i].phi, region, j, h, t_lo);
        out.tables.push_back({"frequency_trace_" + std::to_string(i), to_csv(trace)});
        const std::size_t from = out.reports.size();
        const double t_mid = trace.times[trace.size() / 2];
        if (trace.size() >= 3) out.reports.push_back(variational_identity_check(pairs[i].phi, region, j, h, t_mid, itol));
        out.reports.push_back(frequency_derivative_check(trace, pairs[i], region, slack));
        tag_member(out.reports, from, i);
    }
    return out;
}

FrequencyTrace read_samples(const std::string& path, double h, double T) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::ConfigInvalid, "cannot read samples file '" + path + "'");
    FrequencyTrace tr;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.') continue;
        }
        std::stringstream ss(line);
        std::string a, b;
        require(std::getline(ss, a, ',') && std::getline(ss, b, ','), ErrorKind::FormatError,
                "samples file rows must be t,g");
        tr.times.push_back(std::stod(a));
        tr.den.push_back(std::stod(b));
    }
    require(tr.times.size() >= 3, ErrorKind::InsufficientSamples, "need at least three samples");
    tr.N.assign(tr.times.size(), 0.0);
    tr.num.assign(tr.times.size(), 0.0);
    tr.h = h;
    tr.T = T > 0.0 ? T : tr.times.back();
    return tr;
}

SuiteResult convexity_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"convexity", {}, {}};
    const auto& c = cfg.convexity;
    if (!c.samples_file.empty()) {
        const FrequencyTrace tr = read_samples(c.samples_file, c.h, c.T);
        out.reports.push_back(log_convexity_sweep(tr, ConvexityParams{tr.T, c.h, c.Ctilde, c.Cbar}));
        return out;
    }
    const ObservationRegion region = region_of(cfg);
    const std::size_t j = pick_cube(cfg, "frequency", region);
    const double inflate = cfg.check_double("convexity", "inflate", 1.1);
    const auto pairs = ensemble(cfg, cfg.check_size("convexity", "pairs", 5));
    std::ostringstream csv;
    csv << "member,T,h,Ctilde,Cbar,worst_log_gap,pass\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const FrequencyTrace tr = frequency_trace(pairs[i].phi, region, j, c.h, 0.0);
        const ConvexityParams p = estimate_convexity_params(tr, inflate);
        out.reports.push_back(log_convexity_sweep(tr, p));
        out.reports.back().meta["member"] = i;
        csv << i << ',' << num(p.T) << ',' << num(p.h) << ',' << num(p.Ctilde) << ',' << num(p.Cbar) << ','
            << num(out.reports.back().lhs) << ',' << (out.reports.back().pass ? 1 : 0) << '\n';
    }
    out.tables.push_back({"convexity", csv.str()});
    return out;
}

SuiteResult interpolation_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"interpolation", {}, {}};
    const ObservationRegion region = region_of(cfg);
    const std::size_t j = pick_cube(cfg, "interpolation", region);
    const double tol = cfg.check_double("interpolation", "tol", 1e-8) * cfg.tol_scale;
    const auto pairs = ensemble(cfg, cfg.ensemble.count);

    std::vector<EstimateReport> global;
    std::vector<Triple> triples;
    std::ostringstream csv;
    csv << "member,phi0_l2sq,phiT_l2sq,omega_mass,M,L_M\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        global.push_back(global_interpolation_check(pairs[i], region, tol));
        global.back().meta["member"] = i;
        triples.push_back(interpolation_triple(global.back()));
        csv << i << ',' << num(triples.back().a) << ',' << num(triples.back().lhs) << ',' << num(triples.back().b)
            << ',' << num(pairs[i].M) << ',' << num(pairs[i].L_M) << '\n';
    }
    const FitResult fit = fit_beta_C(triples);
    apply_fit(global, fit);
    out.reports = std::move(global);
    out.reports.push_back(holdout_report(
        "eq_1_3", holdout_fit(triples, cfg.check_double("interpolation", "holdout", 0.2),
                              cfg.check_double("interpolation", "inflate", 1.5))));

    std::vector<EstimateReport> local;
    std::vector<Triple> local_triples;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out.reports.push_back(local_energy_check(pairs[i], region, j));
        out.reports.back().meta["member"] = i;
        local.push_back(local_interpolation_check(pairs[i], region, j, fit.beta));
        local.back().meta["member"] = i;
        if (local.back().lhs > 0.0) local_triples.push_back(interpolation_triple(local.back()));
    }
    if (local_triples.size() >= 3) apply_fit(local, fit_beta_C(local_triples));
    for (auto& r : local) out.reports.push_back(std::move(r));
    out.tables.push_back({"interpolation", csv.str()});
    return out;
}

SuiteResult observation_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"observation", {}, {}};
    const ObservationRegion region = region_of(cfg);
    const double slack = cfg.check_double("observation", "slack", 0.05) * cfg.tol_scale;
    const auto pairs = ensemble(cfg, cfg.ensemble.count);
    std::ostringstream csv;
    csv << "member,chi0,C_req,phi0_l2sq,omega_mass,L_M\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::size_t from = out.reports.size();
        out.reports.push_back(observation_estimate_check(pairs[i], region));
        const auto& obs = out.reports.back();
        csv << i << ',' << num(obs.rhs("chi0")) << ',' << num(obs.rhs("C_req")) << ','
            << num(l2sq(pairs[i].phi.fields.front())) << ',' << num(obs.rhs("b")) << ',' << num(pairs[i].L_M)
            << '\n';
        out.reports.push_back(chi_growth_check(pairs[i], slack));
        out.reports.push_back(backward_bound_check(pairs[i], slack));
        tag_member(out.reports, from, i);
    }
    out.tables.push_back({"observation", csv.str()});
    return out;
}

SuiteResult stability_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"stability", {}, {}};
    require_subcritical_exponent(cfg.f, cfg.grid.n);
    const ObservationRegion region = region_of(cfg);
    const double d = cfg.check_double("stability", "delta", 0.0);
    const std::optional<double> delta = d > 0.0 ? std::optional<double>(d) : std::nullopt;
    const auto pairs = ensemble(cfg, cfg.ensemble.count);
    std::vector<Triple> triples;
    std::ostringstream csv;
    csv << "member,phiT_l2sq,omega_mass,phidelta_l2sq,a_bound\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out.reports.push_back(conditional_stability_check(pairs[i], region, delta));
        const auto& r = out.reports.back();
        out.reports.back().meta["member"] = i;
        triples.push_back(stability_triple(r));
        csv << i << ',' << num(r.lhs) << ',' << num(r.rhs("b")) << ',' << num(r.rhs("a_delta")) << ','
            << num(r.rhs("a_bound")) << '\n';
    }
    apply_fit(out.reports, fit_beta_C(triples));
    out.reports.push_back(holdout_report("eq_1_5", holdout_fit(triples, cfg.check_double("stability", "holdout", 0.2),
                                                               cfg.check_double("stability", "inflate", 1.5))));
    out.tables.push_back({"stability", csv.str()});
    return out;
}

SuiteResult probe_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"probe_uc", {}, {}};
    const ObservationRegion region = region_of(cfg);
    const auto eps = cfg.check_list("probe_uc", "eps", {1e-1, 1e-2, 1e-3, 1e-4, 1e-5});
    const InitialPair base = ensemble_member(cfg.grid, cfg.ensemble, 0);
    const ProbeResult probe = unique_continuation_probe(base.y1, eps, cfg.f, region, cfg.T, cfg.dt, cfg.stride);
    EstimateReport r;
    r.kind = "unique_continuation";
    r.lhs = probe.rank_correlation;
    r.factor("ratio_spread", probe.ratio_spread).factor("bump_radius", probe.bump_radius);
    const bool linear = cfg.f.kind == NonlinearityKind::zero;
    r.pass = probe.rank_correlation >= 1.0 - 1e-12 && (!linear || probe.ratio_spread <= 1e-10 * cfg.tol_scale);
    r.meta["linear"] = linear;
    r.meta["eps"] = eps;
    out.reports.push_back(std::move(r));
    out.tables.push_back({"probe_uc", to_csv(probe)});
    return out;
}

SuiteResult gronwall_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"gronwall", {}, {}};
    const auto& g = cfg.gronwall;
    struct Case {
        double A, B, alpha, g0;
    };
    std::vector<Case> cases{{g.A, g.B, g.alpha, g.g0}};
    Rng rng(g.seed);
    for (std::size_t i = 0; i < g.sweep; ++i) {
        Case c{};
        c.A = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
        c.B = rng.uniform(0.0, 3.0);
        c.alpha = rng.uniform(0.2, 3.0);
        c.g0 = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
        cases.push_back(c);
    }
    out.reports.resize(cases.size());
    const auto nc = static_cast<std::ptrdiff_t>(cases.size());
    std::vector<std::exception_ptr> errors(cases.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nc; ++i) {
        const auto& c = cases[static_cast<std::size_t>(i)];
        try {
            out.reports[static_cast<std::size_t>(i)] = gronwall_superlinear_check(c.A, c.B, c.alpha, c.g0, g.T, g.samples);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::ostringstream csv;
    csv << "case,A,B,alpha,g0,T,g_T,bound_T,max_ratio,pass\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& r = out.reports[i];
        csv << i << ',' << num(cases[i].A) << ',' << num(cases[i].B) << ',' << num(cases[i].alpha) << ','
            << num(cases[i].g0) << ',' << num(g.T) << ',' << num(r.rhs("g_T")) << ',' << num(r.rhs("bound_T")) << ','
            << num(r.rhs("max_ratio")) << ',' << (r.pass ? 1 : 0) << '\n';
    }
    out.tables.push_back({"gronwall", csv.str()});
    return out;
}

SuiteResult solve_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"solve", {}, {}};
    const InitialPair init = ensemble_member(cfg.grid, cfg.ensemble, 0);
    const Trajectory traj = solve_semilinear(init.y1, cfg.f, cfg.T, cfg.dt, cfg.stride, solver_options(cfg));
    write_trajectory(traj, (fs::path(cfg.output.dir) / "trajectory").string());
    out.reports.push_back(smoothing_check(traj, 2.0));
    std::ostringstream csv;
    csv << "t,l2,linf,boundary_mass_fraction\n";
    for (std::size_t k = 0; k < traj.size(); ++k)
        csv << num(traj.times[k]) << ',' << num(lp_norm(traj.fields[k], 2.0)) << ','
            << num(lp_norm(traj.fields[k], INFINITY)) << ',' << num(boundary_mass_fraction(traj.fields[k])) << '\n';
    out.tables.push_back({"solve", csv.str()});
    return out;
}

SuiteResult pair_suite(const ExperimentConfig& cfg) {
    SuiteResult out{"pair", {}, {}};
    const ObservationRegion region = region_of(cfg);
    const auto pairs = ensemble(cfg, 1);
    const SolutionPair& p = pairs.front();
    const fs::path dir = fs::path(cfg.output.dir) / "pair";
    write_trajectory(p.y1, (dir / "y1").string());
    write_trajectory(p.y2, (dir / "y2").string());
    write_trajectory(p.phi, (dir / "phi").string());
    write_region(region, (dir / "region").string());
    out.reports.push_back(global_interpolation_check(p, region));
    out.reports.back().meta["M"] = p.M;
    out.reports.back().meta["L_M"] = p.L_M;
    std::ostringstream csv;
    csv << "t,phi_l2sq,omega_mass\n";
    for (std::size_t k = 0; k < p.phi.size(); ++k)
        csv << num(p.phi.times[k]) << ',' << num(l2sq(p.phi.fields[k])) << ','
            << num(masked_l2(p.phi.fields[k], region.mask)) << '\n';
    out.tables.push_back({"pair", csv.str()});
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::FormatError, "cannot write '" + path.string() + "'");
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

bool SuiteResult::pass() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
    return static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [](const EstimateReport& r) { return !r.pass; }));
}

bool is_suite(const std::string& name) {
    const auto& names = suite_names();
    return name == "solve" || name == "pair" || std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "semigroup") return semigroup_suite(cfg);
    if (name == "smoothing") return smoothing_suite(cfg);
    if (name == "frequency") return frequency_suite(cfg);
    if (name == "convexity") return convexity_suite(cfg);
    if (name == "interpolation") return interpolation_suite(cfg);
    if (name == "observation") return observation_suite(cfg);
    if (name == "stability") return stability_suite(cfg);
    if (name == "probe_uc") return probe_suite(cfg);
    if (name == "gronwall") return gronwall_suite(cfg);
    if (name == "solve") return solve_suite(cfg);
    if (name == "pair") return pair_suite(cfg);
    fail(ErrorKind::ConfigInvalid, "unknown suite '" + name + "'");
}

int execute(const ExperimentConfig& cfg, const std::vector<std::string>& suites, std::ostream& log) {
    validate(cfg);
    for (const auto& s : suites) require(is_suite(s), ErrorKind::ConfigInvalid, "unknown suite '" + s + "'");
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

    const fs::path dir(cfg.output.dir);
    fs::create_directories(dir);
    const bool want_json = std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "json") !=
                           cfg.output.formats.end();
    const bool want_csv = std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "csv") !=
                          cfg.output.formats.end();

    ExperimentConfig hashed = cfg;
    hashed.output.dir.clear();
    std::string inputs = resolved_text(hashed);
    if (!cfg.convexity.samples_file.empty()) inputs += read_file(cfg.convexity.samples_file);
    std::ostringstream manifest;
    manifest << "inputs_sha256=" << sha256_hex(inputs) << "\nsuites=";
    for (std::size_t i = 0; i < suites.size(); ++i) manifest << (i ? "," : "") << suites[i];
    manifest << "\n\n" << resolved_text(cfg);
    write_file(dir / "manifest.txt", manifest.str());

    bool all_pass = true;
    for (const auto& name : suites) {
        const SuiteResult res = run_suite(name, cfg);
        if (want_json) {
            Json arr = Json::array();
            for (const auto& r : res.reports) arr.push_back(to_json(r));
            write_file(dir / (name + ".json"), arr.dump(2) + "\n");
        }
        if (want_csv)
            for (const auto& t : res.tables) write_file(dir / (t.name + ".csv"), t.text);
        log << (res.pass() ? "PASS " : "FAIL ") << name << ": " << res.reports.size() - res.failures() << '/'
            << res.reports.size() << " checks pass\n";
        all_pass = all_pass && res.pass();
    }
    return all_pass ? kExitPass : kExitCheckFailed;
}

int merge_reports(const std::string& dir, std::ostream& log) {
    std::vector<fs::path> files;
    if (fs::is_directory(dir))
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename() != "summary.json")
                files.push_back(e.path());
    std::sort(files.begin(), files.end());

    Json rows = Json::array();
    std::ostringstream csv;
    csv << "file,index,kind,lhs,pass,fitted_C,fitted_beta\n";
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_kind;
    for (const auto& path : files) {
        Json arr;
        try {
            arr = Json::parse(read_file(path));
        } catch (const Json::exception& e) {
            fail(ErrorKind::FormatError, path.string() + ": " + e.what());
        }
        if (!arr.is_array()) continue;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const EstimateReport r = report_from_json(arr[i]);
            const std::string file = path.filename().string();
            csv << file << ',' << i << ',' << r.kind << ',' << num(r.lhs) << ',' << (r.pass ? 1 : 0) << ','
                << (r.fitted ? num(r.fitted->C) : "") << ',' << (r.fitted ? num(r.fitted->beta) : "") << '\n';
            Json row = Json::object();
            row["file"] = file;
            row["index"] = i;
            row["kind"] = r.kind;
            row["lhs"] = number_or_string(r.lhs);
            row["pass"] = r.pass;
            rows.push_back(std::move(row));
            auto& k = per_kind[r.kind];
            ++k.second;
            if (r.pass) ++k.first;
        }
    }
    require(!rows.empty(), ErrorKind::NoReports, "no report files in '" + dir + "'");
    write_file(fs::path(dir) / "summary.csv", csv.str());
    write_file(fs::path(dir) / "summary.json", rows.dump(2) + "\n");
    bool all_pass = true;
    for (const auto& [kind, c] : per_kind) {
        log << std::left << std::setw(22) << kind << c.first << '/' << c.second << " pass\n";
        all_pass = all_pass && c.first == c.second;
    }
    return all_pass ? kExitPass : kExitCheckFailed;
}

}  // namespace heatobs

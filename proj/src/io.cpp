#include "bridgeflow/io.hpp"

#include <cmath>
#include <set>
#include <string>

#include "bridgeflow/errors.hpp"
#include "bridgeflow/simulate.hpp"

namespace bridgeflow::io {

using nlohmann::json;

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::finite_bridge: return "finite_bridge";
        case Kind::stationary: return "stationary";
        case Kind::cool_fast: return "cool_fast";
        case Kind::cool_asymptotic: return "cool_asymptotic";
        case Kind::check: return "check";
        case Kind::simulate: return "simulate";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
    throw ValidationError(ptr + ": " + msg);
}

void expect_object(const json& j, const std::string& ptr) {
    if (!j.is_object()) fail(ptr, "expected an object");
}

// Strict parsing: any field outside `allowed` is rejected.
void expect_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(ptr + "/" + item.key(), "unknown field");
    }
}

const json& require(const json& j, const std::string& ptr, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(ptr, std::string("missing required field \"") + key + "\"");
    return *it;
}

double get_number(const json& j, const std::string& ptr) {
    if (!j.is_number()) fail(ptr, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "must be finite");
    return v;
}

std::size_t get_count(const json& j, const std::string& ptr) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(ptr, "expected a nonnegative integer");
    return static_cast<std::size_t>(j.get<long long>());
}

bool get_bool(const json& j, const std::string& ptr) {
    if (!j.is_boolean()) fail(ptr, "expected a boolean");
    return j.get<bool>();
}

Vector parse_vector(const json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty()) fail(ptr, "expected a non-empty array of numbers");
    Vector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(get_number(j[i], ptr + "/" + std::to_string(i)));
    return v;
}

Distribution parse_probability(const json& j, const std::string& ptr) {
    Vector v = parse_vector(j, ptr);
    try {
        return Distribution::probability(std::move(v));
    } catch (const ValidationError& e) {
        fail(ptr, e.what());
    }
}

struct ParsedGraphMatrix {
    Graph graph;
    Matrix matrix;      // weights when given, adjacency otherwise
    bool has_weights = false;
};

// {"n": 3, "edges": [[i,j],...], "weights": [[i,j,value],...]}
// At least one of "edges"/"weights" must be present unless allow_empty is set.
ParsedGraphMatrix parse_graph_matrix(const json& j, const std::string& ptr,
                                     bool allow_empty = false) {
    expect_object(j, ptr);
    expect_keys(j, ptr, {"n", "edges", "weights"});
    const std::size_t n = get_count(require(j, ptr, "n"), ptr + "/n");
    if (n == 0) fail(ptr + "/n", "must be at least 1");

    const bool has_edges = j.contains("edges");
    const bool has_weights = j.contains("weights");
    if (!has_edges && !has_weights && !allow_empty)
        fail(ptr, "provide \"edges\" or \"weights\"");

    std::vector<Graph::Edge> edges;
    if (has_edges) {
        const json& je = j["edges"];
        if (!je.is_array()) fail(ptr + "/edges", "expected an array of [i,j] pairs");
        for (std::size_t k = 0; k < je.size(); ++k) {
            const std::string eptr = ptr + "/edges/" + std::to_string(k);
            const json& e = je[k];
            if (!e.is_array() || e.size() != 2) fail(eptr, "expected a pair [i,j]");
            std::size_t a = get_count(e[0], eptr + "/0");
            std::size_t b = get_count(e[1], eptr + "/1");
            if (a >= n || b >= n) fail(eptr, "vertex out of range");
            edges.emplace_back(a, b);
        }
    }

    Matrix m(n, n, 0.0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    if (has_weights) {
        const json& jw = j["weights"];
        if (!jw.is_array()) fail(ptr + "/weights", "expected an array of [i,j,value] triples");
        for (std::size_t k = 0; k < jw.size(); ++k) {
            const std::string wptr = ptr + "/weights/" + std::to_string(k);
            const json& w = jw[k];
            if (!w.is_array() || w.size() != 3) fail(wptr, "expected a triple [i,j,value]");
            std::size_t a = get_count(w[0], wptr + "/0");
            std::size_t b = get_count(w[1], wptr + "/1");
            if (a >= n || b >= n) fail(wptr, "vertex out of range");
            double value = get_number(w[2], wptr);
            if (value < 0.0) fail(wptr, "weight must be nonnegative");
            if (!seen.emplace(a, b).second) fail(wptr, "duplicate weight entry");
            m(a, b) = value;
            if (!has_edges) edges.emplace_back(a, b);
        }
    }

    Graph g(n, std::move(edges));
    if (has_weights && has_edges) {
        for (const auto& [a, b] : seen)
            if (!g.has_edge(a, b))
                fail(ptr + "/weights",
                     "weight on (" + std::to_string(a) + "," + std::to_string(b) +
                         ") which is not an edge");
    }
    if (!has_weights) m = adjacency(g);
    return {std::move(g), std::move(m), has_weights};
}

SolverOptions parse_options(const json& root) {
    SolverOptions o;
    if (!root.contains("options")) return o;
    const json& j = root["options"];
    expect_object(j, "/options");
    expect_keys(j, "/options", {"tol", "max_iters", "seed", "strict", "trace"});
    if (j.contains("tol")) {
        o.tol = get_number(j["tol"], "/options/tol");
        if (o.tol <= 0.0) fail("/options/tol", "must be positive");
    }
    if (j.contains("max_iters")) o.max_iters = get_count(j["max_iters"], "/options/max_iters");
    if (j.contains("seed")) o.seed = static_cast<std::uint64_t>(get_count(j["seed"], "/options/seed"));
    if (j.contains("strict")) o.strict = get_bool(j["strict"], "/options/strict");
    if (j.contains("trace")) o.trace = get_bool(j["trace"], "/options/trace");
    return o;
}

FiniteBridgePayload parse_finite_bridge(const json& j) {
    expect_keys(j, "", {"kind", "prior", "priors", "horizon", "nu0", "nuN", "mu0", "options"});
    std::vector<Matrix> kernels;
    if (j.contains("prior") == j.contains("priors"))
        fail("", "provide exactly one of \"prior\" or \"priors\"");
    if (j.contains("prior")) {
        const std::size_t horizon = get_count(require(j, "", "horizon"), "/horizon");
        if (horizon == 0) fail("/horizon", "must be at least 1");
        ParsedGraphMatrix pg = parse_graph_matrix(j["prior"], "/prior");
        kernels.assign(horizon, pg.matrix);
    } else {
        const json& jp = j["priors"];
        if (!jp.is_array() || jp.empty()) fail("/priors", "expected a non-empty array");
        for (std::size_t t = 0; t < jp.size(); ++t)
            kernels.push_back(parse_graph_matrix(jp[t], "/priors/" + std::to_string(t)).matrix);
        if (j.contains("horizon") && get_count(j["horizon"], "/horizon") != kernels.size())
            fail("/horizon", "does not match the number of priors");
    }
    Distribution nu0 = parse_probability(require(j, "", "nu0"), "/nu0");
    Distribution nuN = parse_probability(require(j, "", "nuN"), "/nuN");
    std::optional<Distribution> mu0;
    if (j.contains("mu0")) mu0 = parse_probability(j["mu0"], "/mu0");
    return {std::move(kernels), std::move(nu0), std::move(nuN), std::move(mu0)};
}

StationaryPayload parse_stationary(const json& j) {
    expect_keys(j, "", {"kind", "prior", "target", "options"});
    ParsedGraphMatrix pg = parse_graph_matrix(require(j, "", "prior"), "/prior");
    Distribution target = parse_probability(require(j, "", "target"), "/target");
    return {std::move(pg.matrix), std::move(target)};
}

std::pair<EnergyModel, CoolingPlan> parse_energy_plan(const json& j, bool need_horizon) {
    Vector energies = parse_vector(require(j, "", "energies"), "/energies");
    double kT = get_number(require(j, "", "kT"), "/kT");
    double kT_eff = get_number(require(j, "", "kT_eff"), "/kT_eff");
    if (kT <= 0.0) fail("/kT", "must be positive");
    if (kT_eff <= 0.0) fail("/kT_eff", "must be positive");

    CoolingPlan plan;
    plan.kT_eff = kT_eff;
    const json& jp = require(j, "", "proposal");
    if (jp.is_string()) {
        if (jp.get<std::string>() != "uniform")
            fail("/proposal", "expected \"uniform\" or a matrix object");
        plan.proposal = uniform_proposal(energies.size());
    } else {
        plan.proposal = parse_graph_matrix(jp, "/proposal").matrix;
    }
    if (need_horizon) {
        plan.horizon = get_count(require(j, "", "horizon"), "/horizon");
        if (plan.horizon == 0) fail("/horizon", "must be at least 1");
    }
    EnergyModel model(std::move(energies), kT);
    return {std::move(model), std::move(plan)};
}

CoolFastPayload parse_cool_fast(const json& j) {
    expect_keys(j, "",
                {"kind", "energies", "kT", "kT_eff", "proposal", "horizon", "nu0", "options"});
    auto [model, plan] = parse_energy_plan(j, true);
    std::optional<Distribution> nu0;
    if (j.contains("nu0")) nu0 = parse_probability(j["nu0"], "/nu0");
    return {std::move(model), std::move(plan), std::move(nu0)};
}

CoolAsymptoticPayload parse_cool_asymptotic(const json& j) {
    expect_keys(j, "", {"kind", "energies", "kT", "kT_eff", "proposal", "options"});
    auto [model, plan] = parse_energy_plan(j, false);
    return {std::move(model), std::move(plan)};
}

CheckPayload parse_check(const json& j) {
    expect_keys(j, "", {"kind", "graph", "horizon", "options"});
    ParsedGraphMatrix pg = parse_graph_matrix(require(j, "", "graph"), "/graph", true);
    std::optional<Matrix> weights;
    if (pg.has_weights) weights = pg.matrix;
    std::optional<std::size_t> horizon;
    if (j.contains("horizon")) {
        horizon = get_count(j["horizon"], "/horizon");
        if (*horizon == 0) fail("/horizon", "must be at least 1");
    }
    return {std::move(pg.graph), std::move(weights), horizon};
}

SimulatePayload parse_simulate(const json& j) {
    expect_keys(j, "",
                {"kind", "mode", "initial", "kernel", "kernels", "horizon", "stat", "count",
                 "options"});
    SimulatePayload p;
    const json& jm = require(j, "", "mode");
    if (!jm.is_string()) fail("/mode", "expected a string");
    const std::string mode = jm.get<std::string>();
    p.count = get_count(require(j, "", "count"), "/count");
    if (p.count == 0) fail("/count", "must be positive");

    if (mode == "paths") {
        p.mode = SimulatePayload::Mode::paths;
        Distribution initial = parse_probability(require(j, "", "initial"), "/initial");
        std::vector<Matrix> kernels;
        if (j.contains("kernel") == j.contains("kernels"))
            fail("", "provide exactly one of \"kernel\" or \"kernels\"");
        if (j.contains("kernel")) {
            std::size_t horizon = 1;
            if (j.contains("horizon")) {
                horizon = get_count(j["horizon"], "/horizon");
                if (horizon == 0) fail("/horizon", "must be at least 1");
            }
            kernels.assign(horizon, parse_graph_matrix(j["kernel"], "/kernel").matrix);
        } else {
            const json& jk = j["kernels"];
            if (!jk.is_array() || jk.empty()) fail("/kernels", "expected a non-empty array");
            for (std::size_t t = 0; t < jk.size(); ++t)
                kernels.push_back(parse_graph_matrix(jk[t], "/kernels/" + std::to_string(t)).matrix);
        }
        p.measure.emplace(std::move(initial), std::move(kernels));
    } else if (mode == "flux") {
        p.mode = SimulatePayload::Mode::flux;
        p.kernel = parse_graph_matrix(require(j, "", "kernel"), "/kernel").matrix;
        p.stat = parse_probability(require(j, "", "stat"), "/stat");
    } else {
        fail("/mode", "expected \"paths\" or \"flux\"");
    }
    return p;
}

json vec_to_json(const Vector& v) { return json(v); }

json dist_to_json(const Distribution& d) { return json(d.weights()); }

json mat_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json feasibility_to_json(const FeasibilityReport& report) {
    json zeros = json::array();
    for (const auto& [i, j] : report.zero_entries) zeros.push_back(json::array({i, j}));
    return {{"all_positive", report.all_positive}, {"zero_entries", std::move(zeros)}};
}

json stationary_to_json(const StationarySolution& sol) {
    return {{"kernel", mat_to_json(sol.kernel)},
            {"objective", sol.objective},
            {"invariance_residual", sol.invariance_residual},
            {"reversible", sol.reversible},
            {"reversibility_residual", sol.reversibility_residual},
            {"prior_fully_indecomposable", sol.prior_fully_indecomposable},
            {"iterations", sol.iterations},
            {"residual", sol.residual},
            {"potentials",
             {{"phi0", vec_to_json(sol.potentials.phi0)},
              {"phi1", vec_to_json(sol.potentials.phi1)},
              {"phihat0", vec_to_json(sol.potentials.phihat0)},
              {"phihat1", vec_to_json(sol.potentials.phihat1)}}}};
}

json bridge_to_json(const BridgeSolution& sol, bool with_trace) {
    json policy = json::array();
    for (const Matrix& pi : sol.policy) policy.push_back(mat_to_json(pi));
    json flow = json::array();
    for (const Distribution& p : sol.flow) flow.push_back(dist_to_json(p));
    json doc = {{"converged", true},
                {"iterations", sol.iterations},
                {"residual", sol.residual},
                {"objective", sol.objective},
                {"policy", std::move(policy)},
                {"flow", std::move(flow)}};
    if (with_trace) {
        json trace = json::array();
        for (const auto& [it, res] : sol.trace) trace.push_back(json::array({it, res}));
        doc["trace"] = std::move(trace);
    }
    return doc;
}

json run_finite_bridge(const FiniteBridgePayload& p, const SolverOptions& o) {
    BridgeProblem prob(p.kernels, p.nu0, p.nuN, p.mu0);
    FeasibilityReport feas = check_feasibility(prob);
    auto [pair, sol] = solve(prob, {o.tol, o.max_iters, o.trace});
    json doc = bridge_to_json(sol, o.trace);
    doc["feasibility"] = feasibility_to_json(feas);
    if (p.mu0) {
        double d0 = relative_entropy(p.nu0, *p.mu0);
        doc["path_divergence"] = sol.objective + d0;
    }
    return doc;
}

json run_stationary(const StationaryPayload& p, const SolverOptions& o,
                    std::vector<std::string>& diagnostics) {
    StationaryProblem prob(p.prior, p.target);
    StationarySolution sol = solve_stationary(prob, {o.tol, o.max_iters, o.strict});
    if (!sol.prior_fully_indecomposable)
        diagnostics.push_back(
            "WARNING: prior is not fully indecomposable; existence is not certified");
    return stationary_to_json(sol);
}

json run_cool_fast(const CoolFastPayload& p, const SolverOptions& o) {
    const Matrix prior = metropolis(p.model, p.plan.proposal);
    const Distribution pi_prior = boltzmann(p.model);
    const Distribution pi_eff = boltzmann(EnergyModel(p.model.energies, p.plan.kT_eff));
    const Distribution nu0 = p.nu0 ? *p.nu0 : pi_prior;
    FeasibilityReport feas =
        check_feasibility(std::vector<Matrix>(p.plan.horizon, prior));
    BridgeSolution sol = fast_cool(p.model, p.plan, nu0, {o.tol, o.max_iters, o.trace});
    json doc = bridge_to_json(sol, o.trace);
    doc["kT"] = p.model.kT;
    doc["kT_eff"] = p.plan.kT_eff;
    doc["pi_prior"] = dist_to_json(pi_prior);
    doc["pi_eff"] = dist_to_json(pi_eff);
    doc["prior_kernel"] = mat_to_json(prior);
    doc["feasibility"] = feasibility_to_json(feas);
    return doc;
}

json run_cool_asymptotic(const CoolAsymptoticPayload& p, const SolverOptions& o) {
    StationarySolution sol = asymptotic_cool(p.model, p.plan, {o.tol, o.max_iters, o.strict});
    json doc = stationary_to_json(sol);
    doc["kT"] = p.model.kT;
    doc["kT_eff"] = p.plan.kT_eff;
    doc["pi_eff"] = dist_to_json(boltzmann(EnergyModel(p.model.energies, p.plan.kT_eff)));
    return doc;
}

json run_check(const CheckPayload& p) {
    const Graph& g = p.graph;
    const Matrix m = p.weights ? *p.weights : adjacency(g);
    const bool sc = is_strongly_connected(g);
    json doc = {{"n", g.vertex_count()},
                {"strongly_connected", sc},
                {"aperiodic", sc ? json(is_aperiodic(g)) : json(nullptr)},
                {"indecomposable", is_indecomposable(m)},
                {"fully_indecomposable", is_fully_indecomposable(m)},
                {"has_weights", p.weights.has_value()}};
    if (p.horizon) {
        FeasibilityReport feas = check_feasibility(std::vector<Matrix>(*p.horizon, m));
        doc["horizon"] = *p.horizon;
        doc["feasibility"] = feasibility_to_json(feas);
    }
    return doc;
}

json run_simulate(const SimulatePayload& p, const SolverOptions& o) {
    if (p.mode == SimulatePayload::Mode::paths) {
        SampleReport report = sample_paths(*p.measure, p.count, o.seed);
        json marginals = json::array();
        for (const Distribution& d : report.empirical_marginals)
            marginals.push_back(dist_to_json(d));
        json counts = json::array();
        for (const auto& c : report.counts) counts.push_back(json(c));
        return {{"mode", "paths"},
                {"num_paths", report.num_paths},
                {"seed", report.seed},
                {"generator", report.generator},
                {"empirical_marginals", std::move(marginals)},
                {"l1_errors", json(report.l1_errors)},
                {"counts", std::move(counts)}};
    }
    Matrix flux = empirical_flux(*p.kernel, *p.stat, p.count, o.seed);
    double asym = 0.0;
    for (std::size_t i = 0; i < flux.rows(); ++i)
        for (std::size_t j = i + 1; j < flux.cols(); ++j)
            asym = std::max(asym, std::abs(flux(i, j) - flux(j, i)));
    return {{"mode", "flux"},
            {"count", p.count},
            {"seed", o.seed},
            {"generator", "splitmix64"},
            {"flux", mat_to_json(flux)},
            {"max_flux_asymmetry", asym}};
}

}  // namespace

ProblemSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    expect_object(j, "");
    const json& jk = require(j, "", "kind");
    if (!jk.is_string()) fail("/kind", "expected a string");
    const std::string kind = jk.get<std::string>();

    SolverOptions options = parse_options(j);
    if (kind == "finite_bridge")
        return {Kind::finite_bridge, parse_finite_bridge(j), options};
    if (kind == "stationary") return {Kind::stationary, parse_stationary(j), options};
    if (kind == "cool_fast") return {Kind::cool_fast, parse_cool_fast(j), options};
    if (kind == "cool_asymptotic")
        return {Kind::cool_asymptotic, parse_cool_asymptotic(j), options};
    if (kind == "check") return {Kind::check, parse_check(j), options};
    if (kind == "simulate") return {Kind::simulate, parse_simulate(j), options};
    fail("/kind", "unknown kind \"" + kind + "\"");
}

RunResult run(const ProblemSpec& spec) {
    RunResult result;
    json doc;
    try {
        switch (spec.kind) {
            case Kind::finite_bridge:
                doc = run_finite_bridge(std::get<FiniteBridgePayload>(spec.payload), spec.options);
                break;
            case Kind::stationary:
                doc = run_stationary(std::get<StationaryPayload>(spec.payload), spec.options,
                                     result.diagnostics);
                break;
            case Kind::cool_fast:
                doc = run_cool_fast(std::get<CoolFastPayload>(spec.payload), spec.options);
                break;
            case Kind::cool_asymptotic:
                doc = run_cool_asymptotic(std::get<CoolAsymptoticPayload>(spec.payload),
                                          spec.options);
                break;
            case Kind::check:
                doc = run_check(std::get<CheckPayload>(spec.payload));
                break;
            case Kind::simulate:
                doc = run_simulate(std::get<SimulatePayload>(spec.payload), spec.options);
                break;
        }
        result.exit_code = kExitOk;
    } catch (const NonConvergence& e) {
        result.exit_code = kExitNonConvergence;
        doc["converged"] = false;
        doc["iterations"] = e.iterations;
        doc["residual"] = e.residual;
        doc["error"] = {{"type", "non_convergence"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    } catch (const InfeasibleSupport& e) {
        result.exit_code = kExitInfeasible;
        doc["error"] = {{"type", "infeasible_support"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    } catch (const NotFullyIndecomposable& e) {
        result.exit_code = kExitInfeasible;
        doc["error"] = {{"type", "not_fully_indecomposable"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    } catch (const ZeroRow& e) {
        result.exit_code = kExitInfeasible;
        doc["error"] = {{"type", "zero_row"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    } catch (const ZeroPotential& e) {
        result.exit_code = kExitInfeasible;
        doc["error"] = {{"type", "zero_potential"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    } catch (const ValidationError& e) {
        result.exit_code = kExitValidation;
        doc["error"] = {{"type", "validation"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    } catch (const Error& e) {
        result.exit_code = kExitValidation;
        doc["error"] = {{"type", "error"}, {"message", e.what()}};
        result.diagnostics.push_back(std::string("ERROR: ") + e.what());
    }
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = to_string(spec.kind);
    result.document = std::move(doc);
    return result;
}

}  // namespace bridgeflow::io

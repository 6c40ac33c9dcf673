#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "bridgeflow/errors.hpp"
#include "bridgeflow/io.hpp"

using namespace bridgeflow;
using nlohmann::json;

namespace {

const char* kStationaryDoc = R"({
  "kind": "stationary",
  "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
  "target": [0.75, 0.25]
})";

std::string message_of(const std::string& text) {
    try {
        io::parse_spec(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal stationary spec parses and solves") {
    io::ProblemSpec spec = io::parse_spec(kStationaryDoc);
    CHECK(spec.kind == io::Kind::stationary);

    io::RunResult result = io::run(spec);
    CHECK(result.exit_code == io::kExitOk);
    CHECK(result.document["schema_version"] == 1);
    CHECK(std::abs(result.document["kernel"][0][0].get<double>() - 0.75) < 1e-10);
    CHECK(std::abs(result.document["kernel"][1][0].get<double>() - 0.75) < 1e-10);
}

TEST_CASE("malformed JSON is a parse error") {
    CHECK_THROWS_AS(io::parse_spec("{ not json"), ParseError);
    CHECK_THROWS_AS(io::parse_spec("[1,2,3]"), ValidationError);
}

TEST_CASE("unknown fields are rejected with their location") {
    const char* doc = R"({
      "kind": "stationary",
      "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
      "target": [0.75, 0.25],
      "temperature": 3
    })";
    const std::string msg = message_of(doc);
    CHECK(msg.find("/temperature") != std::string::npos);
    CHECK(msg.find("unknown field") != std::string::npos);
}

TEST_CASE("negative weight names the offending entry") {
    const char* doc = R"({
      "kind": "stationary",
      "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,-0.2]]},
      "target": [0.75, 0.25]
    })";
    const std::string msg = message_of(doc);
    CHECK(msg.find("weights/3") != std::string::npos);
    CHECK(msg.find("nonnegative") != std::string::npos);
}

TEST_CASE("non-probability target is rejected") {
    const char* doc = R"({
      "kind": "stationary",
      "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
      "target": [0.75, 0.15]
    })";
    const std::string msg = message_of(doc);
    CHECK(msg.find("not a probability vector") != std::string::npos);
}

TEST_CASE("finite bridge spec with a replicated prior") {
    const char* doc = R"({
      "kind": "finite_bridge",
      "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
      "horizon": 1,
      "nu0": [0.5, 0.5],
      "nuN": [0.75, 0.25]
    })";
    io::RunResult result = io::run(io::parse_spec(doc));
    CHECK(result.exit_code == io::kExitOk);
    CHECK(result.document["converged"] == true);
    CHECK(std::abs(result.document["objective"].get<double>() - 0.13081203594113698) < 1e-12);
    CHECK(result.document["feasibility"]["all_positive"] == true);
}

TEST_CASE("infeasible support maps to exit 3") {
    const char* doc = R"({
      "kind": "finite_bridge",
      "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,1,1.0]]},
      "horizon": 1,
      "nu0": [0.0, 1.0],
      "nuN": [1.0, 0.0]
    })";
    io::RunResult result = io::run(io::parse_spec(doc));
    CHECK(result.exit_code == io::kExitInfeasible);
    CHECK(result.document["error"]["type"] == "infeasible_support");
    REQUIRE(!result.diagnostics.empty());
    CHECK(result.diagnostics.front().rfind("ERROR:", 0) == 0);
}

TEST_CASE("iteration cap maps to exit 2 with the residual in the output") {
    const char* doc = R"({
      "kind": "stationary",
      "prior": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
      "target": [0.75, 0.25],
      "options": {"max_iters": 1}
    })";
    io::RunResult result = io::run(io::parse_spec(doc));
    CHECK(result.exit_code == io::kExitNonConvergence);
    CHECK(result.document["converged"] == false);
    CHECK(result.document["residual"].get<double>() > 0.0);
    CHECK(result.document["iterations"] == 1);
}

TEST_CASE("strict gate rejects a decomposable prior with exit 3") {
    const char* doc = R"({
      "kind": "stationary",
      "prior": {"n": 2, "weights": [[0,0,1.0],[1,1,1.0]]},
      "target": [0.6, 0.4],
      "options": {"strict": true}
    })";
    io::RunResult result = io::run(io::parse_spec(doc));
    CHECK(result.exit_code == io::kExitInfeasible);
    CHECK(result.document["error"]["type"] == "not_fully_indecomposable");
}

TEST_CASE("check document") {
    const char* doc = R"({
      "kind": "check",
      "graph": {"n": 2, "edges": [[0,1],[1,0]]},
      "horizon": 2
    })";
    io::RunResult result = io::run(io::parse_spec(doc));
    CHECK(result.exit_code == io::kExitOk);
    CHECK(result.document["strongly_connected"] == true);
    CHECK(result.document["aperiodic"] == false);
    CHECK(result.document["indecomposable"] == true);
    CHECK(result.document["fully_indecomposable"] == false);
    CHECK(result.document["feasibility"]["all_positive"] == false);  // swap^2 = identity
}

TEST_CASE("cooling specs run end to end") {
    const char* fast = R"({
      "kind": "cool_fast",
      "energies": [0.0, 1.0],
      "kT": 1.0,
      "kT_eff": 0.5,
      "proposal": "uniform",
      "horizon": 8,
      "options": {"tol": 1e-12}
    })";
    io::RunResult rf = io::run(io::parse_spec(fast));
    CHECK(rf.exit_code == io::kExitOk);
    const auto final_marginal = rf.document["flow"].back();
    CHECK(std::abs(final_marginal[0].get<double>() - 0.880797) < 1e-6);

    const char* asym = R"({
      "kind": "cool_asymptotic",
      "energies": [0.0, 1.0],
      "kT": 1.0,
      "kT_eff": 0.5,
      "proposal": "uniform"
    })";
    io::RunResult ra = io::run(io::parse_spec(asym));
    CHECK(ra.exit_code == io::kExitOk);
    CHECK(ra.document["reversible"] == true);
    CHECK(std::abs(ra.document["pi_eff"][0].get<double>() - 0.880797) < 1e-6);
}

TEST_CASE("simulate spec determinism and round trip") {
    const char* doc = R"({
      "kind": "simulate",
      "mode": "paths",
      "initial": [1.0, 0.0],
      "kernel": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
      "horizon": 3,
      "count": 10000,
      "options": {"seed": 99}
    })";
    io::RunResult a = io::run(io::parse_spec(doc));
    io::RunResult b = io::run(io::parse_spec(doc));
    CHECK(a.exit_code == io::kExitOk);
    CHECK(a.document.dump() == b.document.dump());  // byte-identical

    // numbers survive the serialize/parse round trip exactly
    json reparsed = json::parse(a.document.dump());
    CHECK(reparsed == a.document);

    const char* flux = R"({
      "kind": "simulate",
      "mode": "flux",
      "kernel": {"n": 2, "weights": [[0,0,0.5],[0,1,0.5],[1,0,0.5],[1,1,0.5]]},
      "stat": [0.5, 0.5],
      "count": 10000
    })";
    io::RunResult rfx = io::run(io::parse_spec(flux));
    CHECK(rfx.exit_code == io::kExitOk);
    CHECK(rfx.document["flux"].size() == 2);
}

TEST_CASE("result documents round trip through dump and parse") {
    io::RunResult result = io::run(io::parse_spec(kStationaryDoc));
    const std::string text = result.document.dump(2);
    CHECK(json::parse(text) == result.document);
}

TEST_CASE("edges and weights must agree") {
    const char* doc = R"({
      "kind": "stationary",
      "prior": {"n": 2, "edges": [[0,1],[1,0]], "weights": [[0,0,0.5]]},
      "target": [0.5, 0.5]
    })";
    const std::string msg = message_of(doc);
    CHECK(msg.find("not an edge") != std::string::npos);
}

TEST_CASE("weights alone define the graph support") {
    const char* doc = R"({
      "kind": "check",
      "graph": {"n": 2, "weights": [[0,1,0.5],[1,0,0.5]]}
    })";
    io::RunResult result = io::run(io::parse_spec(doc));
    CHECK(result.document["strongly_connected"] == true);
    CHECK(result.document["has_weights"] == true);
}

TEST_CASE("unknown kind is rejected") {
    CHECK_THROWS_AS(io::parse_spec(R"({"kind": "warp"})"), ValidationError);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bridgeflow/cooling.hpp"
#include "bridgeflow/entropy.hpp"
#include "bridgeflow/finite_bridge.hpp"
#include "bridgeflow/graph.hpp"
#include "bridgeflow/stationary_bridge.hpp"

namespace bridgeflow::io {

inline constexpr int kSchemaVersion = 1;

// Process exit codes shared by run() and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // parse/validation/I-O failures
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitInfeasible = 3;  // structural impossibility

enum class Kind {
    finite_bridge,
    stationary,
    cool_fast,
    cool_asymptotic,
    check,
    simulate,
};

std::string to_string(Kind kind);

struct SolverOptions {
    double tol = 1e-10;
    std::size_t max_iters = 100000;
    std::uint64_t seed = 0;
    bool strict = false;
    bool trace = false;
};

struct FiniteBridgePayload {
    std::vector<Matrix> kernels;
    Distribution nu0;
    Distribution nuN;
    std::optional<Distribution> mu0;
};

struct StationaryPayload {
    Matrix prior;
    Distribution target;
};

struct CoolFastPayload {
    EnergyModel model;
    CoolingPlan plan;
    std::optional<Distribution> nu0;
};

struct CoolAsymptoticPayload {
    EnergyModel model;
    CoolingPlan plan;
};

struct CheckPayload {
    Graph graph;
    std::optional<Matrix> weights;
    std::optional<std::size_t> horizon;
};

struct SimulatePayload {
    enum class Mode { paths, flux };
    Mode mode = Mode::paths;
    // paths mode
    std::optional<PathMeasure> measure;
    // flux mode
    std::optional<Matrix> kernel;
    std::optional<Distribution> stat;
    std::size_t count = 0;
};

struct ProblemSpec {
    Kind kind;
    std::variant<FiniteBridgePayload, StationaryPayload, CoolFastPayload, CoolAsymptoticPayload,
                 CheckPayload, SimulatePayload>
        payload;
    SolverOptions options;
};

// Parses and validates a UTF-8 JSON problem document. Unknown fields are
// rejected; diagnostics carry JSON-pointer locations. Throws ParseError on
// malformed JSON and ValidationError on schema violations.
ProblemSpec parse_spec(const std::string& text);

struct RunResult {
    int exit_code = kExitOk;
    nlohmann::json document;
    std::vector<std::string> diagnostics;  // "LEVEL: message" records
};

// Dispatches the spec to the matching solver and maps failures to exit codes.
// Result documents are deterministic for identical spec + seed.
RunResult run(const ProblemSpec& spec);

}  // namespace bridgeflow::io

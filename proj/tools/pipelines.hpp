#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopflat/error.hpp"

namespace hopflat::cli {

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"axioms",   "bicross",     "theorem32", "lemma33", "projectors",
                                                "spectrum", "groundspace", "tnstate",   "trace"};
    return names;
}

struct RunConfig {
    std::string command;
    std::string algebra = "z2-group";
    std::string graph = "minimal";
    std::optional<double> tolerance;
    int samples = 20;
    std::uint64_t seed = 7;
    std::int64_t dense_cap = 4096;
    std::string tn_spec;  ///< optional tensor-network label file for `trace`
};

struct RunResult {
    nlohmann::json report;   ///< deterministic for a fixed config
    nlohmann::json timings;  ///< wall-clock seconds per stage
    bool passed = false;
};

/// Runs one pipeline. Input problems surface as hopflat::Error or nlohmann::json exceptions.
RunResult run(const RunConfig& config);

/// Default residual ceiling of a command when no override is given.
double default_tolerance(const std::string& command);

/// Exit code 2 classification: errors caused by inputs rather than by failed checks.
bool is_input_error(ErrorKind kind);

}  // namespace hopflat::cli

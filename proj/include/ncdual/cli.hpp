#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncdual/io.hpp"
#include "ncdual/numeric.hpp"

namespace ncdual::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;

/// decompose, funcalc, invsub, algebra, duality-roundtrip, group, oml, verify
struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string out;
    std::optional<std::uint64_t> seed;
    Tolerance tol;
    /// Analytic function for funcalc, in AnalyticFunction::parse syntax.
    std::string function = "exp";
    /// verify only: restrict to one criterion.
    std::optional<int> criterion;
};

struct RunResult {
    int exit_code = kExitOk;
    io::Json report;
    /// One line per problem for exit code 2.
    std::vector<std::string> diagnostics;
};

/// Never throws for bad input; malformed data yields exit code 2.
RunResult run(const RunConfig& cfg);

/// Stable text form of a report (two-space indented JSON, trailing newline).
std::string render(const io::Json& report);

} // namespace ncdual::cli

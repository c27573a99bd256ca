#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "hadml/series.hpp"
#include "hadml/verify.hpp"

namespace hadml::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

/// Name of the environment variable overriding the default series tolerance.
inline constexpr const char* kToleranceEnv = "HADML_DEFAULT_TOL";

struct EvalArgs {
    std::string function;
    std::optional<double> alpha, nu, gamma, a, b, r;
    std::string points;
    SeriesOptions series;
};

struct DistArgs {
    std::string what;  ///< pmf, pgf, moments or sample
    std::string family;
    double lambda = 1.0;
    std::optional<double> t, nu, alpha, gamma, r;
    std::uint64_t kmax = 10;
    std::string points = "0:1:0.1";
    std::size_t count = 1;
    std::uint64_t seed = 0;
    SeriesOptions series;
};

struct VerifyArgs {
    std::optional<std::string> check;
    bool all = false;
    CheckParameters params;
    std::optional<std::string> grid;
    VerifyOptions options;
};

int run_eval(const EvalArgs& args, std::ostream& out);
int run_dist(const DistArgs& args, std::ostream& out);
int run_verify(const VerifyArgs& args, std::ostream& out);

/// Runs a command, mapping library exceptions to exit codes with a message on err.
int guarded(const std::function<int()>& command, std::ostream& err);

}  // namespace hadml::cli

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "hadml/error.hpp"
#include "table.hpp"

using namespace hadml::cli;

namespace {

double default_tolerance() {
    const char* env = std::getenv(kToleranceEnv);
    if (!env || !*env) return hadml::kDefaultSeriesTolerance;
    const auto v = parse_points(env);
    if (v.size() != 1 || !(v[0] > 0.0)) {
        throw hadml::DomainError(std::string(kToleranceEnv) + " must be a single positive number");
    }
    return v[0];
}

}  // namespace

int main(int argc, char** argv) {
    double tol = hadml::kDefaultSeriesTolerance;
    if (const int rc = guarded([&] { tol = default_tolerance(); return 0; }, std::cerr); rc != 0) return rc;

    CLI::App app{"Alpha-Mittag-Leffler functions, Hadamard operators and COM-Poisson-type count distributions"};
    app.require_subcommand(1);

    EvalArgs ev;
    ev.series.tolerance = tol;
    auto* eval = app.add_subcommand("eval", "Evaluate a special function on a range of arguments");
    eval->add_option("--function", ev.function, "Function to evaluate")
        ->required()
        ->check(CLI::IsMember({"alpha-ml", "ml", "le-roy", "wright", "gcom-normalizer"}));
    eval->add_option("--alpha", ev.alpha, "Power on Gamma (alpha-ml, le-roy)");
    eval->add_option("--nu", ev.nu, "Step inside Gamma (alpha-ml, ml) or nu (gcom-normalizer)");
    eval->add_option("--gamma", ev.gamma, "Shift inside Gamma (alpha-ml, ml)");
    eval->add_option("--a", ev.a, "Wright parameter a > -1");
    eval->add_option("--b", ev.b, "Wright parameter b");
    eval->add_option("--r", ev.r, "GCOM exponent r");
    eval->add_option("--points", ev.points, "start:stop:step, a number, or a comma list")->required();
    eval->add_option("--tol", ev.series.tolerance, "Relative series tolerance");
    eval->add_option("--max-terms", ev.series.max_terms, "Series term cap");

    DistArgs di;
    di.series.tolerance = tol;
    auto* dist = app.add_subcommand("dist", "Tabulate or sample a count distribution");
    dist->add_option("what", di.what, "pmf, pgf, moments or sample")
        ->required()
        ->check(CLI::IsMember({"pmf", "pgf", "moments", "sample"}));
    dist->add_option("--family", di.family, "poisson, com, fractional, fcom or gcom")
        ->required()
        ->check(CLI::IsMember({"poisson", "com", "com-poisson", "fractional", "fractional-poisson", "fcom",
                               "fractional-com-poisson", "gcom", "gcom-poisson"}));
    dist->add_option("--lambda", di.lambda, "Rate");
    dist->add_option("--t", di.t, "Time")->required();
    dist->add_option("--nu", di.nu, "Shape nu");
    dist->add_option("--alpha", di.alpha, "Shape alpha");
    dist->add_option("--gamma", di.gamma, "Shape gamma");
    dist->add_option("--r", di.r, "GCOM exponent r");
    dist->add_option("--kmax", di.kmax, "Largest k for pmf");
    dist->add_option("--points", di.points, "u values for pgf");
    dist->add_option("-n,--count", di.count, "Number of samples");
    dist->add_option("--seed", di.seed, "Sampling seed");
    dist->add_option("--tol", di.series.tolerance, "Relative series tolerance");

    VerifyArgs ve;
    ve.options.series.tolerance = tol;
    std::optional<double> n_override;
    auto* verify = app.add_subcommand("verify", "Check the identities numerically");
    auto* check_opt = verify->add_option("--check", ve.check, "Check id");
    auto* all_opt = verify->add_flag("--all", ve.all, "Run every check");
    check_opt->excludes(all_opt);
    verify->add_option("--alpha", ve.params.alpha);
    verify->add_option("--nu", ve.params.nu);
    verify->add_option("--lambda", ve.params.lambda);
    verify->add_option("--t", ve.params.t);
    verify->add_option("--r", ve.params.r);
    verify->add_option("--beta", ve.params.beta);
    verify->add_option("--n", n_override);
    verify->add_option("--grid", ve.grid, "Argument grid: start:stop:step or a comma list");
    verify->add_option("--tol", ve.options.grid_tolerance, "Tolerance of the grid comparison");
    verify->add_option("--termwise-tol", ve.options.termwise_tolerance, "Tolerance of the termwise comparison");
    verify->add_option("--series-tol", ve.options.series.tolerance, "Relative series tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*eval) return guarded([&] { return run_eval(ev, std::cout); }, std::cerr);
    if (*dist) return guarded([&] { return run_dist(di, std::cout); }, std::cerr);
    return guarded(
        [&] {
            if (!ve.check && !ve.all) throw hadml::DomainError("verify needs --check ID or --all");
            if (n_override) {
                if (std::floor(*n_override) != *n_override) throw hadml::DomainError("--n must be an integer");
                ve.params.n = static_cast<int>(*n_override);
            }
            return run_verify(ve, std::cout);
        },
        std::cerr);
}

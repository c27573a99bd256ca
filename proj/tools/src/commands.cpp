#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "hadml/count_dist.hpp"
#include "hadml/error.hpp"
#include "hadml/special.hpp"
#include "table.hpp"

namespace hadml::cli {

namespace {

double need(const std::optional<double>& v, const std::string& flag, const std::string& context) {
    if (!v) throw DomainError(context + " requires --" + flag);
    return *v;
}

void forbid(const std::optional<double>& v, const std::string& flag, const std::string& context) {
    if (v) throw DomainError(context + " does not take --" + flag);
}

}  // namespace

int run_eval(const EvalArgs& args, std::ostream& out) {
    const std::vector<double> points = parse_points(args.points);
    const std::string ctx = "eval --function " + args.function;
    const std::string& fn = args.function;

    std::function<SumResult(double)> eval;
    if (fn == "alpha-ml") {
        forbid(args.a, "a", ctx), forbid(args.b, "b", ctx), forbid(args.r, "r", ctx);
        const MLParams p{need(args.alpha, "alpha", ctx), need(args.nu, "nu", ctx), need(args.gamma, "gamma", ctx)};
        validate(p, args.series.max_terms);
        eval = [p, &args](double z) { return alpha_ml(p, z, args.series); };
    } else if (fn == "ml") {
        forbid(args.alpha, "alpha", ctx), forbid(args.a, "a", ctx), forbid(args.b, "b", ctx), forbid(args.r, "r", ctx);
        const double nu = need(args.nu, "nu", ctx);
        const double gamma = need(args.gamma, "gamma", ctx);
        validate(MLParams{1.0, nu, gamma}, args.series.max_terms);
        eval = [nu, gamma, &args](double z) { return mittag_leffler(nu, gamma, z, args.series); };
    } else if (fn == "le-roy") {
        forbid(args.nu, "nu", ctx), forbid(args.gamma, "gamma", ctx), forbid(args.a, "a", ctx);
        forbid(args.b, "b", ctx), forbid(args.r, "r", ctx);
        const double alpha = need(args.alpha, "alpha", ctx);
        validate(MLParams{alpha, 1.0, 2.0}, args.series.max_terms);
        eval = [alpha, &args](double z) { return le_roy(alpha, z, args.series); };
    } else if (fn == "wright") {
        forbid(args.alpha, "alpha", ctx), forbid(args.nu, "nu", ctx), forbid(args.gamma, "gamma", ctx);
        forbid(args.r, "r", ctx);
        const double a = need(args.a, "a", ctx);
        const double b = need(args.b, "b", ctx);
        eval = [a, b, &args](double t) { return wright(a, b, t, args.series); };
    } else if (fn == "gcom-normalizer") {
        forbid(args.alpha, "alpha", ctx), forbid(args.gamma, "gamma", ctx), forbid(args.a, "a", ctx);
        forbid(args.b, "b", ctx);
        const double r = need(args.r, "r", ctx);
        const double nu = need(args.nu, "nu", ctx);
        eval = [r, nu, &args](double t) { return gcom_normalizer({r, nu, t}, args.series); };
    } else {
        throw DomainError("unknown function '" + fn + "'");
    }

    OutputTable table({"t", "value", "terms_used"});
    for (double t : points) {
        const SumResult r = eval(t);
        if (!r.converged) {
            throw OverflowError("series did not converge within max_terms at t=" + format_number(t),
                                r.terms_used);
        }
        table.add_row({format_number(t), format_number(r.value), std::to_string(r.terms_used)});
    }
    table.write(out);
    return kOk;
}

namespace {

CountModel build_model(const DistArgs& a) {
    const std::string ctx = "family " + a.family;
    const double t = need(a.t, "t", "dist");
    const std::string& f = a.family;
    if (f == "poisson") {
        forbid(a.nu, "nu", ctx), forbid(a.alpha, "alpha", ctx), forbid(a.gamma, "gamma", ctx), forbid(a.r, "r", ctx);
        return CountModel::poisson(t, a.lambda);
    }
    if (f == "com" || f == "com-poisson") {
        forbid(a.alpha, "alpha", ctx), forbid(a.gamma, "gamma", ctx), forbid(a.r, "r", ctx);
        return CountModel::com_poisson(need(a.nu, "nu", ctx), t, a.lambda);
    }
    if (f == "fractional" || f == "fractional-poisson") {
        forbid(a.nu, "nu", ctx), forbid(a.gamma, "gamma", ctx), forbid(a.r, "r", ctx);
        return CountModel::fractional_poisson(need(a.alpha, "alpha", ctx), t, a.lambda);
    }
    if (f == "fcom" || f == "fractional-com-poisson") {
        forbid(a.r, "r", ctx);
        return CountModel::fractional_com_poisson(need(a.nu, "nu", ctx), need(a.alpha, "alpha", ctx),
                                                  need(a.gamma, "gamma", ctx), t, a.lambda);
    }
    if (f == "gcom" || f == "gcom-poisson") {
        forbid(a.alpha, "alpha", ctx), forbid(a.gamma, "gamma", ctx);
        return CountModel::gcom(need(a.r, "r", ctx), need(a.nu, "nu", ctx), t, a.lambda);
    }
    throw DomainError("unknown family '" + f + "'");
}

}  // namespace

int run_dist(const DistArgs& args, std::ostream& out) {
    const CountDistribution dist(build_model(args), args.series);
    if (args.what == "pmf") {
        OutputTable table({"k", "pmf", "log_pmf"});
        for (std::uint64_t k = 0; k <= args.kmax; ++k) {
            const double lp = dist.log_pmf(k);
            table.add_row({std::to_string(k), format_number(std::exp(lp)), format_number(lp)});
        }
        table.write(out);
    } else if (args.what == "pgf") {
        OutputTable table({"u", "pgf"});
        for (double u : parse_points(args.points)) table.add_row({format_number(u), format_number(dist.pgf(u))});
        table.write(out);
    } else if (args.what == "moments") {
        const MomentSummary m = dist.moments();
        OutputTable table({"mean", "variance", "dispersion"});
        table.add_row({format_number(m.mean), format_number(m.variance), format_number(m.dispersion_index)});
        table.write(out);
    } else if (args.what == "sample") {
        if (args.count < 1) throw DomainError("sample count must be >= 1");
        UniformStream stream(args.seed);
        OutputTable table({"sample"});
        for (auto k : dist.sample(args.count, stream)) table.add_row({std::to_string(k)});
        table.write(out);
    } else {
        throw DomainError("unknown dist command '" + args.what + "'");
    }
    return kOk;
}

int run_verify(const VerifyArgs& args, std::ostream& out) {
    CheckParameters params = args.params;
    if (args.grid) params.grid = parse_points(*args.grid);

    std::vector<CheckOutcome> outcomes;
    if (args.all) {
        const bool overridden = params.alpha || params.nu || params.lambda || params.t || params.r ||
                                params.beta || params.n || params.grid;
        if (overridden) throw DomainError("verify --all takes no parameter overrides");
        std::vector<std::future<CheckOutcome>> jobs;
        for (const auto& id : known_checks()) {
            jobs.push_back(std::async(std::launch::async,
                                      [id, &args] { return run_check(id, {}, args.options); }));
        }
        for (auto& j : jobs) outcomes.push_back(j.get());
    } else {
        outcomes.push_back(run_check(*args.check, params, args.options));
    }

    std::vector<const CheckReport*> reports;
    for (const auto& o : outcomes) {
        reports.push_back(&o.termwise);
        reports.push_back(&o.grid);
    }
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport* a, const CheckReport* b) { return a->check_id < b->check_id; });

    OutputTable table({"check_id", "max_abs_residual", "max_rel_residual", "tolerance", "passed"});
    bool all_passed = true;
    for (const CheckReport* r : reports) {
        all_passed = all_passed && r->passed;
        table.add_row({r->check_id, format_number(r->max_abs_residual), format_number(r->max_rel_residual),
                       format_number(r->tolerance), r->passed ? "true" : "false"});
    }
    table.write(out);
    return all_passed ? kOk : kCheckFailed;
}

int guarded(const std::function<int()>& command, std::ostream& err) {
    try {
        return command();
    } catch (const ParameterError& e) {
        err << "error: invalid model\n";
        for (const auto& v : e.violations()) err << "  violated: " << v << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const EvaluationError& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
}

}  // namespace hadml::cli

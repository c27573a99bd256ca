#include "hadml/verify.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "hadml/error.hpp"
#include "number_format.hpp"
#include "hadml/hadamard.hpp"
#include "hadml/special.hpp"

namespace hadml {

namespace {

using detail::number;

constexpr std::size_t kMinTermwiseTerms = 30;

class ResidualTracker {
public:
    ResidualTracker(std::string id, double tolerance) {
        report_.check_id = std::move(id);
        report_.tolerance = tolerance;
    }

    void add(double rel, double abs) {
        if (std::isnan(rel) || std::isnan(abs)) {
            rel = abs = std::numeric_limits<double>::infinity();
        }
        report_.max_rel_residual = std::max(report_.max_rel_residual, rel);
        report_.max_abs_residual = std::max(report_.max_abs_residual, abs);
    }

    void add_values(double lhs, double reference) {
        const double abs = std::fabs(lhs - reference);
        add(reference != 0.0 ? abs / std::fabs(reference) : abs, abs);
    }

    void add_terms(SignedLogTerm lhs, SignedLogTerm reference) {
        if (lhs.is_zero() && reference.is_zero()) {
            add(0.0, 0.0);
        } else if (reference.is_zero()) {
            const double a = std::exp(lhs.log_magnitude);
            add(a, a);
        } else if (lhs.is_zero()) {
            add(1.0, std::exp(reference.log_magnitude));
        } else {
            const double d = lhs.log_magnitude - reference.log_magnitude;
            const double rel = lhs.sign == reference.sign ? std::fabs(std::expm1(d)) : 1.0 + std::exp(d);
            add(rel, rel * std::exp(reference.log_magnitude));
        }
    }

    void record(ParameterRecord p) { report_.parameter_grid.push_back(std::move(p)); }
    void terms(std::size_t n) { report_.terms_used = std::max(report_.terms_used, n); }
    void note(std::string s) { report_.notes.push_back(std::move(s)); }

    CheckReport finish() {
        report_.passed = report_.max_rel_residual <= report_.tolerance;
        return std::move(report_);
    }

private:
    CheckReport report_;
};

/// Compares lhs and rhs coefficient by coefficient, pairing terms with equal exponents.
void compare_termwise(const PowerSeries& lhs, const PowerSeries& rhs, std::size_t count,
                      ResidualTracker& tracker) {
    if (std::fabs(lhs.step() - rhs.step()) > 1e-12 * rhs.step()) {
        throw DomainError("termwise comparison needs equal exponent steps");
    }
    const double shift = (lhs.offset() - rhs.offset()) / rhs.step();
    const double rounded = std::round(shift);
    if (std::fabs(shift - rounded) > 1e-9) {
        throw DomainError("termwise comparison needs exponent lattices that line up");
    }
    const auto d = static_cast<long long>(rounded);  // lhs index k <-> rhs index k + d
    for (std::size_t k = 0; k < count; ++k) {
        const long long j = static_cast<long long>(k) + d;
        const SignedLogTerm ref = j >= 0 ? rhs.coefficient(static_cast<std::size_t>(j)) : SignedLogTerm::zero();
        tracker.add_terms(lhs.coefficient(k), ref);
    }
    // rhs terms below the lhs lattice start must vanish.
    for (long long j = 0; j < d && j < static_cast<long long>(count); ++j) {
        tracker.add_terms(SignedLogTerm::zero(), rhs.coefficient(static_cast<std::size_t>(j)));
    }
}

std::size_t termwise_count(std::size_t grid_terms) { return std::max(grid_terms + 5, kMinTermwiseTerms); }

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

/// Shared engine of theorems 2 and 3.
CheckOutcome hyper_bessel_check(const std::string& id, double alpha, int n,
                                std::span<const double> t_grid, const VerifyOptions& opt) {
    require(alpha > 0.0 && std::isfinite(alpha), id + ": requires alpha > 0, got " + number(alpha));
    require(n >= 1, id + ": requires n >= 1");
    const double nd = static_cast<double>(n);
    const double step = alpha * nd;
    const double log_alpha = std::log(alpha);
    // E_{n a;1,1}(t^(a n) / a^n) as a series in t.
    const PowerSeries f(0.0, step, [=](std::size_t k) -> SignedLogTerm {
        const double kk = static_cast<double>(k);
        return {-kk * nd * log_alpha - step * log_gamma(kk + 1.0).log_magnitude, 1};
    });
    PowerSeries lhs = f;
    for (int i = 0; i < n; ++i) lhs = apply_caputo_hadamard(lhs, alpha);
    lhs = lhs.shifted(-step);
    const double log_eigen = (nd * alpha - nd) * log_alpha + nd * alpha * std::log(nd);
    const PowerSeries rhs = f.scaled(SignedLogTerm{log_eigen, 1});

    ResidualTracker grid(id + "/grid", opt.grid_tolerance);
    for (double t : t_grid) {
        require(t > 0.0, id + ": grid points must be > 0");
        const SumResult l = lhs.evaluate(t, opt.series);
        const SumResult e = alpha_ml({step, 1.0, 1.0}, std::pow(t, step) / std::pow(alpha, nd), opt.series);
        grid.add_values(l.value, std::exp(log_eigen) * e.value);
        grid.terms(std::max(l.terms_used, e.terms_used));
        grid.record({{"alpha", alpha}, {"n", nd}, {"t", t}});
    }
    CheckReport g = grid.finish();

    ResidualTracker term(id + "/termwise", opt.termwise_tolerance);
    const std::size_t count = termwise_count(g.terms_used);
    compare_termwise(lhs, rhs, count, term);
    term.terms(count);
    term.record({{"alpha", alpha}, {"n", nd}});
    return {term.finish(), std::move(g)};
}

/// Series of the GCOM normalizer ratio C(r, nu, x y) / C(r, nu, x) in y.
PowerSeries gcom_ratio_series(double r, double nu, double x, double log_norm) {
    const CoefficientRule base = gcom_coefficients(r, nu);
    const double log_x = std::log(x);
    return PowerSeries(0.0, 1.0, [=](std::size_t k) -> SignedLogTerm {
        const SignedLogTerm c = base(k);
        return {c.log_magnitude + static_cast<double>(k) * log_x - log_norm, 1};
    });
}

/// J^r (y^nu d/dy S) and scale * y^nu S for the GCOM series S.
std::pair<PowerSeries, PowerSeries> gcom_sides(const PowerSeries& s, double r, double nu,
                                               double scale) {
    PowerSeries lhs = differentiate(s).shifted(nu);
    if (r > 0.0) lhs = apply_hadamard_integral(lhs, r);
    return {lhs, s.shifted(nu).scaled(scale)};
}

}  // namespace

std::vector<double> default_grid() { return {0.1, 0.5, 1.0, 2.0}; }

std::vector<double> default_grid_within(double lo, double hi, bool closed_low) {
    std::vector<double> out;
    for (double x : default_grid()) {
        if ((closed_low ? x >= lo : x > lo) && x <= hi) out.push_back(x);
    }
    return out;
}

CheckOutcome check_theorem1(double nu, double lambda, double t, std::span<const double> u_grid,
                            const VerifyOptions& opt) {
    require(nu > 0.0 && nu < 1.0, "theorem1: requires nu in (0, 1), got " + number(nu));
    require(lambda > 0.0 && std::isfinite(lambda), "theorem1: requires lambda > 0");
    require(t >= 0.0 && std::isfinite(t), "theorem1: requires t >= 0");
    const double x = lambda * t;
    const MLParams params{nu, 1.0, nu};
    const double norm = alpha_ml(params, x, opt.series).value;
    const double log_norm = std::log(norm);
    const double log_x = x > 0.0 ? std::log(x) : 0.0;

    // g(u) = u^(nu-1) sum_k x^k u^k / Gamma(k+nu)^nu / E(x)
    const PowerSeries g(nu - 1.0, 1.0, [=](std::size_t k) -> SignedLogTerm {
        if (x == 0.0 && k > 0) return SignedLogTerm::zero();
        const double kk = static_cast<double>(k);
        return {kk * log_x - nu * log_gamma(kk + nu).log_magnitude - log_norm, 1};
    });
    const PowerSeries lhs = apply_caputo_hadamard(g.without_leading(1), nu);
    const PowerSeries rhs = x > 0.0 ? g.shifted(1.0).scaled(x) : g.shifted(1.0).scaled(0.0);

    ResidualTracker grid("theorem1/grid", opt.grid_tolerance);
    for (double u : u_grid) {
        require(u > 0.0 && u <= 1.0, "theorem1: u grid must lie in (0, 1]");
        const SumResult l = lhs.evaluate(u, opt.series);
        const SumResult e = alpha_ml(params, x * u, opt.series);
        grid.add_values(l.value, x * u * std::pow(u, nu - 1.0) * e.value / norm);
        grid.terms(std::max(l.terms_used, e.terms_used));
        grid.record({{"nu", nu}, {"lambda", lambda}, {"t", t}, {"u", u}});
    }
    CheckReport gr = grid.finish();

    ResidualTracker term("theorem1/termwise", opt.termwise_tolerance);
    const std::size_t count = termwise_count(gr.terms_used);
    compare_termwise(lhs, rhs, count, term);
    term.terms(count);
    term.record({{"nu", nu}, {"lambda", lambda}, {"t", t}});
    term.note("k = 0 inhomogeneous term excluded: Gamma(nu-1)^nu is not real for nu in (0,1)");
    return {term.finish(), std::move(gr)};
}

CheckOutcome check_proposition1(double r, double nu, double lambda, std::span<const double> t_grid,
                                const VerifyOptions& opt) {
    require(r >= 0.0 && r < 0.5, "proposition1: requires r in [0, 1/2), got " + number(r));
    require(nu > 0.0 && nu <= 1.0, "proposition1: requires nu in (0, 1], got " + number(nu));
    require(lambda > 0.0 && std::isfinite(lambda), "proposition1: requires lambda > 0");

    // C(r, nu, lambda t) in t: coefficients Gamma(nu+k)^r lambda^k / k!.
    const PowerSeries c = gcom_ratio_series(r, nu, lambda, 0.0);
    const auto [lhs, rhs] = gcom_sides(c, r, nu, lambda);

    ResidualTracker grid("proposition1/grid", opt.grid_tolerance);
    for (double t : t_grid) {
        require(t > 0.0, "proposition1: grid points must be > 0");
        const SumResult l = lhs.evaluate(t, opt.series);
        const SumResult n = gcom_normalizer({r, nu, lambda * t}, opt.series);
        grid.add_values(l.value, lambda * std::pow(t, nu) * n.value);
        grid.terms(std::max(l.terms_used, n.terms_used));
        grid.record({{"r", r}, {"nu", nu}, {"lambda", lambda}, {"t", t}});
    }
    CheckReport gr = grid.finish();

    ResidualTracker term("proposition1/termwise", opt.termwise_tolerance);
    const std::size_t count = termwise_count(gr.terms_used);
    compare_termwise(lhs, rhs, count, term);
    term.terms(count);
    term.record({{"r", r}, {"nu", nu}, {"lambda", lambda}});
    if (r == 0.0) term.note("r = 0: J^0 is the identity");
    return {term.finish(), std::move(gr)};
}

CheckOutcome check_corollary1(double r, double nu, double t, std::span<const double> u_grid,
                              const VerifyOptions& opt) {
    require(r >= 0.0, "corollary1: requires r >= 0 (Hadamard integral order), got " + number(r));
    validate(GcomNormalizerParams{r, nu, t});
    require(t > 0.0, "corollary1: requires t > 0");
    const double norm = gcom_normalizer({r, nu, t}, opt.series).value;
    const PowerSeries g = gcom_ratio_series(r, nu, t, std::log(norm));
    const auto [lhs, rhs] = gcom_sides(g, r, nu, t);

    ResidualTracker grid("corollary1/grid", opt.grid_tolerance);
    for (double u : u_grid) {
        require(u >= 0.0 && u <= 1.0, "corollary1: u grid must lie in [0, 1]");
        const SumResult l = lhs.evaluate(u, opt.series);
        const SumResult n = gcom_normalizer({r, nu, u * t}, opt.series);
        grid.add_values(l.value, t * std::pow(u, nu) * n.value / norm);
        grid.terms(std::max(l.terms_used, n.terms_used));
        grid.record({{"r", r}, {"nu", nu}, {"t", t}, {"u", u}});
    }
    CheckReport gr = grid.finish();

    ResidualTracker term("corollary1/termwise", opt.termwise_tolerance);
    const std::size_t count = termwise_count(gr.terms_used);
    compare_termwise(lhs, rhs, count, term);
    term.terms(count);
    term.record({{"r", r}, {"nu", nu}, {"t", t}});
    term.note("right-hand side carries the factor t of the pgf argument");
    return {term.finish(), std::move(gr)};
}

CheckOutcome check_theorem2(double alpha, std::span<const double> t_grid, const VerifyOptions& opt) {
    return hyper_bessel_check("theorem2", alpha, 1, t_grid, opt);
}

CheckOutcome check_theorem3(double alpha, int n, std::span<const double> t_grid,
                            const VerifyOptions& opt) {
    return hyper_bessel_check("theorem3", alpha, n, t_grid, opt);
}

CheckOutcome check_theorem4(double beta, int r, std::span<const double> t_grid,
                            const VerifyOptions& opt) {
    require(beta >= 1.0 && std::isfinite(beta), "theorem4: requires beta >= 1, got " + number(beta));
    const int max_r = static_cast<int>(std::floor(beta)) - 1;
    require(r >= 1 && r <= max_r, "theorem4: requires r in [1, floor(beta) - 1] = [1, " +
                                      std::to_string(max_r) + "], got r=" + std::to_string(r));
    const PowerSeries f(0.0, 1.0, [beta](std::size_t k) -> SignedLogTerm {
        return {-beta * log_gamma(static_cast<double>(k) + 1.0).log_magnitude, 1};
    });
    // d/dt t d/dt ... t d/dt with r derivatives, after (t d/dt)^(beta - r).
    PowerSeries lhs = apply_caputo_hadamard(f, beta - static_cast<double>(r));
    for (int i = 0; i < r; ++i) {
        if (i > 0) lhs = lhs.shifted(1.0);
        lhs = differentiate(lhs);
    }

    ResidualTracker grid("theorem4/grid", opt.grid_tolerance);
    for (double t : t_grid) {
        require(t > 0.0, "theorem4: grid points must be > 0");
        const SumResult l = lhs.evaluate(t, opt.series);
        const SumResult e = alpha_ml({beta, 1.0, 1.0}, t, opt.series);
        grid.add_values(l.value, e.value);
        grid.terms(std::max(l.terms_used, e.terms_used));
        grid.record({{"beta", beta}, {"r", static_cast<double>(r)}, {"t", t}});
    }
    CheckReport gr = grid.finish();

    ResidualTracker term("theorem4/termwise", opt.termwise_tolerance);
    const std::size_t count = termwise_count(gr.terms_used);
    compare_termwise(lhs, f, count, term);
    term.terms(count);
    term.record({{"beta", beta}, {"r", static_cast<double>(r)}});
    term.note("eigenvalue 1");
    return {term.finish(), std::move(gr)};
}

CheckOutcome check_pgf_caputo(double alpha, double t, std::span<const double> u_grid,
                              const VerifyOptions& opt) {
    require(alpha > 0.0 && alpha <= 1.0, "pgf_caputo: requires alpha in (0, 1], got " + number(alpha));
    require(t > 0.0 && std::isfinite(t), "pgf_caputo: requires t > 0");
    const double norm = mittag_leffler(alpha, 1.0, t, opt.series).value;
    const double log_norm = std::log(norm);
    const double log_t = std::log(t);
    // G(u^alpha, t) = sum_k t^k u^(alpha k) / Gamma(alpha k + 1) / E_alpha(t)
    const PowerSeries g(0.0, alpha, [=](std::size_t k) -> SignedLogTerm {
        const double kk = static_cast<double>(k);
        return {kk * log_t - log_gamma(alpha * kk + 1.0).log_magnitude - log_norm, 1};
    });
    const PowerSeries lhs =
        diagonal_transform(g, Multiplier::log_form([alpha](double e) {
            return caputo_power_classical_log(alpha, e);
        })).shifted(-alpha);
    const PowerSeries rhs = g.scaled(t);

    ResidualTracker grid("pgf_caputo/grid", opt.grid_tolerance);
    for (double u : u_grid) {
        require(u >= 0.0 && u <= 1.0, "pgf_caputo: u grid must lie in [0, 1]");
        const SumResult l = lhs.evaluate(u, opt.series);
        const SumResult e = mittag_leffler(alpha, 1.0, std::pow(u, alpha) * t, opt.series);
        grid.add_values(l.value, t * e.value / norm);
        grid.terms(std::max(l.terms_used, e.terms_used));
        grid.record({{"alpha", alpha}, {"t", t}, {"u", u}});
    }
    CheckReport gr = grid.finish();

    ResidualTracker term("pgf_caputo/termwise", opt.termwise_tolerance);
    const std::size_t count = termwise_count(gr.terms_used);
    compare_termwise(lhs, rhs, count, term);
    term.terms(count);
    term.record({{"alpha", alpha}, {"t", t}});
    return {term.finish(), std::move(gr)};
}

CheckOutcome check_left_inverse(std::span<const PowerSeries> series, std::span<const double> orders,
                                std::span<const double> t_grid, const VerifyOptions& opt) {
    ResidualTracker grid("left_inverse/grid", opt.grid_tolerance);
    ResidualTracker term("left_inverse/termwise", opt.termwise_tolerance);
    std::size_t max_count = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const PowerSeries& s = series[i];
        for (double a : orders) {
            const PowerSeries back = apply_caputo_hadamard(apply_hadamard_integral(s, a), a);
            std::size_t used = 0;
            for (double t : t_grid) {
                require(t > 0.0, "left_inverse: grid points must be > 0");
                const SumResult l = back.evaluate(t, opt.series);
                const SumResult r = s.evaluate(t, opt.series);
                grid.add_values(l.value, r.value);
                used = std::max({used, l.terms_used, r.terms_used});
                grid.record({{"series", static_cast<double>(i)}, {"alpha", a}, {"t", t}});
            }
            grid.terms(used);
            const std::size_t count = termwise_count(used);
            max_count = std::max(max_count, count);
            compare_termwise(back, s, count, term);
            term.record({{"series", static_cast<double>(i)}, {"alpha", a}});
        }
    }
    term.terms(max_count);

    // A constant term has no Hadamard integral on the series path.
    const PowerSeries with_constant(0.0, 1.0, [](std::size_t k) {
        return k <= 1 ? SignedLogTerm{0.0, 1} : SignedLogTerm::zero();
    });
    try {
        (void)apply_hadamard_integral(with_constant, orders.empty() ? 1.0 : orders.front());
        term.add(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
        term.note("series with a constant term was NOT rejected by the integral path");
    } catch (const DomainError&) {
        term.note("series with a constant term rejected by the integral path (expected)");
    }
    return {term.finish(), grid.finish()};
}

std::vector<PowerSeries> default_left_inverse_series() {
    std::vector<PowerSeries> out;
    out.push_back(PowerSeries::monomial(2.0));
    out.push_back(PowerSeries(0.0, 1.0, [](std::size_t k) -> SignedLogTerm {
        return {-2.0 * log_gamma(static_cast<double>(k) + 1.0).log_magnitude, 1};
    }).without_leading(1).truncated(30));
    out.push_back(PowerSeries(0.5, 1.0, [](std::size_t k) -> SignedLogTerm {
        return {-log_gamma(static_cast<double>(k) + 1.0).log_magnitude, 1};
    }));
    return out;
}

std::vector<double> default_left_inverse_orders() { return {0.3, 0.5, 1.2, 2.7}; }

std::vector<std::string> known_checks() {
    return {"corollary1", "left_inverse", "pgf_caputo", "proposition1",
            "theorem1",   "theorem2",     "theorem3",   "theorem4"};
}

namespace {

void reject_unused(const std::string& id, const CheckParameters& p, std::initializer_list<const char*> accepted) {
    auto allowed = [&](const char* name) {
        return std::find_if(accepted.begin(), accepted.end(),
                            [&](const char* a) { return std::string(a) == name; }) != accepted.end();
    };
    const std::pair<const char*, bool> present[] = {
        {"alpha", p.alpha.has_value()}, {"nu", p.nu.has_value()},     {"lambda", p.lambda.has_value()},
        {"t", p.t.has_value()},         {"r", p.r.has_value()},       {"beta", p.beta.has_value()},
        {"n", p.n.has_value()},
    };
    for (const auto& [name, set] : present) {
        if (set && !allowed(name)) throw DomainError(id + ": does not take parameter '" + name + "'");
    }
}

int integer_parameter(const std::string& id, const char* name, double v) {
    if (std::floor(v) != v || std::fabs(v) > 1e6) {
        throw DomainError(id + ": parameter '" + name + "' must be an integer, got " + number(v));
    }
    return static_cast<int>(v);
}

}  // namespace

CheckOutcome run_check(const std::string& id, const CheckParameters& p, const VerifyOptions& opt) {
    const std::vector<double> full = p.grid.value_or(default_grid());
    const std::vector<double> unit = p.grid.value_or(default_grid_within(0.0, 1.0));
    if (id == "theorem1") {
        reject_unused(id, p, {"nu", "lambda", "t"});
        return check_theorem1(p.nu.value_or(0.5), p.lambda.value_or(1.0), p.t.value_or(1.0), unit, opt);
    }
    if (id == "proposition1") {
        reject_unused(id, p, {"r", "nu", "lambda"});
        return check_proposition1(p.r.value_or(0.3), p.nu.value_or(1.0), p.lambda.value_or(1.0), full, opt);
    }
    if (id == "corollary1") {
        reject_unused(id, p, {"r", "nu", "t"});
        return check_corollary1(p.r.value_or(0.3), p.nu.value_or(1.0), p.t.value_or(1.0), unit, opt);
    }
    if (id == "theorem2") {
        reject_unused(id, p, {"alpha"});
        return check_theorem2(p.alpha.value_or(1.5), full, opt);
    }
    if (id == "theorem3") {
        reject_unused(id, p, {"alpha", "n"});
        return check_theorem3(p.alpha.value_or(1.5), p.n.value_or(2), full, opt);
    }
    if (id == "theorem4") {
        reject_unused(id, p, {"beta", "r"});
        const int r = p.r ? integer_parameter(id, "r", *p.r) : 2;
        return check_theorem4(p.beta.value_or(3.0), r, full, opt);
    }
    if (id == "pgf_caputo") {
        reject_unused(id, p, {"alpha", "t"});
        return check_pgf_caputo(p.alpha.value_or(0.5), p.t.value_or(1.0), unit, opt);
    }
    if (id == "left_inverse") {
        reject_unused(id, p, {"alpha"});
        const auto s = default_left_inverse_series();
        const auto a = p.alpha ? std::vector<double>{*p.alpha} : default_left_inverse_orders();
        return check_left_inverse(s, a, full, opt);
    }
    throw DomainError("unknown check id '" + id + "'");
}

}  // namespace hadml

#include "hadml/count_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hadml/error.hpp"
#include "number_format.hpp"
#include "hadml/special.hpp"

namespace hadml {

namespace {

using detail::number;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Neumaier {
    double sum = 0.0;
    double c = 0.0;
    void add(double y) {
        const double t = sum + y;
        c += std::fabs(sum) >= std::fabs(y) ? (sum - t) + y : (y - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

}  // namespace

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::poisson: return "poisson";
        case Family::com_poisson: return "com_poisson";
        case Family::fractional_poisson: return "fractional_poisson";
        case Family::fractional_com_poisson: return "fractional_com_poisson";
        case Family::gcom_poisson: return "gcom_poisson";
    }
    return "unknown";
}

Family CountModel::family() const noexcept {
    return static_cast<Family>(shape.index());
}

CountModel CountModel::poisson(double t, double rate) { return {rate, t, PoissonShape{}}; }

CountModel CountModel::com_poisson(double nu, double t, double rate) {
    return {rate, t, ComPoissonShape{nu}};
}

CountModel CountModel::fractional_poisson(double alpha, double t, double rate) {
    return {rate, t, FractionalPoissonShape{alpha}};
}

CountModel CountModel::fractional_com_poisson(double nu, double alpha, double gamma, double t,
                                              double rate) {
    return {rate, t, FractionalComPoissonShape{nu, alpha, gamma}};
}

CountModel CountModel::gcom(double r, double nu, double t, double rate) {
    return {rate, t, GcomShape{r, nu}};
}

std::vector<std::string> violations(const CountModel& m) {
    std::vector<std::string> out;
    if (!(m.rate > 0.0) || !std::isfinite(m.rate)) out.push_back("rate > 0 (got " + number(m.rate) + ")");
    if (!(m.time > 0.0) || !std::isfinite(m.time)) out.push_back("t > 0 (got " + number(m.time) + ")");
    const double x = m.argument();

    std::visit(
        Overloaded{
            [](const PoissonShape&) {},
            [&](const ComPoissonShape& s) {
                if (!(s.nu > 0.0) || !std::isfinite(s.nu)) out.push_back("nu > 0 (got " + number(s.nu) + ")");
            },
            [&](const FractionalPoissonShape& s) {
                if (!(s.alpha > 0.0 && s.alpha <= 1.0)) {
                    out.push_back("alpha in (0, 1] (got " + number(s.alpha) + ")");
                }
            },
            [&](const FractionalComPoissonShape& s) {
                const bool nu_ok = s.nu > 0.0 && std::isfinite(s.nu);
                const bool alpha_ok = s.alpha > 0.0 && std::isfinite(s.alpha);
                if (!nu_ok) out.push_back("nu > 0 (got " + number(s.nu) + ")");
                if (!alpha_ok) out.push_back("alpha > 0 (got " + number(s.alpha) + ")");
                if (!std::isfinite(s.gamma)) out.push_back("gamma finite");
                if (!alpha_ok || !std::isfinite(s.gamma)) return;
                for (std::size_t k = 0; k < kDefaultMaxTerms; ++k) {
                    const double y = s.alpha * static_cast<double>(k) + s.gamma;
                    if (y > 0.0) break;
                    const SignedLogTerm g = log_gamma(y);
                    if (g.sign <= 0) {
                        out.push_back("Gamma(alpha k + gamma) > 0 for all k (fails at k=" +
                                      std::to_string(k) + ", argument " + number(y) + ")");
                        break;
                    }
                }
            },
            [&](const GcomShape& s) {
                if (!(s.nu > 0.0) || !std::isfinite(s.nu)) out.push_back("nu > 0 (got " + number(s.nu) + ")");
                if (s.r == 1.0) {
                    if (!(x < 1.0)) {
                        out.push_back("rate*t < 1 when r = 1 (got " + number(x) + ")");
                    }
                } else if (!(s.r < 0.5)) {
                    out.push_back("r < 1/2 or r = 1 (got r=" + number(s.r) + ")");
                }
            },
        },
        m.shape);
    return out;
}

CountModel validate(const CountModel& model) {
    auto v = violations(model);
    if (!v.empty()) throw ParameterError(std::move(v));
    return model;
}

// ---------------------------------------------------------------------------

CountDistribution::CountDistribution(const CountModel& model, const SeriesOptions& options)
    : model_(validate(model)), options_(options) {
    coefficients_ = std::visit(
        Overloaded{
            [](const PoissonShape&) { return alpha_ml_coefficients({1.0, 1.0, 1.0}); },
            [](const ComPoissonShape& s) { return alpha_ml_coefficients({s.nu, 1.0, 1.0}); },
            [](const FractionalPoissonShape& s) { return alpha_ml_coefficients({1.0, s.alpha, 1.0}); },
            [](const FractionalComPoissonShape& s) {
                return alpha_ml_coefficients({s.nu, s.alpha, s.gamma});
            },
            [](const GcomShape& s) { return gcom_coefficients(s.r, s.nu); },
        },
        model_.shape);

    if (model_.family() == Family::poisson) {
        log_normalizer_ = model_.argument();
        return;
    }
    const double n = normalizer(model_.argument());
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw OverflowError("normalizer is not finite and positive", 0);
    }
    log_normalizer_ = std::log(n);
}

double CountDistribution::normalizer(double y) const {
    if (model_.family() == Family::poisson) return std::exp(y);
    const SumResult r =
        sum_signed_log_series(coefficients_, y, 0.0, 1.0, options_.tolerance, options_.max_terms);
    if (!r.converged) {
        throw OverflowError("normalizer series did not converge within max_terms", r.terms_used);
    }
    return r.value;
}

double CountDistribution::log_coefficient(std::uint64_t k) const {
    return coefficients_(static_cast<std::size_t>(k)).log_magnitude;
}

double CountDistribution::log_weight(std::uint64_t k) const {
    return log_coefficient(k) + static_cast<double>(k) * std::log(model_.argument());
}

double CountDistribution::log_pmf(std::uint64_t k) const { return log_weight(k) - log_normalizer_; }

double CountDistribution::pmf(std::uint64_t k) const { return std::exp(log_pmf(k)); }

double CountDistribution::pgf(double u) const {
    if (!(std::fabs(u) <= 1.0)) throw DomainError("pgf: requires |u| <= 1, got " + number(u));
    if (model_.family() == Family::poisson) return std::exp(model_.argument() * (u - 1.0));
    return normalizer(u * model_.argument()) / std::exp(log_normalizer_);
}

double CountDistribution::ratio_limit() const {
    if (const auto* g = std::get_if<GcomShape>(&model_.shape); g && g->r == 1.0) {
        return model_.argument();
    }
    return 0.0;
}

MomentSummary CountDistribution::moments() const {
    Neumaier m0, m1, m2;
    const double rho_inf = ratio_limit();
    double lp = log_pmf(0);
    for (std::uint64_t k = 0; k < kSupportCap; ++k) {
        const double p = std::exp(lp);
        const double kk = static_cast<double>(k);
        m0.add(p);
        m1.add(kk * p);
        m2.add(kk * kk * p);

        const double lp_next = log_pmf(k + 1);
        const double rho = std::max(std::exp(lp_next - lp), rho_inf);
        if (lp_next < lp && rho < 1.0) {
            const double tail_bound = std::exp(lp_next) / (1.0 - rho);
            if (tail_bound < kMomentTailMass) {
                MomentSummary s;
                s.mean = m1.value();
                s.variance = std::max(0.0, m2.value() - s.mean * s.mean);
                s.dispersion_index = s.variance / s.mean;
                s.truncation_k = static_cast<std::size_t>(k);
                return s;
            }
        }
        lp = lp_next;
    }
    throw TruncationError("moments: tail mass above 1e-14 after " + std::to_string(kSupportCap) +
                          " terms");
}

std::vector<std::uint64_t> CountDistribution::sample(std::size_t count, UniformStream& stream) const {
    std::vector<double> cdf;
    Neumaier acc;
    double last_lp = -std::numeric_limits<double>::infinity();
    auto extend = [&]() {
        if (cdf.size() >= kSupportCap) {
            throw TruncationError("sample: cdf did not reach 1 - 1e-12 within " +
                                  std::to_string(kSupportCap) + " support points");
        }
        last_lp = log_pmf(cdf.size());
        acc.add(std::exp(last_lp));
        cdf.push_back(acc.value());
    };
    while (cdf.empty() || cdf.back() < 1.0 - 1e-12) extend();

    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = stream.next();
        // Rare draws past the table extend it until covered or the remaining mass is negligible.
        while (cdf.back() < u && std::exp(last_lp) >= 1e-300 && cdf.back() < 1.0 - 1e-16) extend();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t k = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        out.push_back(static_cast<std::uint64_t>(k));
    }
    return out;
}

double log_pmf(const CountModel& model, std::uint64_t k) { return CountDistribution(model).log_pmf(k); }

double pgf(const CountModel& model, double u) { return CountDistribution(model).pgf(u); }

MomentSummary moments(const CountModel& model) { return CountDistribution(model).moments(); }

std::vector<std::uint64_t> sample(const CountModel& model, std::size_t count, UniformStream& stream) {
    return CountDistribution(model).sample(count, stream);
}

}  // namespace hadml

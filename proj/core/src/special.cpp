#include "hadml/special.hpp"

#include <cmath>

#include "hadml/error.hpp"
#include "number_format.hpp"

namespace hadml {

namespace {

using detail::number;

bool is_integer(double x) noexcept { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace

void validate(const MLParams& p, std::size_t max_terms) {
    if (!(p.gamma_power > 0.0) || !std::isfinite(p.gamma_power)) {
        throw DomainError("alpha-Mittag-Leffler: gamma power must be > 0, got " + number(p.gamma_power));
    }
    if (!(p.step > 0.0) || !std::isfinite(p.step)) {
        throw DomainError("alpha-Mittag-Leffler: step must be > 0, got " + number(p.step));
    }
    if (!std::isfinite(p.offset)) throw DomainError("alpha-Mittag-Leffler: offset must be finite");
    for (std::size_t k = 0; k < max_terms; ++k) {
        const double x = p.step * static_cast<double>(k) + p.offset;
        if (x > 0.0) break;
        const SignedLogTerm g = log_gamma(x);
        if (g.is_zero()) {
            throw DomainError("alpha-Mittag-Leffler: Gamma argument " + number(x) + " at k=" +
                              std::to_string(k) + " is a nonpositive integer");
        }
        if (g.sign < 0 && !is_integer(p.gamma_power)) {
            throw DomainError("alpha-Mittag-Leffler: Gamma(" + number(x) +
                              ") < 0 has no real power " + number(p.gamma_power));
        }
    }
}

CoefficientRule alpha_ml_coefficients(const MLParams& p) {
    const bool odd_power = is_integer(p.gamma_power) && std::fmod(p.gamma_power, 2.0) == 1.0;
    return [p, odd_power](std::size_t k) -> SignedLogTerm {
        const SignedLogTerm g = log_gamma(p.step * static_cast<double>(k) + p.offset);
        return {-p.gamma_power * g.log_magnitude, (g.sign < 0 && odd_power) ? -1 : 1};
    };
}

SumResult alpha_ml(const MLParams& params, double z, const SeriesOptions& options) {
    validate(params, options.max_terms);
    return sum_signed_log_series(alpha_ml_coefficients(params), z, 0.0, 1.0, options.tolerance,
                                 options.max_terms);
}

void validate(const GcomNormalizerParams& p) {
    if (!(p.nu > 0.0) || !std::isfinite(p.nu)) {
        throw DomainError("gcom normalizer: requires nu > 0, got nu=" + number(p.nu));
    }
    if (!std::isfinite(p.r)) throw DomainError("gcom normalizer: r must be finite");
    if (!(p.t >= 0.0) || !std::isfinite(p.t)) {
        throw DomainError("gcom normalizer: requires t >= 0, got t=" + number(p.t));
    }
    if (p.r == 1.0) {
        if (!(p.t < 1.0)) {
            throw DomainError("gcom normalizer: r = 1 requires t < 1, got t=" + number(p.t));
        }
        return;
    }
    if (!(p.r < 0.5)) {
        throw DomainError("gcom normalizer: requires r < 1/2 (or r = 1 with t < 1), got r=" +
                          number(p.r));
    }
}

CoefficientRule gcom_coefficients(double r, double nu) {
    return [r, nu](std::size_t k) -> SignedLogTerm {
        const double kk = static_cast<double>(k);
        const double lg = r == 0.0 ? 0.0 : r * log_gamma(nu + kk).log_magnitude;
        return {lg - log_gamma(kk + 1.0).log_magnitude, 1};
    };
}

SumResult gcom_normalizer(const GcomNormalizerParams& params, const SeriesOptions& options) {
    validate(params);
    return sum_signed_log_series(gcom_coefficients(params.r, params.nu), params.t, 0.0, 1.0,
                                 options.tolerance, options.max_terms);
}

SumResult wright(double a, double b, double t, const SeriesOptions& options) {
    if (!(a > -1.0) || !std::isfinite(a)) {
        throw DomainError("wright: requires a > -1, got a=" + number(a));
    }
    if (!std::isfinite(b)) throw DomainError("wright: b must be finite");
    auto coeff = [a, b](std::size_t k) -> SignedLogTerm {
        const double kk = static_cast<double>(k);
        const SignedLogTerm g = log_gamma(a * kk + b);
        if (g.is_zero()) return SignedLogTerm::zero();  // 1/Gamma vanishes at poles
        return {-log_gamma(kk + 1.0).log_magnitude - g.log_magnitude, g.sign};
    };
    return sum_signed_log_series(coeff, t, 0.0, 1.0, options.tolerance, options.max_terms);
}

}  // namespace hadml

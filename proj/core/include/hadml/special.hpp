#pragma once

#include "hadml/series.hpp"

namespace hadml {

/// Parameters of E_{a; v, g}(z) = sum_k z^k / Gamma(v k + g)^a.
struct MLParams {
    double gamma_power = 1.0;  ///< a > 0, exponent applied to Gamma
    double step = 1.0;         ///< v > 0, multiplier of k inside Gamma
    double offset = 1.0;       ///< g, shift inside Gamma
};

/// Throws DomainError unless a > 0, v > 0 and Gamma(v k + g)^a is a finite
/// nonzero real for every k < max_terms. A negative Gamma value is only
/// accepted when a is an integer.
void validate(const MLParams& params, std::size_t max_terms = kDefaultMaxTerms);

/// Coefficient rule k -> 1 / Gamma(v k + g)^a of the alpha-Mittag-Leffler series.
CoefficientRule alpha_ml_coefficients(const MLParams& params);

SumResult alpha_ml(const MLParams& params, double z, const SeriesOptions& options = {});

/// Two-parameter Mittag-Leffler E_{v,g}(z).
inline SumResult mittag_leffler(double step, double offset, double z,
                                const SeriesOptions& options = {}) {
    return alpha_ml({1.0, step, offset}, z, options);
}

/// Le Roy function sum_k z^k / ((k+1)!)^a.
inline SumResult le_roy(double gamma_power, double z, const SeriesOptions& options = {}) {
    return alpha_ml({gamma_power, 1.0, 2.0}, z, options);
}

/// Parameters of C(r, v, t) = sum_k Gamma(v+k)^r t^k / k!.
struct GcomNormalizerParams {
    double r = 0.0;
    double nu = 1.0;
    double t = 0.0;
};

/// Accepted domain: (r < 1/2, v > 0, t >= 0) or (r = 1, v > 0, 0 <= t < 1).
void validate(const GcomNormalizerParams& params);

CoefficientRule gcom_coefficients(double r, double nu);

SumResult gcom_normalizer(const GcomNormalizerParams& params, const SeriesOptions& options = {});

/// Wright function W_{a,b}(t) = sum_k t^k / (k! Gamma(a k + b)), a > -1.
/// Poles of Gamma(a k + b) contribute exact zeros.
SumResult wright(double a, double b, double t, const SeriesOptions& options = {});

}  // namespace hadml

#pragma once

#include <cstddef>
#include <functional>
#include <memory>

namespace hadml {

inline constexpr double kDefaultSeriesTolerance = 1e-15;
inline constexpr std::size_t kDefaultMaxTerms = 10000;
/// Absolute floor for the convergence test when the sum is (numerically) zero.
inline constexpr double kAbsoluteFloor = 1e-300;

/// A real number stored as sign and natural log of its magnitude.
/// sign == 0 means the value is exactly zero; log_magnitude is then ignored.
/// The log is kept in extended precision: alternating series lose
/// (sum |t_k|) / |sum| relative accuracy, and log-space rounding at double
/// precision would dominate that loss.
struct SignedLogTerm {
    long double log_magnitude = 0.0L;
    int sign = 0;

    static SignedLogTerm zero() noexcept { return {0.0, 0}; }
    static SignedLogTerm from_value(double v) noexcept;

    bool is_zero() const noexcept { return sign == 0; }
    double value() const noexcept;

    friend SignedLogTerm operator*(SignedLogTerm a, SignedLogTerm b) noexcept;
};

/// ln|Gamma(x)| with the sign of Gamma(x). At the poles (x a nonpositive integer)
/// sign is 0 and log_magnitude is +inf, so the reciprocal is an exact zero.
SignedLogTerm log_gamma(double x) noexcept;

struct SumResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double last_term_magnitude = 0.0;
    bool converged = false;
};

using CoefficientRule = std::function<SignedLogTerm(std::size_t)>;

struct SeriesOptions {
    double tolerance = kDefaultSeriesTolerance;
    std::size_t max_terms = kDefaultMaxTerms;
};

/// Sums sum_k c_k x^(offset + k*step) with c_k given in signed-log form.
///
/// Terms are formed in log space and accumulated with Neumaier compensation
/// against a running scale, so intermediate magnitudes beyond the double range
/// are fine as long as the final value is representable. A negative argument is
/// accepted only when every exponent is an integer; its sign is tracked per term.
///
/// Stops at index k once the term magnitude is falling (|t_k| < |t_{k-1}|) and
/// |t_k| <= tolerance * |partial sum| has held for three consecutive indices.
/// Throws OverflowError naming k for a non-finite or unrepresentable term.
SumResult sum_signed_log_series(const CoefficientRule& coeff, double argument,
                                double offset, double step,
                                double tolerance = kDefaultSeriesTolerance,
                                std::size_t max_terms = kDefaultMaxTerms);

/// Factor applied to the coefficient of the term with exponent e.
class Multiplier {
public:
    /// e -> e^p. Power multipliers compose by adding exponents, which keeps
    /// chains like J^a followed by D^a bit-exact.
    static Multiplier power(double p);
    static Multiplier log_form(std::function<SignedLogTerm(double)> m);
    static Multiplier linear(std::function<double(double)> m);

    bool is_power() const noexcept { return !fn_; }
    double power_exponent() const noexcept { return power_; }
    SignedLogTerm operator()(double exponent) const;

private:
    double power_ = 0.0;
    std::function<SignedLogTerm(double)> fn_;
};

/// f(t) = sum_{k>=0} c_k t^(offset + k*step), t > 0.
///
/// Coefficients are produced lazily by a rule. A pending power-law weight e^p
/// (from Hadamard operators) is kept separate from the rule until an exponent
/// shift forces it to be folded in.
class PowerSeries {
public:
    PowerSeries(double offset, double step, CoefficientRule rule,
                std::size_t max_terms = kDefaultMaxTerms);

    /// c * t^beta.
    static PowerSeries monomial(double beta, double coefficient = 1.0);

    double offset() const noexcept { return offset_; }
    double step() const noexcept { return step_; }
    std::size_t max_terms() const noexcept { return max_terms_; }
    double exponent(std::size_t k) const noexcept {
        return offset_ + static_cast<double>(k) * step_;
    }

    SignedLogTerm coefficient(std::size_t k) const;
    CoefficientRule rule() const;

    SumResult evaluate(double t, const SeriesOptions& options = {}) const;

    /// t^delta * f(t).
    PowerSeries shifted(double delta) const;
    /// c * f(t).
    PowerSeries scaled(SignedLogTerm c) const;
    PowerSeries scaled(double c) const { return scaled(SignedLogTerm::from_value(c)); }
    /// Drops the first n terms; the result starts at exponent(n).
    PowerSeries without_leading(std::size_t n) const;
    /// Keeps only the first n terms.
    PowerSeries truncated(std::size_t n) const;

    /// Smallest k whose coefficient is nonzero and exponent <= bound, if any.
    /// Only indices with exponent <= bound are scanned.
    std::ptrdiff_t first_nonzero_at_or_below(double bound) const;

    friend PowerSeries diagonal_transform(const PowerSeries& series, const Multiplier& m);
    friend PowerSeries annihilate_constant(const PowerSeries& series);

private:
    PowerSeries materialized() const;

    double offset_;
    double step_;
    std::shared_ptr<const CoefficientRule> rule_;
    std::size_t max_terms_;
    double power_weight_ = 0.0;
    bool zero_exponent_annihilated_ = false;
};

/// Scales c_k by m(offset + k*step). For general multipliers a non-finite
/// factor raises DomainError (naming the exponent) when that coefficient is read.
PowerSeries diagonal_transform(const PowerSeries& series, const Multiplier& m);

/// Zeroes the coefficient of an exact t^0 term, permanently.
PowerSeries annihilate_constant(const PowerSeries& series);

}  // namespace hadml

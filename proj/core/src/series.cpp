#include "hadml/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hadml/error.hpp"
#include "number_format.hpp"

extern "C" long double lgammal_r(long double, int*);

namespace hadml {

namespace {

constexpr long double kNegInfL = -std::numeric_limits<long double>::infinity();
const long double kLogMaxDouble = std::log(static_cast<long double>(std::numeric_limits<double>::max()));
/// Rescale the accumulator only when a term dwarfs the current scale by this much (in log).
constexpr long double kRescaleGap = 600.0L;

bool is_integer(double x) noexcept { return std::isfinite(x) && std::floor(x) == x; }

bool is_odd_integer(double x) noexcept { return std::fmod(std::fabs(x), 2.0) == 1.0; }

// Neumaier-compensated accumulator working in units of exp(scale).
class ScaledAccumulator {
public:
    void add(long double log_magnitude, int sign) {
        if (!has_scale_) {
            scale_ = log_magnitude;
            has_scale_ = true;
        } else if (log_magnitude > scale_ + kRescaleGap) {
            const long double f = std::exp(scale_ - log_magnitude);
            sum_ *= f;
            compensation_ *= f;
            scale_ = log_magnitude;
        }
        const long double y = sign * std::exp(log_magnitude - scale_);
        const long double t = sum_ + y;
        if (std::fabs(sum_) >= std::fabs(y)) {
            compensation_ += (sum_ - t) + y;
        } else {
            compensation_ += (y - t) + sum_;
        }
        sum_ = t;
    }

    /// ln|partial sum|, -inf when the partial sum is zero.
    long double log_magnitude() const {
        const long double v = sum_ + compensation_;
        if (!has_scale_ || v == 0.0L) return kNegInfL;
        return scale_ + std::log(std::fabs(v));
    }

    double value(std::size_t index) const {
        const long double v = sum_ + compensation_;
        if (!has_scale_ || v == 0.0L) return 0.0;
        if (log_magnitude() > kLogMaxDouble) {
            throw OverflowError("series value exceeds the double range", index);
        }
        return static_cast<double>(std::copysign(std::exp(log_magnitude()), v));
    }

private:
    bool has_scale_ = false;
    long double scale_ = 0.0L;
    long double sum_ = 0.0L;
    long double compensation_ = 0.0L;
};

}  // namespace

SignedLogTerm SignedLogTerm::from_value(double v) noexcept {
    if (v == 0.0) return zero();
    return {std::log(std::fabs(static_cast<long double>(v))), v > 0.0 ? 1 : -1};
}

double SignedLogTerm::value() const noexcept {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign * std::exp(log_magnitude));
}

SignedLogTerm operator*(SignedLogTerm a, SignedLogTerm b) noexcept {
    if (a.sign == 0 || b.sign == 0) return SignedLogTerm::zero();
    return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
}

SignedLogTerm log_gamma(double x) noexcept {
    if (x <= 0.0 && is_integer(x)) {
        return {std::numeric_limits<long double>::infinity(), 0};
    }
    int sign = 1;
    const long double lg = lgammal_r(static_cast<long double>(x), &sign);
    return {lg, sign < 0 ? -1 : 1};
}

SumResult sum_signed_log_series(const CoefficientRule& coeff, double argument,
                                double offset, double step, double tolerance,
                                std::size_t max_terms) {
    if (!(tolerance > 0.0)) throw DomainError("series tolerance must be > 0");
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("series step must be finite and > 0");
    if (!std::isfinite(argument) || !std::isfinite(offset)) {
        throw DomainError("series argument and offset must be finite");
    }
    const bool negative = argument < 0.0;
    if (negative && !(is_integer(offset) && is_integer(step))) {
        throw DomainError("negative argument requires integer exponents");
    }

    auto exponent = [&](std::size_t k) { return offset + static_cast<double>(k) * step; };

    if (argument == 0.0) {
        // Only a t^0 term survives; exponents increase with k.
        SumResult r;
        r.converged = true;
        r.terms_used = 1;
        for (std::size_t k = 0; k < max_terms && exponent(k) <= 0.0; ++k) {
            const SignedLogTerm c = coeff(k);
            if (exponent(k) < 0.0 && !c.is_zero()) {
                throw DomainError("zero argument with a negative exponent " +
                                  detail::number(exponent(k)));
            }
            if (exponent(k) == 0.0) {
                if (!c.is_zero() && c.log_magnitude > kLogMaxDouble) {
                    throw OverflowError("series term is not finite", k);
                }
                r.value = c.value();
                r.terms_used = k + 1;
            }
        }
        return r;
    }

    const long double log_abs_x = std::log(std::fabs(static_cast<long double>(argument)));
    const long double log_tol = std::log(static_cast<long double>(tolerance));

    ScaledAccumulator acc;
    long double previous = kNegInfL;
    long double last = kNegInfL;
    int hits = 0;
    std::size_t k = 0;
    for (; k < max_terms; ++k) {
        const SignedLogTerm c = coeff(k);
        long double log_term = kNegInfL;
        int sign = 0;
        if (!c.is_zero() && c.log_magnitude != kNegInfL) {
            const double e = exponent(k);
            log_term = c.log_magnitude + e * log_abs_x;
            if (std::isnan(log_term) || log_term > kLogMaxDouble) {
                throw OverflowError("series term " + std::to_string(k) + " is not finite", k);
            }
            sign = c.sign;
            if (negative && is_odd_integer(e)) sign = -sign;
            if (log_term != kNegInfL) acc.add(log_term, sign);
        }

        const long double log_partial = acc.log_magnitude();
        const bool falling = k > 0 && (log_term == kNegInfL || log_term < previous);
        const bool small = log_term == kNegInfL ||
                           (log_partial != kNegInfL && log_term <= log_tol + log_partial) ||
                           (log_partial == kNegInfL && std::exp(log_term) <= kAbsoluteFloor);
        hits = (falling && small) ? hits + 1 : 0;
        previous = log_term;
        last = log_term;
        if (hits >= 3) {
            return {acc.value(k), k + 1, static_cast<double>(std::exp(last)), true};
        }
    }
    return {acc.value(k - 1), k, static_cast<double>(std::exp(last)), false};
}

// ---------------------------------------------------------------------------

Multiplier Multiplier::power(double p) {
    Multiplier m;
    m.power_ = p;
    return m;
}

Multiplier Multiplier::log_form(std::function<SignedLogTerm(double)> fn) {
    Multiplier m;
    m.fn_ = std::move(fn);
    return m;
}

Multiplier Multiplier::linear(std::function<double(double)> fn) {
    return log_form([fn = std::move(fn)](double e) { return SignedLogTerm::from_value(fn(e)); });
}

SignedLogTerm Multiplier::operator()(double e) const {
    if (fn_) return fn_(e);
    if (power_ == 0.0) return {0.0L, 1};
    if (e > 0.0) return {power_ * std::log(static_cast<long double>(e)), 1};
    if (e == 0.0) {
        if (power_ > 0.0) return SignedLogTerm::zero();
        return {std::numeric_limits<long double>::infinity(), 1};
    }
    if (!is_integer(power_)) return {std::numeric_limits<long double>::quiet_NaN(), 1};
    return {power_ * std::log(-static_cast<long double>(e)), is_odd_integer(power_) ? -1 : 1};
}

// ---------------------------------------------------------------------------

PowerSeries::PowerSeries(double offset, double step, CoefficientRule rule, std::size_t max_terms)
    : offset_(offset),
      step_(step),
      rule_(std::make_shared<const CoefficientRule>(std::move(rule))),
      max_terms_(max_terms) {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("series step must be finite and > 0");
    if (!std::isfinite(offset)) throw DomainError("series offset must be finite");
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
    if (!*rule_) throw DomainError("series coefficient rule is empty");
}

PowerSeries PowerSeries::monomial(double beta, double coefficient) {
    const SignedLogTerm c = SignedLogTerm::from_value(coefficient);
    return PowerSeries(beta, 1.0, [c](std::size_t k) { return k == 0 ? c : SignedLogTerm::zero(); });
}

SignedLogTerm PowerSeries::coefficient(std::size_t k) const {
    const SignedLogTerm base = (*rule_)(k);
    if (base.is_zero()) return base;
    const double e = exponent(k);
    if (zero_exponent_annihilated_ && e == 0.0) return SignedLogTerm::zero();
    if (power_weight_ == 0.0) return base;
    const SignedLogTerm m = Multiplier::power(power_weight_)(e);
    if (!std::isfinite(m.log_magnitude) && !m.is_zero()) {
        throw DomainError("power multiplier e^" + detail::number(power_weight_) +
                          " is not finite at exponent " + detail::number(e));
    }
    return base * m;
}

CoefficientRule PowerSeries::rule() const {
    return [self = *this](std::size_t k) { return self.coefficient(k); };
}

SumResult PowerSeries::evaluate(double t, const SeriesOptions& options) const {
    if (t < 0.0) throw DomainError("power series are evaluated for t >= 0");
    return sum_signed_log_series(rule(), t, offset_, step_, options.tolerance,
                                 std::min(options.max_terms, max_terms_));
}

PowerSeries PowerSeries::materialized() const {
    if (power_weight_ == 0.0 && !zero_exponent_annihilated_) return *this;
    return PowerSeries(offset_, step_, rule(), max_terms_);
}

PowerSeries PowerSeries::shifted(double delta) const {
    PowerSeries out = materialized();
    out.offset_ += delta;
    return out;
}

PowerSeries PowerSeries::scaled(SignedLogTerm c) const {
    PowerSeries out = *this;
    auto base = rule_;
    out.rule_ = std::make_shared<const CoefficientRule>(
        [base, c](std::size_t k) { return (*base)(k) * c; });
    return out;
}

PowerSeries PowerSeries::without_leading(std::size_t n) const {
    if (n >= max_terms_) throw DomainError("cannot drop every term of a series");
    const PowerSeries src = materialized();
    return PowerSeries(exponent(n), step_,
                       [src, n](std::size_t k) { return src.coefficient(k + n); },
                       max_terms_ - n);
}

PowerSeries PowerSeries::truncated(std::size_t n) const {
    PowerSeries out = *this;
    auto base = rule_;
    out.rule_ = std::make_shared<const CoefficientRule>(
        [base, n](std::size_t k) { return k < n ? (*base)(k) : SignedLogTerm::zero(); });
    return out;
}

std::ptrdiff_t PowerSeries::first_nonzero_at_or_below(double bound) const {
    for (std::size_t k = 0; k < max_terms_ && exponent(k) <= bound; ++k) {
        if (!(*rule_)(k).is_zero() && !(zero_exponent_annihilated_ && exponent(k) == 0.0)) {
            return static_cast<std::ptrdiff_t>(k);
        }
    }
    return -1;
}

PowerSeries diagonal_transform(const PowerSeries& series, const Multiplier& m) {
    if (m.is_power()) {
        PowerSeries out = series;
        out.power_weight_ += m.power_exponent();
        return out;
    }
    const PowerSeries src = series.materialized();
    PowerSeries out = src;
    out.rule_ = std::make_shared<const CoefficientRule>([src, m](std::size_t k) {
        const SignedLogTerm c = src.coefficient(k);
        if (c.is_zero()) return c;
        const double e = src.exponent(k);
        const SignedLogTerm f = m(e);
        if (std::isnan(f.log_magnitude) || (!f.is_zero() && !std::isfinite(f.log_magnitude))) {
            throw DomainError("multiplier is not finite at exponent " + detail::number(e));
        }
        return c * f;
    });
    return out;
}

PowerSeries annihilate_constant(const PowerSeries& series) {
    PowerSeries out = series;
    out.zero_exponent_annihilated_ = true;
    return out;
}

}  // namespace hadml

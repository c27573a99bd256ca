#include "hadml/hadamard.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hadml/error.hpp"
#include "number_format.hpp"

namespace hadml {

namespace {

using detail::number;

bool is_integer(double x) noexcept { return std::isfinite(x) && std::floor(x) == x; }

void require_positive_beta(double beta, const char* what) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError(std::string(what) + ": requires beta > 0, got " + number(beta));
    }
}

void reject_negative_exponents(const PowerSeries& s, const char* what) {
    const auto k = s.first_nonzero_at_or_below(std::nextafter(0.0, -1.0));
    if (k >= 0) {
        throw DomainError(std::string(what) + ": nonzero term at negative exponent " +
                          number(s.exponent(static_cast<std::size_t>(k))));
    }
}

}  // namespace

OperatorOrder::OperatorOrder(double order) : order_(order) {
    if (!(order > 0.0) || !std::isfinite(order)) {
        throw DomainError("operator order must be finite and > 0, got " + number(order));
    }
    n_ = static_cast<int>(std::floor(order)) + 1;
}

double caputo_hadamard_power(double order, double beta) {
    const OperatorOrder a(order);
    require_positive_beta(beta, "caputo_hadamard_power");
    return std::pow(beta, a.value());
}

double hadamard_integral_power(double order, double beta) {
    const OperatorOrder a(order);
    require_positive_beta(beta, "hadamard_integral_power");
    return std::pow(beta, -a.value());
}

SignedLogTerm caputo_power_classical_log(double order, double beta) {
    const OperatorOrder a(order);
    if (!std::isfinite(beta)) throw DomainError("caputo_power_classical: beta must be finite");
    const double m = std::ceil(a.value());
    if (is_integer(beta) && beta >= 0.0 && beta <= m - 1.0) return SignedLogTerm::zero();
    if (!(beta > m - 1.0)) {
        throw DomainError("caputo_power_classical: order " + number(order) + " requires beta > " +
                          number(m - 1.0) + " or integer beta in [0, " + number(m - 1.0) +
                          "], got " + number(beta));
    }
    const SignedLogTerm num = log_gamma(beta + 1.0);
    const SignedLogTerm den = log_gamma(beta - a.value() + 1.0);
    return {num.log_magnitude - den.log_magnitude, num.sign * den.sign};
}

double caputo_power_classical(double order, double beta) {
    return caputo_power_classical_log(order, beta).value();
}

PowerSeries apply_caputo_hadamard(const PowerSeries& series, double order) {
    const OperatorOrder a(order);
    reject_negative_exponents(series, "apply_caputo_hadamard");
    return annihilate_constant(diagonal_transform(series, Multiplier::power(a.value())));
}

PowerSeries apply_hadamard_integral(const PowerSeries& series, double order) {
    const OperatorOrder a(order);
    const auto k = series.first_nonzero_at_or_below(0.0);
    if (k >= 0) {
        throw DomainError("apply_hadamard_integral: nonzero term at exponent " +
                          number(series.exponent(static_cast<std::size_t>(k))) +
                          " (requires exponents > 0)");
    }
    return diagonal_transform(series, Multiplier::power(-a.value()));
}

PowerSeries hadamard_derivative_rl(const PowerSeries& series, double order) {
    const OperatorOrder a(order);
    reject_negative_exponents(series, "hadamard_derivative_rl");
    if (series.first_nonzero_at_or_below(0.0) >= 0) {
        throw UnsupportedTermError(
            "hadamard_derivative_rl: constant term has no power-series image; "
            "use rl_caputo_relation_residual");
    }
    PowerSeries out = apply_hadamard_integral(series, static_cast<double>(a.n()) - a.value());
    for (int i = 0; i < a.n(); ++i) out = apply_delta(out);
    return out;
}

PowerSeries apply_delta(const PowerSeries& series) {
    return diagonal_transform(series, Multiplier::power(1.0));
}

PowerSeries differentiate(const PowerSeries& series) { return apply_delta(series).shifted(-1.0); }

// ---------------------------------------------------------------------------

QuadratureSpec QuadratureSpec::for_decay_rate(double rate, std::size_t nodes) {
    if (!(rate > 0.0)) throw DomainError("quadrature decay rate must be > 0");
    QuadratureSpec s;
    s.nodes = nodes;
    s.tail_truncation = kDefaultTailTruncation / rate;
    return s;
}

void QuadratureSpec::validate() const {
    if (nodes < 2) throw DomainError("quadrature needs at least 2 nodes");
    if (!(lower_limit >= 0.0) || !std::isfinite(lower_limit)) {
        throw DomainError("quadrature lower limit must be >= 0");
    }
    if (lower_limit == 0.0 && !(tail_truncation > 0.0 && std::isfinite(tail_truncation))) {
        throw DomainError("quadrature with lower limit 0 needs tail_truncation > 0");
    }
}

GaussJacobiRule GaussJacobiRule::build(std::size_t n, double a, double b) {
    if (n < 1) throw DomainError("Gauss-Jacobi rule needs n >= 1");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Gauss-Jacobi exponents must be > -1");

    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::VectorXd diag(nn);
    Eigen::VectorXd sub(std::max<Eigen::Index>(nn - 1, 1));
    const double ab = a + b;
    for (Eigen::Index k = 0; k < nn; ++k) {
        const double kk = static_cast<double>(k);
        const double s = 2.0 * kk + ab;
        diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (Eigen::Index k = 1; k < nn; ++k) {
        const double kk = static_cast<double>(k);
        const double s = 2.0 * kk + ab;
        sub(k - 1) = std::sqrt(4.0 * kk * (kk + a) * (kk + b) * (kk + ab) /
                               (s * s * (s + 1.0) * (s - 1.0)));
    }

    const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                           std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
    const double mu0 = std::exp(log_mu0);

    GaussJacobiRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = diag(0);
        rule.weights[0] = mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(nn - 1), Eigen::ComputeEigenvectors);
    for (Eigen::Index i = 0; i < nn; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return rule;
}

HadamardQuadrature::HadamardQuadrature(double order, QuadratureSpec spec)
    : order_(OperatorOrder(order).value()), spec_(spec) {
    spec_.validate();
    if (spec_.scheme == QuadratureScheme::gauss_jacobi) {
        rule_ = GaussJacobiRule::build(spec_.nodes, 0.0, order_ - 1.0);
    }
    log_gamma_order_ = std::lgamma(order_);
}

QuadratureResult HadamardQuadrature::integrate(const std::function<double(double)>& f,
                                               double t) const {
    if (!(t > spec_.lower_limit) || !std::isfinite(t)) {
        throw DomainError("hadamard_integral_quad: requires t > lower limit " +
                          number(spec_.lower_limit) + ", got " + number(t));
    }
    const double length =
        spec_.lower_limit > 0.0 ? std::log(t / spec_.lower_limit) : spec_.tail_truncation;

    auto eval = [&](double u) {
        const double tau = t * std::exp(-u);
        const double v = f(tau);
        if (!std::isfinite(v)) {
            throw EvaluationError("hadamard_integral_quad: integrand not finite at tau=" + number(tau));
        }
        return v;
    };

    double peak = 0.0;
    double sum = 0.0;
    double scale = 0.0;
    if (spec_.scheme == QuadratureScheme::gauss_jacobi) {
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
            const double v = eval(0.5 * length * (1.0 + rule_.nodes[i]));
            peak = std::max(peak, std::fabs(v));
            sum += rule_.weights[i] * v;
        }
        scale = std::exp(order_ * std::log(0.5 * length) - log_gamma_order_);
    } else {
        // u = L s^(1/a) turns u^(a-1) du into (L^a / a) ds.
        const std::size_t n = spec_.nodes;
        const double h = 1.0 / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = static_cast<double>(i) * h;
            const double v = eval(length * std::pow(s, 1.0 / order_));
            peak = std::max(peak, std::fabs(v));
            sum += (i == 0 || i + 1 == n ? 0.5 : 1.0) * v;
        }
        sum *= h;
        scale = std::exp(order_ * std::log(length) - std::log(order_) - log_gamma_order_);
    }

    QuadratureResult result{scale * sum, false};
    if (spec_.lower_limit == 0.0) {
        const double tail = std::fabs(eval(length));
        result.tail_warning = tail > 1e-18 * peak;
    }
    return result;
}

QuadratureResult hadamard_integral_quad(const std::function<double(double)>& f, double order,
                                        const QuadratureSpec& spec, double t) {
    return HadamardQuadrature(order, spec).integrate(f, t);
}

double rl_caputo_relation_residual(const PowerSeries& f, double order, double t0,
                                   std::span<const double> t_grid, std::size_t nodes) {
    if (!(order > 0.0 && order < 1.0)) {
        throw DomainError("rl_caputo_relation_residual: requires order in (0, 1), got " + number(order));
    }
    if (!(t0 > 0.0) || !std::isfinite(t0)) {
        throw DomainError("rl_caputo_relation_residual: requires t0 > 0");
    }
    for (double t : t_grid) {
        if (!(t > t0)) throw DomainError("rl_caputo_relation_residual: grid points must exceed t0");
    }

    QuadratureSpec spec;
    spec.lower_limit = t0;
    spec.nodes = nodes;
    const HadamardQuadrature quad(1.0 - order, spec);

    const PowerSeries delta_f = apply_delta(f);
    const double f_t0 = f.evaluate(t0).value;
    auto caputo_integrand = [&](double tau) { return delta_f.evaluate(tau).value; };
    auto shifted_f = [&](double tau) { return f.evaluate(tau).value - f_t0; };
    auto rl_inner = [&](double s) { return quad.integrate(shifted_f, std::exp(s)).value; };

    double worst = 0.0;
    for (double t : t_grid) {
        const double caputo = quad.integrate(caputo_integrand, t).value;

        // d/ds of rl_inner at s = ln t, Ridders' extrapolation of central differences.
        const double s = std::log(t);
        constexpr int kLevels = 8;
        constexpr double kShrink = 1.6;
        double h = std::min(0.25 * std::log(t / t0), 0.125);
        double table[kLevels][kLevels];
        double best = 0.0;
        double best_err = std::numeric_limits<double>::infinity();
        table[0][0] = (rl_inner(s + h) - rl_inner(s - h)) / (2.0 * h);
        best = table[0][0];
        for (int i = 1; i < kLevels; ++i) {
            h /= kShrink;
            table[0][i] = (rl_inner(s + h) - rl_inner(s - h)) / (2.0 * h);
            double fac = kShrink * kShrink;
            for (int j = 1; j <= i; ++j) {
                table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
                fac *= kShrink * kShrink;
                const double err = std::max(std::fabs(table[j][i] - table[j - 1][i]),
                                            std::fabs(table[j][i] - table[j - 1][i - 1]));
                if (err <= best_err) {
                    best_err = err;
                    best = table[j][i];
                }
            }
            if (std::fabs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * best_err) break;
        }
        worst = std::max(worst, std::fabs(caputo - best));
    }
    return worst;
}

}  // namespace hadml

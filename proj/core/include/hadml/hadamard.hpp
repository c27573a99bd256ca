#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hadml/series.hpp"

namespace hadml {

/// Fractional order a > 0 with n = floor(a) + 1, the integer used by the
/// Riemann-Liouville-type Hadamard derivative.
class OperatorOrder {
public:
    explicit OperatorOrder(double order);

    double value() const noexcept { return order_; }
    int n() const noexcept { return n_; }

private:
    double order_;
    int n_;
};

// Monomial rules ------------------------------------------------------------

/// Eigenvalue b^a of the Caputo-type Hadamard derivative (t d/dt)^a on t^b, b > 0.
double caputo_hadamard_power(double order, double beta);

/// Eigenvalue b^(-a) of the Hadamard integral J^a on t^b, b > 0.
double hadamard_integral_power(double order, double beta);

/// Classical Caputo rule d^a u^b = Gamma(b+1)/Gamma(b-a+1) u^(b-a).
/// With m = ceil(a): integer b in [0, m-1] gives 0; otherwise b > m-1 is required.
double caputo_power_classical(double order, double beta);
/// Same factor in signed-log form.
SignedLogTerm caputo_power_classical_log(double order, double beta);

// Exact action on power series ---------------------------------------------

/// (t d/dt)^a termwise: t^e -> e^a t^e, constants are annihilated.
/// Throws DomainError if a nonzero coefficient sits at a negative exponent.
PowerSeries apply_caputo_hadamard(const PowerSeries& series, double order);

/// J^a termwise: t^e -> e^(-a) t^e. Requires every nonzero term to have e > 0.
PowerSeries apply_hadamard_integral(const PowerSeries& series, double order);

/// D^a = delta^n J^(n-a) termwise. A nonzero constant term has no power-series
/// image and raises UnsupportedTermError; use rl_caputo_relation_residual for it.
PowerSeries hadamard_derivative_rl(const PowerSeries& series, double order);

/// delta = t d/dt, i.e. t^e -> e t^e.
PowerSeries apply_delta(const PowerSeries& series);

/// Ordinary d/dt: t^e -> e t^(e-1).
PowerSeries differentiate(const PowerSeries& series);

// Quadrature ----------------------------------------------------------------

enum class QuadratureScheme { gauss_jacobi, graded_trapezoid };

inline constexpr std::size_t kDefaultQuadratureNodes = 64;
inline constexpr double kDefaultTailTruncation = 60.0;

struct QuadratureSpec {
    double lower_limit = 0.0;
    std::size_t nodes = kDefaultQuadratureNodes;
    QuadratureScheme scheme = QuadratureScheme::gauss_jacobi;
    /// Upper end L of the log variable u = ln(t/tau) when lower_limit == 0.
    double tail_truncation = kDefaultTailTruncation;

    /// Lower limit 0 with L = 60 / rate, for integrands decaying like tau^rate.
    static QuadratureSpec for_decay_rate(double rate, std::size_t nodes = kDefaultQuadratureNodes);
    void validate() const;
};

/// Gauss-Jacobi rule for weight (1-x)^a (1+x)^b on [-1, 1] (Golub-Welsch).
struct GaussJacobiRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussJacobiRule build(std::size_t n, double a, double b);
};

struct QuadratureResult {
    double value = 0.0;
    /// Set when lower_limit == 0 and the integrand has not decayed to 1e-18 of
    /// its peak at the truncation point, so the tail cut may be inaccurate.
    bool tail_warning = false;
};

/// J^a f(t) = 1/Gamma(a) int_a^t (ln t/tau)^(a-1) f(tau) dtau/tau, computed as
/// 1/Gamma(a) int_0^L u^(a-1) f(t e^-u) du with L = ln(t/lower) or the tail
/// truncation. The node table is built once on construction.
class HadamardQuadrature {
public:
    HadamardQuadrature(double order, QuadratureSpec spec);

    QuadratureResult integrate(const std::function<double(double)>& f, double t) const;

    double order() const noexcept { return order_; }
    const QuadratureSpec& spec() const noexcept { return spec_; }

private:
    double order_;
    QuadratureSpec spec_;
    GaussJacobiRule rule_;
    double log_gamma_order_;
};

QuadratureResult hadamard_integral_quad(const std::function<double(double)>& f, double order,
                                        const QuadratureSpec& spec, double t);

/// Max |Caputo side - RL side| over t_grid for the relation
/// (t d/dt)^a f = D^a [f - f(t0)], a in (0, 1), both with lower limit t0.
/// The Caputo side integrates delta f by quadrature; the RL side differentiates
/// the quadrature of f - f(t0) in ln t by Richardson-extrapolated central differences.
double rl_caputo_relation_residual(const PowerSeries& f, double order, double t0,
                                   std::span<const double> t_grid,
                                   std::size_t nodes = kDefaultQuadratureNodes);

}  // namespace hadml

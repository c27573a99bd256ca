#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hadml/error.hpp"
#include "hadml/hadamard.hpp"
#include "hadml/special.hpp"
#include "mp_oracle.hpp"

using namespace hadml;
namespace or_ = hadml::oracle;

namespace {

double rel_err(double got, double want) { return std::fabs(got / want - 1.0); }

bool within_ulps(double a, double b, int ulps) {
    double x = b;
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, a);
    return a == x || (a > b ? a <= x : a >= x);
}

PowerSeries exp_series() {
    return PowerSeries(0.0, 1.0, [](std::size_t k) {
        return SignedLogTerm{-log_gamma(static_cast<double>(k) + 1.0).log_magnitude, 1};
    });
}

PowerSeries random_positive_series(std::mt19937_64& g) {
    std::uniform_real_distribution<double> off(0.05, 3.0);
    std::uniform_real_distribution<double> stp(0.1, 2.0);
    const double offset = off(g);
    const double step = stp(g);
    const std::uint64_t seed = g();
    return PowerSeries(offset, step, [seed](std::size_t k) -> SignedLogTerm {
        std::mt19937_64 local(seed ^ (k * 0x9E3779B97F4A7C15ull));
        std::uniform_real_distribution<double> a(-3.0, 3.0);
        const int sign = (local() & 1u) ? -1 : 1;
        return {a(local) - log_gamma(static_cast<double>(k) + 1.0).log_magnitude, sign};
    });
}

}  // namespace

TEST_CASE("operator order and its integer part") {
    CHECK(OperatorOrder(0.5).n() == 1);
    CHECK(OperatorOrder(1.0).n() == 2);
    CHECK(OperatorOrder(2.7).n() == 3);
    CHECK_THROWS_AS(OperatorOrder(0.0), DomainError);
    CHECK_THROWS_AS(OperatorOrder(-1.0), DomainError);
}

TEST_CASE("monomial eigenvalues") {
    CHECK(caputo_hadamard_power(0.5, 4.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(caputo_hadamard_power(1.0, 3.25) == 3.25);
    CHECK(rel_err(caputo_hadamard_power(2.5, 3.0), 15.58845726811989564174702) < 1e-15);
    CHECK(hadamard_integral_power(1.0, 2.0) == 0.5);
    CHECK(rel_err(hadamard_integral_power(0.7, 3.0), 0.4634630567719697801617514) < 1e-15);
    CHECK(hadamard_integral_power(1.9, 1.0) == 1.0);
    for (double beta : {0.0, -0.5, -2.0}) {
        CHECK_THROWS_AS(caputo_hadamard_power(0.5, beta), DomainError);
        CHECK_THROWS_AS(hadamard_integral_power(0.5, beta), DomainError);
    }
}

TEST_CASE("property: the Hadamard integral is a semigroup on monomials") {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> order(0.05, 3.0);
    std::uniform_real_distribution<double> beta(0.05, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double a1 = order(g), a2 = order(g), b = beta(g);
        const double lhs = hadamard_integral_power(a1, b) * hadamard_integral_power(a2, b);
        CHECK(rel_err(lhs, hadamard_integral_power(a1 + a2, b)) < 1e-14);
    }
}

TEST_CASE("classical Caputo rule on powers") {
    CHECK(caputo_power_classical(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rel_err(caputo_power_classical(0.5, 1.0), 1.128379167095512573896159) < 1e-14);
    for (double a : {0.3, 0.5, 0.9}) {
        CHECK(rel_err(caputo_power_classical(a, a), std::tgamma(a + 1.0)) < 1e-14);
    }
    // integer powers below ceil(order) are annihilated
    CHECK(caputo_power_classical(0.5, 0.0) == 0.0);
    CHECK(caputo_power_classical(1.5, 1.0) == 0.0);
    CHECK(caputo_power_classical(1.5, 0.0) == 0.0);
    CHECK(caputo_power_classical_log(1.5, 1.0).is_zero());
    CHECK_THROWS_AS(caputo_power_classical(1.5, 0.5), DomainError);
    CHECK_THROWS_AS(caputo_power_classical(0.5, -0.3), DomainError);
}

TEST_CASE("Caputo-type action on series") {
    const double c = 3.5;
    const PowerSeries constant = PowerSeries::monomial(0.0, c);
    for (double a : {0.2, 1.0, 2.5}) {
        const PowerSeries d = apply_caputo_hadamard(constant, a);
        CHECK(d.coefficient(0).is_zero());
        CHECK(d.evaluate(1.7).value == 0.0);
    }

    const PowerSeries mono = PowerSeries::monomial(2.5, 1.0);
    CHECK(rel_err(apply_caputo_hadamard(mono, 0.6).coefficient(0).value(), std::pow(2.5, 0.6)) < 1e-15);

    // E_{2;1,1}(t^2/2): (t d/dt)^2 f = 2 t^2 f
    const PowerSeries f(0.0, 2.0, [](std::size_t k) {
        const double kk = static_cast<double>(k);
        return SignedLogTerm{-kk * std::log(2.0L) - 2.0L * log_gamma(kk + 1.0).log_magnitude, 1};
    });
    const PowerSeries lhs = apply_caputo_hadamard(f, 2.0);
    CHECK(lhs.coefficient(0).is_zero());
    for (std::size_t k = 1; k < 40; ++k) {
        CHECK(lhs.exponent(k) == f.exponent(k - 1) + 2.0);
        CHECK(rel_err(lhs.coefficient(k).value(), 2.0 * f.coefficient(k - 1).value()) < 1e-13);
    }
    for (double t : {0.5, 1.0, 2.0}) {
        CHECK(rel_err(lhs.evaluate(t).value, 2.0 * t * t * f.evaluate(t).value) < 1e-13);
    }

    CHECK_THROWS_AS(apply_caputo_hadamard(PowerSeries::monomial(-0.5), 0.5), DomainError);
}

TEST_CASE("Hadamard integral action on series") {
    CHECK(apply_hadamard_integral(PowerSeries::monomial(3.0), 1.0).coefficient(0).value() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(apply_hadamard_integral(PowerSeries::monomial(0.0, 2.0), 0.5), DomainError);
    CHECK_THROWS_AS(apply_hadamard_integral(exp_series(), 0.5), DomainError);
    // a zero coefficient at exponent 0 is not a constant term
    CHECK_NOTHROW(apply_hadamard_integral(exp_series().without_leading(1), 0.5));
}

TEST_CASE("RL-type derivative") {
    const PowerSeries mono = PowerSeries::monomial(2.0);
    CHECK(rel_err(hadamard_derivative_rl(mono, 0.5).coefficient(0).value(), std::sqrt(2.0)) < 1e-15);
    CHECK(rel_err(hadamard_derivative_rl(mono, 2.0).coefficient(0).value(), 4.0) < 1e-15);
    CHECK_THROWS_AS(hadamard_derivative_rl(PowerSeries::monomial(0.0, 1.0), 0.5), UnsupportedTermError);
    CHECK_THROWS_AS(hadamard_derivative_rl(exp_series(), 0.5), UnsupportedTermError);
}

TEST_CASE("property: J^a is left-inverted by both derivatives") {
    std::mt19937_64 g(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const PowerSeries s = random_positive_series(g);
        for (double a : {0.3, 0.5, 1.2, 2.7}) {
            const PowerSeries j = apply_hadamard_integral(s, a);
            const PowerSeries caputo = apply_caputo_hadamard(j, a);
            const PowerSeries rl = hadamard_derivative_rl(j, a);
            for (std::size_t k = 0; k < 30; ++k) {
                const double want = s.coefficient(k).value();
                CHECK(within_ulps(caputo.coefficient(k).value(), want, 2));
                CHECK(within_ulps(rl.coefficient(k).value(), want, 2));
                CHECK(caputo.exponent(k) == s.exponent(k));
            }
        }
    }
}

TEST_CASE("property: integer order equals repeated delta") {
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 10; ++trial) {
        const PowerSeries s = random_positive_series(g);
        for (int n = 1; n <= 4; ++n) {
            PowerSeries repeated = s;
            for (int i = 0; i < n; ++i) repeated = apply_delta(repeated);
            const PowerSeries direct = apply_caputo_hadamard(s, n);
            for (std::size_t k = 0; k < 30; ++k) {
                CHECK(direct.coefficient(k).value() == repeated.coefficient(k).value());
            }
        }
    }
}

TEST_CASE("Gauss-Jacobi rule integrates polynomials exactly") {
    const GaussJacobiRule legendre = GaussJacobiRule::build(5, 0.0, 0.0);
    double s2 = 0.0, s8 = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        s2 += legendre.weights[i] * std::pow(legendre.nodes[i], 2);
        s8 += legendre.weights[i] * std::pow(legendre.nodes[i], 8);
    }
    CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

    // int_{-1}^{1} (1+x)^b dx = 2^(b+1) / (b+1)
    const double b = -0.6;
    const GaussJacobiRule rule = GaussJacobiRule::build(12, 0.0, b);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(total == doctest::Approx(std::pow(2.0, b + 1.0) / (b + 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(GaussJacobiRule::build(4, -1.0, 0.0), DomainError);
}

TEST_CASE("quadrature against closed forms") {
    const auto cube = [](double x) { return x * x * x; };
    const QuadratureResult r = hadamard_integral_quad(cube, 0.7, QuadratureSpec{}, 2.0);
    CHECK(rel_err(r.value, 3.707704454175758241294011) < 1e-12);
    CHECK_FALSE(r.tail_warning);

    QuadratureSpec from_one;
    from_one.lower_limit = 1.0;
    CHECK(hadamard_integral_quad([](double) { return 1.0; }, 1.0, from_one, std::exp(1.0)).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hadamard_integral_quad([](double x) { return x; }, 2.0, QuadratureSpec{}, 1.0).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: quadrature matches beta^-a t^beta") {
    for (double a : {0.3, 0.7, 1.5}) {
        for (double beta : {0.5, 1.0, 3.0}) {
            for (double t : {0.5, 2.0}) {
                const auto f = [beta](double x) { return std::pow(x, beta); };
                const double want = std::pow(beta, -a) * std::pow(t, beta);
                CHECK(rel_err(hadamard_integral_quad(f, a, QuadratureSpec{}, t).value, want) < 1e-6);
                const QuadratureResult tuned =
                    hadamard_integral_quad(f, a, QuadratureSpec::for_decay_rate(beta), t);
                CHECK(rel_err(tuned.value, want) < 1e-6);
                CHECK_FALSE(tuned.tail_warning);
            }
        }
    }
}

TEST_CASE("graded trapezoid agrees with Gauss-Jacobi to its lower order") {
    QuadratureSpec spec;
    spec.scheme = QuadratureScheme::graded_trapezoid;
    spec.nodes = 4000;
    spec.lower_limit = 0.5;
    const auto f = [](double x) { return std::exp(x); };
    QuadratureSpec gj = spec;
    gj.scheme = QuadratureScheme::gauss_jacobi;
    gj.nodes = 64;
    const double coarse = hadamard_integral_quad(f, 0.4, spec, 2.0).value;
    const double fine = hadamard_integral_quad(f, 0.4, gj, 2.0).value;
    CHECK(rel_err(coarse, fine) < 1e-4);
}

TEST_CASE("quadrature flags non-decaying integrands and rejects bad input") {
    CHECK(hadamard_integral_quad([](double) { return 1.0; }, 0.5, QuadratureSpec{}, 1.0).tail_warning);
    CHECK_THROWS_AS(hadamard_integral_quad([](double) { return std::nan(""); }, 0.5, QuadratureSpec{}, 1.0),
                    EvaluationError);
    QuadratureSpec from_one;
    from_one.lower_limit = 1.0;
    CHECK_THROWS_AS(hadamard_integral_quad([](double x) { return x; }, 0.5, from_one, 1.0), DomainError);
    QuadratureSpec one_node;
    one_node.nodes = 1;
    CHECK_THROWS_AS(hadamard_integral_quad([](double x) { return x; }, 0.5, one_node, 1.0), DomainError);
    QuadratureSpec no_tail;
    no_tail.tail_truncation = 0.0;
    CHECK_THROWS_AS(hadamard_integral_quad([](double x) { return x; }, 0.5, no_tail, 1.0), DomainError);
}

TEST_CASE("Caputo and RL derivatives reconcile after removing f(t0)") {
    const PowerSeries constant = PowerSeries::monomial(0.0, 4.0);
    const PowerSeries linear(0.0, 1.0, [](std::size_t k) {
        return k < 2 ? SignedLogTerm{0.0L, 1} : SignedLogTerm::zero();
    });
    const std::vector<double> grid{1.5, 2.0};
    CHECK(rl_caputo_relation_residual(constant, 0.5, 1.0, grid) == 0.0);
    CHECK(rl_caputo_relation_residual(linear, 0.5, 1.0, grid) < 1e-6);

    const PowerSeries square = PowerSeries::monomial(2.0);
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double t0 : {1e-6, 0.1, 1.0}) {
            const std::vector<double> g{1.5 * t0, 2.0 * t0, 4.0 * t0};
            CHECK(rl_caputo_relation_residual(square, a, t0, g) < 1e-12);
            // e^t reaches ~55 on this grid; the bound is absolute
            CHECK(rl_caputo_relation_residual(exp_series(), a, t0, g) < 1e-10);
        }
    }

    CHECK_THROWS_AS(rl_caputo_relation_residual(square, 1.0, 1.0, grid), DomainError);
    CHECK_THROWS_AS(rl_caputo_relation_residual(square, 0.5, 2.0, grid), DomainError);
}

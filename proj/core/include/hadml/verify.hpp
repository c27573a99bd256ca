#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hadml/series.hpp"

namespace hadml {

using ParameterRecord = std::vector<std::pair<std::string, double>>;

/// Residual statistics of one identity check.
///
/// passed <=> max_rel_residual <= tolerance. The relative residual of a point
/// whose reference value is exactly zero is its absolute residual.
struct CheckReport {
    std::string check_id;
    std::vector<ParameterRecord> parameter_grid;
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::size_t terms_used = 0;
    std::vector<std::string> notes;
};

/// Every identity is checked twice: coefficient by coefficient ("termwise")
/// and by summing both sides on an argument grid ("grid").
struct CheckOutcome {
    CheckReport termwise;
    CheckReport grid;

    bool passed() const noexcept { return termwise.passed && grid.passed; }
};

inline constexpr double kTermwiseTolerance = 1e-12;
inline constexpr double kGridTolerance = 1e-8;

struct VerifyOptions {
    double termwise_tolerance = kTermwiseTolerance;
    double grid_tolerance = kGridTolerance;
    SeriesOptions series{};
};

/// {0.1, 0.5, 1.0, 2.0}
std::vector<double> default_grid();
/// default_grid() intersected with (lo, hi] (or [lo, hi] when closed_low).
std::vector<double> default_grid_within(double lo, double hi, bool closed_low = false);

/// (u d/du)^nu g = lambda t u g + (k = 0 term) for g = u^(nu-1) G(u, t), nu in (0, 1).
/// The k = 0 inhomogeneous term is excluded: Gamma(nu-1) < 0 has no real nu-th power.
CheckOutcome check_theorem1(double nu, double lambda, double t, std::span<const double> u_grid,
                            const VerifyOptions& options = {});

/// J^r (t^nu dC/dt) = lambda t^nu C for C(r, nu, lambda t); r in [0, 1/2), nu in (0, 1].
CheckOutcome check_proposition1(double r, double nu, double lambda, std::span<const double> t_grid,
                                const VerifyOptions& options = {});

/// J^r (u^nu dG/du) = t u^nu G for the GCOM pgf G(u) = C(r, nu, u t) / C(r, nu, t).
CheckOutcome check_corollary1(double r, double nu, double t, std::span<const double> u_grid,
                              const VerifyOptions& options = {});

/// t^-a (t d/dt)^a f = a^(a-1) f for f = E_{a;1,1}(t^a / a).
CheckOutcome check_theorem2(double alpha, std::span<const double> t_grid,
                            const VerifyOptions& options = {});

/// L_H f = a^(n a - n) n^(n a) f for f = E_{n a;1,1}(t^(a n) / a^n).
CheckOutcome check_theorem3(double alpha, int n, std::span<const double> t_grid,
                            const VerifyOptions& options = {});

/// (d/dt t)^(r-1) d/dt (t d/dt)^(b-r) f = f for f = E_{b;1,1}(t), 1 <= r <= floor(b) - 1.
CheckOutcome check_theorem4(double beta, int r, std::span<const double> t_grid,
                            const VerifyOptions& options = {});

/// d^a/du^a G(u^a, t) = t G(u^a, t), classical Caputo in u, a in (0, 1].
CheckOutcome check_pgf_caputo(double alpha, double t, std::span<const double> u_grid,
                              const VerifyOptions& options = {});

/// (t d/dt)^a J^a s = s for every series and order given. Also records that a
/// series with a constant term is rejected by the integral path.
CheckOutcome check_left_inverse(std::span<const PowerSeries> series, std::span<const double> orders,
                                std::span<const double> t_grid, const VerifyOptions& options = {});

/// t^2, the first 30 terms of E_{2;1,1}(t) and t^(1/2) e^t.
std::vector<PowerSeries> default_left_inverse_series();
/// {0.3, 0.5, 1.2, 2.7}
std::vector<double> default_left_inverse_orders();

/// Sorted ids of the named checks.
std::vector<std::string> known_checks();

/// Overrides for a named check; unset fields keep the check's defaults.
struct CheckParameters {
    std::optional<double> alpha;
    std::optional<double> nu;
    std::optional<double> lambda;
    std::optional<double> t;
    std::optional<double> r;
    std::optional<double> beta;
    std::optional<int> n;
    /// The argument grid (t or u, depending on the check).
    std::optional<std::vector<double>> grid;
};

/// Runs one named check. Throws DomainError for an unknown id or an override the
/// check does not take.
CheckOutcome run_check(const std::string& id, const CheckParameters& params,
                       const VerifyOptions& options = {});

inline CheckOutcome run_default_check(const std::string& id, const VerifyOptions& options = {}) {
    return run_check(id, {}, options);
}

}  // namespace hadml

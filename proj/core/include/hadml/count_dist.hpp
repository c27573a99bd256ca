#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hadml/series.hpp"

namespace hadml {

enum class Family { poisson, com_poisson, fractional_poisson, fractional_com_poisson, gcom_poisson };

std::string_view family_name(Family f) noexcept;

struct PoissonShape {};
/// pmf ~ x^n / (n!)^nu.
struct ComPoissonShape {
    double nu = 1.0;
};
/// pmf ~ x^k / Gamma(alpha k + 1), alpha in (0, 1].
struct FractionalPoissonShape {
    double alpha = 1.0;
};
/// pmf ~ x^n / Gamma(alpha n + gamma)^nu, normalized by E_{nu; alpha, gamma}(x).
struct FractionalComPoissonShape {
    double nu = 1.0;
    double alpha = 1.0;
    double gamma = 1.0;
};
/// pmf ~ Gamma(nu + n)^r x^n / n!, normalized by C(r, nu, x).
struct GcomShape {
    double r = 0.0;
    double nu = 1.0;
};

using Shape = std::variant<PoissonShape, ComPoissonShape, FractionalPoissonShape,
                           FractionalComPoissonShape, GcomShape>;

/// A count model; rate and time only enter through x = rate * time.
struct CountModel {
    double rate = 1.0;
    double time = 1.0;
    Shape shape = PoissonShape{};

    Family family() const noexcept;
    double argument() const noexcept { return rate * time; }

    static CountModel poisson(double t, double rate = 1.0);
    static CountModel com_poisson(double nu, double t, double rate = 1.0);
    static CountModel fractional_poisson(double alpha, double t, double rate = 1.0);
    static CountModel fractional_com_poisson(double nu, double alpha, double gamma, double t,
                                             double rate = 1.0);
    static CountModel gcom(double r, double nu, double t, double rate = 1.0);
};

/// Every violated constraint of the model, empty when valid.
std::vector<std::string> violations(const CountModel& model);

/// Returns the model or throws ParameterError carrying the full violation list.
CountModel validate(const CountModel& model);

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double dispersion_index = 0.0;
    std::size_t truncation_k = 0;
};

inline constexpr double kMomentTailMass = 1e-14;
inline constexpr std::size_t kSupportCap = 100000;

/// Deterministic uniform source on [0, 1): 53-bit doubles from mt19937_64.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// A validated model with its normalizer evaluated once. Immutable.
class CountDistribution {
public:
    explicit CountDistribution(const CountModel& model, const SeriesOptions& options = {});

    const CountModel& model() const noexcept { return model_; }
    double log_normalizer() const noexcept { return log_normalizer_; }

    /// ln of the unnormalized weight w_k x^k, with the family's coefficient.
    double log_weight(std::uint64_t k) const;
    double log_pmf(std::uint64_t k) const;
    double pmf(std::uint64_t k) const;
    double pgf(double u) const;
    MomentSummary moments() const;
    std::vector<std::uint64_t> sample(std::size_t count, UniformStream& stream) const;

private:
    double log_coefficient(std::uint64_t k) const;
    /// Normalizer evaluated at argument y (|y| <= x).
    double normalizer(double y) const;
    /// Upper bound on the ratio pmf(k+1)/pmf(k) beyond k, used for tail bounds.
    double ratio_limit() const;

    CountModel model_;
    SeriesOptions options_;
    CoefficientRule coefficients_;
    double log_normalizer_ = 0.0;
};

double log_pmf(const CountModel& model, std::uint64_t k);
double pgf(const CountModel& model, double u);
MomentSummary moments(const CountModel& model);
std::vector<std::uint64_t> sample(const CountModel& model, std::size_t count, UniformStream& stream);

}  // namespace hadml

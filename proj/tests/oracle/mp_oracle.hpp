#pragma once

// Extended-precision reference values for tests. Direct summation of the defining
// series in 50-digit binary floating point; shares no code with the library.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>

namespace hadml::oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline bool is_nonpositive_integer(const mp& x) { return x <= 0 && floor(x) == x; }

inline mp gamma(const mp& x) { return boost::math::tgamma(x); }

/// x^p for real p; negative x only for integer p.
inline mp real_pow(const mp& x, const mp& p) {
    if (x >= 0) return boost::multiprecision::pow(x, p);
    const long long n = static_cast<long long>(p);
    mp out = 1;
    mp base = x;
    long long e = n < 0 ? -n : n;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return n < 0 ? mp(1) / out : out;
}

/// sum_k term(k) with at least min_terms terms, stopping once |term| < 1e-55 |sum|
/// for 5 consecutive k after the terms start falling.
inline mp direct_sum(const std::function<mp(long)>& term, long min_terms = 200, long max_terms = 20000) {
    mp sum = 0;
    mp prev = 0;
    int small = 0;
    for (long k = 0; k < max_terms; ++k) {
        const mp t = term(k);
        sum += t;
        const bool falling = k > 0 && abs(t) <= abs(prev);
        if (falling && abs(t) <= mp("1e-55") * abs(sum)) {
            if (++small >= 5 && k + 1 >= min_terms) break;
        } else {
            small = 0;
        }
        prev = t;
    }
    return sum;
}

/// sum_k z^k / Gamma(nu k + gamma)^alpha
inline mp alpha_ml(const mp& alpha, const mp& nu, const mp& gamma_shift, const mp& z) {
    return direct_sum([&](long k) -> mp {
        const mp arg = nu * k + gamma_shift;
        return real_pow(z, k) / real_pow(gamma(arg), alpha);
    });
}

/// sum_k Gamma(nu + k)^r t^k / k!
inline mp gcom_normalizer(const mp& r, const mp& nu, const mp& t) {
    return direct_sum([&](long k) -> mp {
        return real_pow(gamma(nu + k), r) * real_pow(t, k) / gamma(mp(k + 1));
    });
}

/// sum_k t^k / (k! Gamma(a k + b)); 1/Gamma vanishes at poles.
inline mp wright(const mp& a, const mp& b, const mp& t) {
    return direct_sum([&](long k) -> mp {
        const mp arg = a * k + b;
        if (is_nonpositive_integer(arg)) return mp(0);
        return real_pow(t, k) / (gamma(mp(k + 1)) * gamma(arg));
    });
}

inline double to_double(const mp& x) { return static_cast<double>(x); }

}  // namespace hadml::oracle

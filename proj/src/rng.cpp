#include "mmpr/rng.hpp"

#include <cmath>

#include "mmpr/errors.hpp"

namespace mmpr {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 output function: a 64-bit bijection with full avalanche.
std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::raw(std::uint64_t path, std::uint64_t step,
                              std::uint64_t component) const {
    std::uint64_t z = mix(seed_ ^ (path * kGolden));
    z = mix(z ^ (step * kGolden));
    return mix(z ^ (component * kGolden));
}

double CounterRng::uniform(std::uint64_t path, std::uint64_t step,
                           std::uint64_t component) const {
    // 53 significand bits, offset half an ulp to stay inside (0,1).
    return (static_cast<double>(raw(path, step, component) >> 11) + 0.5) *
           0x1.0p-53;
}

double CounterRng::normal(std::uint64_t path, std::uint64_t step,
                          std::uint64_t component) const {
    return inverse_normal_cdf(uniform(path, step, component));
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("inverse normal CDF defined on (0,1)");
    }

    // Acklam (2003) rational approximation, |rel err| < 1.15e-9.
    static constexpr double a[6] = {-3.969683028665376e+01,
                                    2.209460984245205e+02,
                                    -2.759285104469687e+02,
                                    1.383577518672690e+02,
                                    -3.066479806614716e+01,
                                    2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01,
                                    1.615858368580409e+02,
                                    -1.556989798598866e+02,
                                    6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03,
                                    -3.223964580411365e-01,
                                    -2.400758277161838e+00,
                                    -2.549732539343734e+00,
                                    4.374664141464968e+00,
                                    2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03,
                                    3.224671290700398e-01,
                                    2.445134137142996e+00,
                                    3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
             a[5]) *
            q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r +
             1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
              c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF brings the result to
    // machine precision.
    constexpr double kSqrt2Pi = 2.5066282746310002;
    const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace mmpr

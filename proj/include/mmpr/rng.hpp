#pragma once

#include <cstdint>

namespace mmpr {

/// Counter-based pseudo-random source built from the splitmix64
/// finalizer (Steele, Lea, Flood 2014 / Vigna 2015). Every draw is a
/// pure function of (seed, path, step, component), so streams are
/// splittable per path and results do not depend on evaluation order
/// or thread count.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t raw(std::uint64_t path, std::uint64_t step,
                      std::uint64_t component) const;

    /// Uniform draw in the open interval (0,1).
    double uniform(std::uint64_t path, std::uint64_t step,
                   std::uint64_t component) const;

    /// Standard normal via the inverse-CDF transform (no rejection, so
    /// identical counters give identical draws).
    double normal(std::uint64_t path, std::uint64_t step,
                  std::uint64_t component) const;

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

/// Inverse of the standard normal CDF; Acklam's rational approximation
/// polished with one Halley step, accurate to full double precision on
/// (0,1).
double inverse_normal_cdf(double p);

}  // namespace mmpr

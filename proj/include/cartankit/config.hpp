#ifndef CARTANKIT_CONFIG_HPP
#define CARTANKIT_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cartankit {

/// Global numeric tolerance used for rank decisions, membership tests and
/// projection/isometry validation.  Defaults to 1e-9.
double tolerance();
void set_tolerance(double tol);

/// Cap on |S| for the exhaustive enumerations (spectral sets, submonoids).
/// Defaults to 24; the CARTANKIT_CAP environment variable overrides it.
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);

class CapExceeded : public std::runtime_error {
public:
  CapExceeded(const std::string& what, std::size_t size, std::size_t cap)
      : std::runtime_error(what + ": size " + std::to_string(size) +
                           " exceeds enumeration cap " + std::to_string(cap)),
        size(size),
        cap(cap) {}
  std::size_t size;
  std::size_t cap;
};

/// Seeded random source.  mt19937_64 output is pinned by the standard; the
/// variates below avoid std::*_distribution (whose streams are
/// implementation-defined) so identical seeds give identical bytes everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return std::ldexp(static_cast<double>(gen_() >> 11), -53);
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(6.283185307179586476925287 * u2);
    have_spare_ = true;
    return r * std::cos(6.283185307179586476925287 * u2);
  }

  std::size_t pick(std::size_t n) {  // uniform over [0, n)
    return static_cast<std::size_t>(gen_() % n);
  }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cartankit

#endif

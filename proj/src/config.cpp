#include "cartankit/config.hpp"

#include <cstdlib>

namespace cartankit {

namespace {
double g_tolerance = 1e-9;

std::size_t initial_cap() {
  if (const char* env = std::getenv("CARTANKIT_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 24;
}

std::size_t g_cap = initial_cap();
}  // namespace

double tolerance() { return g_tolerance; }
void set_tolerance(double tol) { g_tolerance = tol; }

std::size_t enumeration_cap() { return g_cap; }
void set_enumeration_cap(std::size_t cap) { g_cap = cap; }

}  // namespace cartankit

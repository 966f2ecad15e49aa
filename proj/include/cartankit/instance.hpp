#ifndef CARTANKIT_INSTANCE_HPP
#define CARTANKIT_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cartankit/cartan_triple.hpp"
#include "cartankit/crossed.hpp"
#include "cartankit/extension.hpp"

namespace cartankit {

class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Declared expectations of an instance file; negatives (rejection, not a
/// Cartan triple) let expected-failure fixtures verify cleanly.
struct Expectations {
  std::optional<bool> cartan;
  std::optional<std::string> reject;           // expected validator defect
  std::optional<std::size_t> s_size;
  std::optional<std::size_t> intermediate_count;
  std::optional<bool> properly_outer_center;
  bool negative() const {
    return reject.has_value() || (cartan.has_value() && !*cartan);
  }
};

struct InstanceSpec {
  std::string name;
  std::vector<int> blocks;
  std::vector<std::vector<int>> atoms;
  std::optional<FiniteGroup> group;
  std::vector<Matrix> action_unitaries;
  std::vector<Matrix> action_maps;
  Expectations expect;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::optional<std::size_t> cap;

  static InstanceSpec load(const std::string& path);
  static InstanceSpec from_json(const nlohmann::json& j, const std::string& where);
};

/// The built artifacts of an instance: triple + extension when the validator
/// accepts, the crossed product when a group is present, and the rejection
/// when it does not.
struct BuiltInstance {
  InstanceSpec spec;
  std::optional<CartanTripleModel> triple;
  std::optional<ExtensionModel> extension;
  std::optional<CrossedProduct> crossed;
  std::optional<TripleRejection> rejection;

  bool usable() const { return extension.has_value(); }
};

/// Applies the instance's tol/cap overrides and constructs the models.
BuiltInstance build_instance(const InstanceSpec& spec);

}  // namespace cartankit

#endif

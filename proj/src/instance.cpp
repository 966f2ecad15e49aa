#include "cartankit/instance.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "cartankit/config.hpp"

namespace cartankit {

namespace {

using nlohmann::json;

[[noreturn]] void bail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bail(where, "matrix must be a non-empty array");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) bail(where, "matrix rows must be arrays");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      bail(where, "ragged matrix at row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) {
      const json& cell = j[r][c];
      if (cell.is_number()) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            cell.get<double>();
      } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() &&
                 cell[1].is_number()) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(cell[0].get<double>(), cell[1].get<double>());
      } else {
        bail(where, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                        ") must be a number or an [re, im] pair");
      }
    }
  }
  return m;
}

}  // namespace

InstanceSpec InstanceSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open instance file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return from_json(j, path);
}

InstanceSpec InstanceSpec::from_json(const json& j, const std::string& where) {
  if (!j.is_object()) bail(where, "top level must be an object");
  InstanceSpec spec;
  if (!j.contains("name") || !j["name"].is_string())
    bail(where, "missing string field 'name'");
  spec.name = j["name"].get<std::string>();
  if (!j.contains("blocks") || !j["blocks"].is_array())
    bail(where, "missing array field 'blocks'");
  for (const json& b : j["blocks"]) {
    if (!b.is_number_integer() || b.get<int>() <= 0)
      bail(where, "'blocks' entries must be positive integers");
    spec.blocks.push_back(b.get<int>());
  }
  if (!j.contains("atoms") || !j["atoms"].is_array())
    bail(where, "missing array field 'atoms'");
  for (const json& a : j["atoms"]) {
    if (!a.is_array()) bail(where, "'atoms' entries must be coordinate arrays");
    std::vector<int> atom;
    for (const json& c : a) {
      if (!c.is_number_integer()) bail(where, "atom coordinates must be integers");
      atom.push_back(c.get<int>());
    }
    spec.atoms.push_back(std::move(atom));
  }
  if (j.contains("group")) {
    const json& g = j["group"];
    if (!g.is_object() || !g.contains("table") || !g["table"].is_array())
      bail(where, "'group' needs a 'table' array");
    std::vector<std::vector<int>> table;
    for (const json& row : g["table"]) {
      std::vector<int> r;
      for (const json& v : row) r.push_back(v.get<int>());
      table.push_back(std::move(r));
    }
    try {
      spec.group = FiniteGroup::from_table(std::move(table));
    } catch (const std::invalid_argument& e) {
      bail(where, e.what());
    }
    if (j.contains("action_unitaries"))
      for (const json& u : j["action_unitaries"])
        spec.action_unitaries.push_back(parse_matrix(u, where + ":action_unitaries"));
    if (j.contains("action_maps"))
      for (const json& u : j["action_maps"])
        spec.action_maps.push_back(parse_matrix(u, where + ":action_maps"));
    if (spec.action_unitaries.empty() && spec.action_maps.empty())
      bail(where, "group instances need 'action_unitaries' or 'action_maps'");
  }
  if (j.contains("expect")) {
    const json& e = j["expect"];
    if (!e.is_object()) bail(where, "'expect' must be an object");
    if (e.contains("cartan")) spec.expect.cartan = e["cartan"].get<bool>();
    if (e.contains("reject")) spec.expect.reject = e["reject"].get<std::string>();
    if (e.contains("s_size"))
      spec.expect.s_size = e["s_size"].get<std::size_t>();
    if (e.contains("intermediate_count"))
      spec.expect.intermediate_count = e["intermediate_count"].get<std::size_t>();
    if (e.contains("properly_outer_center"))
      spec.expect.properly_outer_center = e["properly_outer_center"].get<bool>();
  }
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) spec.tol = j["tol"].get<double>();
  if (j.contains("caps")) {
    if (!j["caps"].is_object() || !j["caps"].contains("enumeration"))
      bail(where, "'caps' must be an object with 'enumeration'");
    spec.cap = j["caps"]["enumeration"].get<std::size_t>();
  }
  return spec;
}

BuiltInstance build_instance(const InstanceSpec& spec) {
  set_tolerance(spec.tol);
  if (spec.cap) set_enumeration_cap(*spec.cap);
  BuiltInstance built{spec, {}, {}, {}, {}};

  if (!spec.group) {
    try {
      CartanTripleModel triple =
          CartanTripleModel::build(TripleSpec{spec.blocks, spec.atoms});
      built.extension = ExtensionModel::build(triple);
      built.triple = std::move(triple);
    } catch (const TripleRejection& r) {
      built.rejection = r;
    }
    return built;
  }

  // group instance: blocks + atoms describe the acted-on algebra N; the atoms
  // must be its central atoms (block units)
  int total = 0;
  for (int b : spec.blocks) total += b;
  std::vector<Matrix> gens;
  {
    int offset = 0;
    for (int size : spec.blocks) {
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
          Matrix e = zero(total);
          e(offset + r, offset + c) = 1.0;
          gens.push_back(e);
        }
      offset += size;
    }
  }
  StarAlgebra n_alg = StarAlgebra::generated(gens, total);
  {
    // validate the declared atoms against the block units
    std::vector<Matrix> declared;
    for (const auto& atom : spec.atoms) {
      Matrix q = zero(total);
      for (int c : atom) {
        if (c < 0 || c >= total)
          throw ParseError(spec.name + ": atom coordinate out of range");
        q(c, c) = 1.0;
      }
      declared.push_back(q);
    }
    const auto& central = n_alg.minimal_central_projections();
    if (declared.size() != central.size())
      throw ParseError(spec.name + ": group instances need one atom per "
                                   "central block of N");
    for (const Matrix& q : declared) {
      bool matched = false;
      for (const Matrix& z : central)
        if (approx_equal(q, z, 1e-9)) matched = true;
      if (!matched)
        throw ParseError(spec.name + ": atoms must be the central atoms of N");
    }
  }

  GroupAction action =
      !spec.action_unitaries.empty()
          ? GroupAction::from_unitaries(n_alg, *spec.group, spec.action_unitaries)
          : GroupAction::from_basis_maps(n_alg, *spec.group, spec.action_maps);
  built.crossed = build_crossed_product(action);
  try {
    built.extension = build_crossed_extension(*built.crossed);
    built.triple = built.extension->triple();
  } catch (const TripleRejection& r) {
    built.rejection = r;
  }
  return built;
}

}  // namespace cartankit

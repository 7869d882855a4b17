#include "suncs/json_io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace suncs {

std::string group_label(const ModeLayout& layout) {
  return layout.n_group() == 1 ? "hw" : "su" + std::to_string(layout.n_group());
}

json basis_meta(const FockBasis& basis) {
  return {{"group", group_label(basis.layout())},
          {"reps", basis.layout().reps()},
          {"caps", basis.truncation().caps},
          {"size", basis.size()},
          {"ordering", "graded-lex"}};
}

BasisPtr basis_from_meta(const json& meta) {
  const auto group = meta.at("group").get<std::string>();
  ModeLayout layout;
  if (group != "hw") {
    if (group.rfind("su", 0) != 0) throw Error("basis meta: unknown group '" + group + "'");
    layout = ModeLayout(std::stoi(group.substr(2)), meta.at("reps").get<std::vector<int>>());
  }
  auto basis = build_basis(layout, {meta.at("caps").get<std::vector<int>>()});
  if (meta.contains("size") && meta.at("size").get<std::size_t>() != basis->size()) {
    throw BasisMismatchError("basis meta: size does not match the rebuilt basis");
  }
  return basis;
}

json operator_to_json(const SparseOperator& op) {
  json rows = json::array(), cols = json::array(), re = json::array(), im = json::array();
  for (const auto& t : op.triplets()) {
    rows.push_back(t.row);
    cols.push_back(t.col);
    re.push_back(t.value.real());
    im.push_back(t.value.imag());
  }
  return {{"dim", op.dim()}, {"rows", rows}, {"cols", cols}, {"re", re}, {"im", im}};
}

json complex_list_to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<Complex> complex_list_from_json(const json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw Error("complex values must be numbers or [re, im] pairs");
    }
  }
  return out;
}

json spec_to_json(const CoherentSpec& spec) {
  json params = json::array();
  for (const auto& p : spec.params) params.push_back(complex_list_to_json(p));
  json j = {{"kind", to_string(spec.kind)},
            {"group", group_label(spec.layout)},
            {"reps", spec.layout.reps()},
            {"caps", spec.truncation.caps},
            {"params", params}};
  if (spec.kind == CoherentKind::fixed_charge) j["q"] = spec.charges.q;
  if (spec.kind == CoherentKind::fixed_casimir) j["casimir"] = spec.casimirs;
  return j;
}

CoherentSpec spec_from_json(const json& j) {
  CoherentSpec spec;
  spec.kind = coherent_kind_from_string(j.at("kind").get<std::string>());
  const auto group = j.at("group").get<std::string>();
  if (group != "hw") spec.layout = ModeLayout(std::stoi(group.substr(2)), j.at("reps").get<std::vector<int>>());
  spec.truncation.caps = j.at("caps").get<std::vector<int>>();
  for (const auto& p : j.at("params")) spec.params.push_back(complex_list_from_json(p));
  if (j.contains("q")) spec.charges.q = j.at("q").get<std::vector<int>>();
  if (j.contains("casimir")) spec.casimirs = j.at("casimir").get<std::vector<int>>();
  return spec;
}

json state_to_json(const StateVector& v, const json& spec) {
  const auto& basis = *v.basis();
  json amps = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == Complex{}) continue;
    amps.push_back({{"index", i}, {"occupations", basis.state(i).quanta}, {"re", v[i].real()}, {"im", v[i].imag()}});
  }
  return {{"spec", spec}, {"basis_meta", basis_meta(basis)}, {"amplitudes", amps}};
}

LoadedState state_from_json(const json& j) {
  auto basis = basis_from_meta(j.at("basis_meta"));
  StateVector v(basis);
  const json spec = j.value("spec", json::object());
  std::optional<ChargeVector> charge;
  if (spec.value("kind", "") == "charge" && spec.contains("q")) charge = ChargeVector{spec.at("q").get<std::vector<int>>()};
  for (const auto& a : j.at("amplitudes")) {
    const auto index = a.at("index").get<std::size_t>();
    const OccupationState occ{a.at("occupations").get<std::vector<int>>()};
    if (index >= basis->size() || basis->state(index) != occ) {
      throw BasisMismatchError("state import: index " + std::to_string(index) + " does not match its occupations");
    }
    if (charge && basis->charge(index) != *charge) {
      throw Error("state import: amplitude at index " + std::to_string(index) + " lies outside the charge sector");
    }
    v[index] = {a.at("re").get<double>(), a.at("im").get<double>()};
  }
  return {spec, std::move(v)};
}

std::string state_to_csv(const StateVector& v) {
  std::ostringstream out;
  out << std::setprecision(17) << "index,occupations,re,im,abs,arg\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == Complex{}) continue;
    out << i << ',';
    const auto& q = v.basis()->state(i).quanta;
    for (std::size_t k = 0; k < q.size(); ++k) out << (k ? " " : "") << q[k];
    out << ',' << v[i].real() << ',' << v[i].imag() << ',' << std::abs(v[i]) << ',' << std::arg(v[i]) << '\n';
  }
  return out.str();
}

DiagonalFunction deformation_from_json(const json& j) {
  if (j.is_string()) return builtin_deformation(j.get<std::string>());
  const auto kind = j.value("kind", "builtin");
  if (kind == "builtin") return builtin_deformation(j.at("name").get<std::string>());
  if (kind == "table") {
    std::vector<TableEntry> entries;
    for (const auto& e : j.at("entries")) {
      entries.push_back({e.at("occ").get<std::vector<int>>(), e.at("value").get<double>()});
    }
    return table_deformation(j.value("name", "table"), entries);
  }
  throw Error("deformation kind must be 'builtin' or 'table'");
}

}  // namespace suncs

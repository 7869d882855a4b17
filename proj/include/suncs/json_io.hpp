#pragma once

// JSON forms of bases, operators, states, specs and deformations.

#include <string>

#include "suncs/nonlinear.hpp"
#include "json.hpp"

namespace suncs {

using nlohmann::json;

std::string group_label(const ModeLayout& layout);

// {group, reps, caps, size, ordering}
json basis_meta(const FockBasis& basis);
BasisPtr basis_from_meta(const json& meta);

// Coordinate list {rows, cols, re, im}.
json operator_to_json(const SparseOperator& op);

json complex_list_to_json(const std::vector<Complex>& v);
std::vector<Complex> complex_list_from_json(const json& j);

json spec_to_json(const CoherentSpec& spec);
CoherentSpec spec_from_json(const json& j);

// {spec, basis_meta, amplitudes: [{index, occupations, re, im}]}; only
// nonzero amplitudes are listed.
json state_to_json(const StateVector& v, const json& spec);

struct LoadedState {
  json spec;
  StateVector state;
};
// Rebuilds the basis, checks every index against its occupations and, for
// fixed-charge specs, that every amplitude lies in the charge sector.
LoadedState state_from_json(const json& j);

// index, occupations, re, im, abs, arg
std::string state_to_csv(const StateVector& v);

// {"kind": "builtin", "name": ...} or {"kind": "table", "entries": [{"occ": [...], "value": x}]}
DiagonalFunction deformation_from_json(const json& j);

}  // namespace suncs

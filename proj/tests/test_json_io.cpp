#include <cmath>
#include <sstream>

#include "doctest.h"
#include "suncs/json_io.hpp"

using namespace suncs;

namespace {

CoherentSpec su3_spec() {
  CoherentSpec spec;
  spec.layout = ModeLayout::standard(3);
  spec.truncation = {{3, 3}};
  spec.params = {{{0.3, 0.1}, {0.2, -0.2}, {0.25, 0.0}}, {{0.1, 0.4}, {0.3, 0.0}, {-0.2, 0.1}}};
  spec.charges = {{0, 2}};
  return spec;
}

}  // namespace

TEST_CASE("basis meta round trip") {
  auto basis = build_basis(ModeLayout::standard(3), {{2, 3}});
  const auto meta = basis_meta(*basis);
  CHECK(meta["group"] == "su3");
  CHECK(meta["ordering"] == "graded-lex");
  CHECK(basis_from_meta(meta)->same_space(*basis));
  auto bad = meta;
  bad["size"] = 3;
  CHECK_THROWS_AS(basis_from_meta(bad), BasisMismatchError);
  CHECK(basis_from_meta(basis_meta(*build_basis(ModeLayout::heisenberg_weyl(), {{4}})))->size() == 5);
}

TEST_CASE("spec round trip") {
  const auto spec = su3_spec();
  const auto back = spec_from_json(spec_to_json(spec));
  CHECK(back.layout == spec.layout);
  CHECK(back.truncation == spec.truncation);
  CHECK(back.params == spec.params);
  CHECK(back.charges == spec.charges);
  CHECK(spec_to_json(spec)["kind"] == "charge");
}

TEST_CASE("state round trip keeps amplitudes bit for bit") {
  const auto spec = su3_spec();
  const auto psi = charge_state_projector(spec);
  const json j = state_to_json(psi, spec_to_json(spec));
  const auto loaded = state_from_json(json::parse(j.dump()));
  CHECK(max_abs_diff(loaded.state, psi) == 0.0);
  CHECK(loaded.spec["q"] == json::array({0, 2}));

  auto tampered = j;
  tampered["amplitudes"][0]["index"] = tampered["amplitudes"][0]["index"].get<std::size_t>() + 1;
  CHECK_THROWS_AS(state_from_json(tampered), BasisMismatchError);

  // An amplitude outside the declared sector is rejected.
  auto off = j;
  auto basis = psi.basis();
  const std::size_t vac = basis->index_of({{0, 0, 0, 0, 0, 0}});
  off["amplitudes"].push_back({{"index", vac}, {"occupations", basis->state(vac).quanta}, {"re", 1.0}, {"im", 0.0}});
  CHECK_THROWS_AS(state_from_json(off), Error);
}

TEST_CASE("operators and csv") {
  auto basis = build_basis(ModeLayout::heisenberg_weyl(), {{2}});
  const auto j = operator_to_json(ladder(basis, 1, 0, LadderKind::raise));
  CHECK(j["dim"] == 3);
  CHECK(j["rows"] == json::array({1, 2}));
  CHECK(j["cols"] == json::array({0, 1}));
  CHECK(j["re"][1].get<double>() == doctest::Approx(std::sqrt(2.0)));

  const auto csv = state_to_csv(hw_state({0.5, 0.0}, 2));
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "index,occupations,re,im,abs,arg");
  CHECK(first.rfind("0,0,1,0,1,0", 0) == 0);
}

TEST_CASE("complex lists and deformations") {
  const auto v = complex_list_from_json(json::parse("[1.5, [0.0, -2.0]]"));
  CHECK(v == std::vector<Complex>{{1.5, 0.0}, {0.0, -2.0}});
  CHECK_THROWS_AS(complex_list_from_json(json::parse("[[1, 2, 3]]")), Error);

  CHECK(deformation_from_json("total_plus_one").name == "total_plus_one");
  const auto table = deformation_from_json(json::parse(R"({"kind":"table","entries":[{"occ":[0,1],"value":3.0}]})"));
  const std::vector<int> occ{0, 1};
  CHECK(table(occ) == 3.0);
  CHECK_THROWS_AS(deformation_from_json(json::parse(R"({"kind":"spline"})")), Error);
}

#include <cmath>

#include "doctest.h"
#include "suncs/sun_algebra.hpp"

using namespace suncs;

namespace {

const Complex I{0.0, 1.0};

// Gell-Mann matrices written out by hand.
std::vector<DenseMatrix> gell_mann() {
  std::vector<DenseMatrix> l(8, DenseMatrix::Zero(3, 3));
  l[0](0, 1) = l[0](1, 0) = 1.0;
  l[1](0, 1) = -I;
  l[1](1, 0) = I;
  l[2](0, 0) = 1.0;
  l[2](1, 1) = -1.0;
  l[3](0, 2) = l[3](2, 0) = 1.0;
  l[4](0, 2) = -I;
  l[4](2, 0) = I;
  l[5](1, 2) = l[5](2, 1) = 1.0;
  l[6](1, 2) = -I;
  l[6](2, 1) = I;
  const double s = 1.0 / std::sqrt(3.0);
  l[7](0, 0) = l[7](1, 1) = s;
  l[7](2, 2) = -2.0 * s;
  return l;
}

double trace_formula(const std::vector<DenseMatrix>& l, int a, int b, int c) {
  const DenseMatrix comm = l[a] * l[b] - l[b] * l[a];
  return ((comm * l[c]).trace() / (4.0 * I)).real();
}

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("fundamental generators: Pauli and Gell-Mann sets") {
  const auto su2 = fundamental_generators(2);
  REQUIRE(su2.hermitian.size() == 3);
  DenseMatrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  CHECK(max_abs(su2.hermitian[0] - s1) < 1e-15);
  CHECK(max_abs(su2.hermitian[1] - s2) < 1e-15);
  CHECK(max_abs(su2.hermitian[2] - s3) < 1e-15);

  const auto su3 = fundamental_generators(3);
  const auto gm = gell_mann();
  REQUIRE(su3.hermitian.size() == 8);
  for (int a = 0; a < 8; ++a) CHECK(max_abs(su3.hermitian[a] - gm[a]) < 1e-15);

  CHECK(max_abs(su3.cartan[0] - DenseMatrix(Eigen::Vector3cd(1, -1, 0).asDiagonal())) == 0.0);
  CHECK(max_abs(su3.cartan[1] - DenseMatrix(Eigen::Vector3cd(1, 1, -2).asDiagonal())) == 0.0);
  CHECK(su3.ladders.size() == 6);
}

TEST_CASE("conjugate representation") {
  const auto su2 = fundamental_generators(2);
  const auto bar = conjugate_generators(su2);
  CHECK(max_abs(bar.hermitian[2] + su2.hermitian[2]) == 0.0);
  // The third mode carries lambda^8 weight +2/sqrt(3), i.e. Q^8 = +2/(2 sqrt 3).
  const auto su3bar = conjugate_generators(fundamental_generators(3));
  CHECK(su3bar.hermitian[7](2, 2).real() == doctest::Approx(2.0 / std::sqrt(3.0)));
  for (const auto& m : su3bar.hermitian) {
    for (const auto& n : su3bar.hermitian) {
      const double tr = (m * n).trace().real();
      CHECK((std::abs(tr) < 1e-14 || std::abs(tr - 2.0) < 1e-14));
    }
  }
}

TEST_CASE("structure constants") {
  const auto f2 = structure_constants(fundamental_generators(2));
  CHECK(f2(0, 1, 2) == doctest::Approx(1.0));
  CHECK(f2(1, 0, 2) == doctest::Approx(-1.0));

  const auto f3 = structure_constants(fundamental_generators(3));
  const auto gm = gell_mann();
  CHECK(f3(0, 1, 2) == doctest::Approx(trace_formula(gm, 0, 1, 2)));
  CHECK(f3(0, 1, 2) == doctest::Approx(1.0));
  CHECK(f3(3, 4, 7) == doctest::Approx(trace_formula(gm, 3, 4, 7)));
  CHECK(f3(3, 4, 7) == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(f3.antisymmetry_violation < 1e-12);
  CHECK(f3.cartan_weyl_fit_residual < 1e-12);

  // [E^{12}, E^{21}] = e^{11} - e^{22} = H^1.
  const auto gens3 = fundamental_generators(3);
  bool found = false;
  for (const auto& p : f3.cartan_projections) {
    const auto& l = gens3.ladders[p.alpha];
    if (l.i == 0 && l.j == 1) {
      CHECK(p.coefficients[0] == doctest::Approx(1.0));
      CHECK(std::abs(p.coefficients[1]) < 1e-14);
      found = true;
    }
  }
  CHECK(found);

  auto bad = fundamental_generators(3);
  bad.hermitian[0] *= 2.0;
  CHECK_THROWS_AS(structure_constants(bad), Error);
}

TEST_CASE("exterior powers reproduce the conjugate rep up to relabeling") {
  const auto ext = exterior_power_generators(3, 2);
  CHECK(ext.dim() == 3);
  const auto f = structure_constants(ext);
  const auto f3 = structure_constants(fundamental_generators(3));
  double diff = 0.0;
  for (std::size_t k = 0; k < f.f.size(); ++k) diff = std::max(diff, std::abs(f.f[k] - f3.f[k]));
  CHECK(diff < 1e-12);
}

TEST_CASE("Schwinger charges") {
  auto su2 = build_basis(ModeLayout(2, {1}), {{4}});
  const auto g2 = schwinger_generators(su2);
  const auto q = add(number_operator(su2, 1, 0), number_operator(su2, 1, 1), 1.0, -1.0);
  CHECK(max_abs_diff(g2.charges[0], q) == 0.0);
  CHECK(max_abs_diff(scale(g2.hermitian[2], 2.0), q) < 1e-15);

  auto su3 = build_basis(ModeLayout::standard(3), {{2, 2}});
  const auto g3 = schwinger_generators(su3);
  SparseOperator q3(su3);
  q3 = add(q3, number_operator(su3, 1, 0), 1.0, 0.5);
  q3 = add(q3, number_operator(su3, 1, 1), 1.0, -0.5);
  q3 = add(q3, number_operator(su3, 2, 0), 1.0, -0.5);
  q3 = add(q3, number_operator(su3, 2, 1), 1.0, 0.5);
  CHECK(max_abs_diff(g3.hermitian[2], q3) < 1e-15);
  const auto idx = su3->index_of({{1, 0, 0, 0, 0, 0}});
  CHECK(g3.hermitian[2].at(idx, idx).real() == doctest::Approx(0.5));

  // Integer charges agree with the basis bookkeeping.
  for (std::size_t i = 0; i < su3->size(); ++i) {
    for (std::size_t a = 0; a < 2; ++a) CHECK(g3.charges[a].at(i, i).real() == su3->charge(i).q[a]);
  }
}

TEST_CASE("Casimirs") {
  auto su3 = build_basis(ModeLayout::standard(3), {{2, 2}});
  const auto c = casimir_operators(su3);
  const auto idx = su3->index_of({{1, 1, 0, 0, 0, 0}});
  CHECK(c[0].at(idx, idx).real() == 2.0);
  CHECK(casimir_centrality_residual(schwinger_generators(su3)) < 1e-14);

  auto su2 = build_basis(ModeLayout(2, {1}), {{6}});
  CHECK(spin_casimir_residual(schwinger_generators(su2)) < 1e-12);
}

TEST_CASE("Lie closure on truncated bases") {
  struct Case {
    int n;
    std::vector<int> reps;
    std::vector<int> caps;
  };
  for (const auto& c : {Case{2, {1}, {4}}, Case{3, {1, 2}, {3, 3}}, Case{4, {1, 3}, {2, 2}}}) {
    auto basis = build_basis(ModeLayout(c.n, c.reps), {c.caps});
    const auto gens = schwinger_generators(basis);
    const auto report = verify_algebra(gens, structure_constants(fundamental_generators(c.n)), 1e-12);
    CHECK(report.pass());
    CHECK(report.extra["max_residual"].get<double>() < 1e-12);
    const std::size_t dim = static_cast<std::size_t>(c.n * c.n - 1);
    CHECK(report.extra["pairs_checked"].get<std::size_t>() == dim * (dim - 1) / 2);
  }
}

TEST_CASE("intermediate reps need supplied matrices") {
  auto basis = build_basis(ModeLayout(4, {1, 2, 3}), {{1, 1, 1}});
  CHECK_THROWS_AS(schwinger_generators(basis), UnsupportedRepError);
  const auto gens = schwinger_generators(basis, {{2, exterior_power_generators(4, 2)}});
  const auto report = verify_algebra(gens, structure_constants(fundamental_generators(4)), 1e-12);
  CHECK(report.pass());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    for (std::size_t a = 0; a < 3; ++a) CHECK(gens.charges[a].at(i, i).real() == basis->charge(i).q[a]);
  }
}

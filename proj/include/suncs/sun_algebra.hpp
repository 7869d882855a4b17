#pragma once

// SU(N) fundamental-representation matrices and their Schwinger-boson
// realisation on a FockBasis.
//
// Two bases are carried side by side:
//   * Cartan-Weyl: H^a = sum_{i<=a} e^{ii} - a e^{a+1,a+1} (integer weights,
//     unnormalised) and ladders E^{ij} = e^{ij}, i != j, with root K(ij).
//   * Hermitian generalized Gell-Mann matrices lambda^a, tr(l^a l^b) = 2 delta,
//     ordered so N=2 gives the Pauli matrices and N=3 the Gell-Mann set.

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "suncs/bosons.hpp"
#include "suncs/report.hpp"

namespace suncs {

using DenseMatrix = Eigen::MatrixXcd;

struct LadderGenerator {
  int i = 0;  // 0-based row index of e^{ij}
  int j = 0;
  DenseMatrix matrix;
  std::vector<int> root;  // K^a(ij) = h^a_i - h^a_j, a = 1..N-1
};

struct GeneratorSet {
  int n_group = 0;
  int rep = 1;
  std::vector<DenseMatrix> cartan;       // N-1 matrices
  std::vector<LadderGenerator> ladders;  // N(N-1) matrices
  std::vector<DenseMatrix> hermitian;    // N^2-1 matrices

  Eigen::Index dim() const { return cartan.empty() ? 0 : cartan.front().rows(); }
};

GeneratorSet fundamental_generators(int n_group);
// X -> -X^T on every generator: the conjugate representation (-lambda^*).
GeneratorSet conjugate_generators(const GeneratorSet& gens);
// F-th antisymmetric power of the defining representation on F-subsets.
GeneratorSet exterior_power_generators(int n_group, int rep);

// sum_{k,l} M_kl a^dagger_k(F) a_l(F) for the rep at `rep_pos`.
SparseOperator bilinear(const BasisPtr& basis, std::size_t rep_pos, const DenseMatrix& matrix);

struct SchwingerGenerators {
  BasisPtr basis;
  // Integer charges Q_a = sum_F a^dagger(F) H^a(F) a(F), a = 1..N-1.
  std::vector<SparseOperator> charges;
  // Q^a = 1/2 sum_F a^dagger(F) lambda^a(F) a(F).
  std::vector<SparseOperator> hermitian;
  std::vector<SparseOperator> ladders;
  std::vector<std::pair<int, int>> ladder_labels;
  std::vector<std::vector<int>> roots;
};

// Rep matrices per F; F=1 and F=N-1 default to fundamental/conjugate.
using RepGeneratorMap = std::map<int, GeneratorSet>;

SchwingerGenerators schwinger_generators(const BasisPtr& basis, const RepGeneratorMap& supplied = {});

// Total number operator C(F) for every rep in the layout.
std::vector<SparseOperator> casimir_operators(const BasisPtr& basis);

struct LadderCoefficient {
  std::size_t alpha = 0;  // indices into GeneratorSet::ladders
  std::size_t beta = 0;
  std::size_t gamma = 0;
  Complex value;  // [E^alpha, E^beta] = value * E^gamma
};

struct CartanProjection {
  std::size_t alpha = 0;  // [E^alpha, E^-alpha] = sum_a coeff[a] H^a
  std::vector<double> coefficients;
};

struct StructureConstants {
  int dim = 0;  // N^2 - 1
  std::vector<double> f;
  std::vector<LadderCoefficient> ladder_coefficients;
  std::vector<CartanProjection> cartan_projections;
  double antisymmetry_violation = 0.0;
  double cartan_weyl_fit_residual = 0.0;

  double operator()(int a, int b, int c) const {
    return f[static_cast<std::size_t>((a * dim + b) * dim + c)];
  }
};

// f^{abc} = tr([l^a, l^b] l^c) / 4i; throws if tr(l^a l^b) != 2 delta.
StructureConstants structure_constants(const GeneratorSet& gens);

// max |[Q^a,Q^b] - i f^{abc} Q^c| over all pairs, plus Cartan commutativity
// and root relations of the Schwinger charges.
VerificationReport verify_algebra(const SchwingerGenerators& gens, const StructureConstants& f, double tol);

// [Q^a, C(F)] for every hermitian generator and every rep.
double casimir_centrality_residual(const SchwingerGenerators& gens);

// SU(2): J.J - C(C+2)/4 as a matrix.
double spin_casimir_residual(const SchwingerGenerators& gens);

}  // namespace suncs

#pragma once

// Heisenberg-Weyl, fixed-Casimir and fixed-charge coherent states.
//
// States are unnormalized throughout. Parameter vectors are stored per rep
// position of the layout: params[0] = z, params[1] = w for reps {1, N-1}.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "suncs/bosons.hpp"
#include "suncs/report.hpp"

namespace suncs {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d = 1);

  bool is_integer() const { return den == 1; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Fraction operator+(Fraction a, Fraction b);
  friend Fraction operator-(Fraction a, Fraction b);
  friend Fraction operator*(Fraction a, Fraction b);
  friend bool operator==(Fraction a, Fraction b) { return a.num == b.num && a.den == b.den; }
};

enum class CoherentKind { heisenberg_weyl, fixed_casimir, fixed_charge };

std::string to_string(CoherentKind kind);
CoherentKind coherent_kind_from_string(const std::string& name);

using ParamVectors = std::vector<std::vector<Complex>>;

struct CoherentSpec {
  CoherentKind kind = CoherentKind::fixed_charge;
  ModeLayout layout;
  Truncation truncation;
  ParamVectors params;
  ChargeVector charges;       // fixed_charge
  std::vector<int> casimirs;  // fixed_casimir, one per rep

  void validate() const;  // shapes only
};

// l_i = sum_{a=i}^{N-1} (q_a - q_{a-1}) / a, q_0 = 0, for i = 1..N-1.
struct SectorSolution {
  int n_group = 0;
  ChargeVector q;
  std::vector<Fraction> l;

  bool integral() const;
  bool feasible() const;  // integral and non-negative
  std::vector<int> integer_l() const;  // throws InfeasibleError
};

SectorSolution solve_sector(int n_group, const ChargeVector& q);

// a-occupations n_1..n_N of the sector state with b-occupations m (size N,
// or empty when there is no conjugate rep) and n_N:
//   n_i = n_N + l_i + (m_i - m_N).
// Throws InfeasibleError naming the first negative or fractional component.
std::vector<int> solve_occupations(int n_group, const ChargeVector& q, const std::vector<int>& m, int n_last);

// The literal textbook rule n_i = n_N + l_i + sum_{a=i}^{N-1} a (m_a - m_{a+1}),
// evaluated without any feasibility check.
std::vector<Fraction> paper_formula_occupations(int n_group, const ChargeVector& q, const std::vector<int>& m,
                                                int n_last);

// prod z^n / sqrt(n!) over every mode; valid for occupations beyond any cap.
Complex hw_product_amplitude(const ModeLayout& layout, const ParamVectors& params, const OccupationState& s);
StateVector hw_product_state(const BasisPtr& basis, const ParamVectors& params);

// exp(z a^dagger)|0> on levels 0..cap.
StateVector hw_state(Complex z, int cap);

// n! sum_r z1^{n-r} z2^r / sqrt((n-r)! r!) |n-r, r>; requires |z1|^2 + |z2|^2 = 1.
StateVector su2_spin_state(Complex z1, Complex z2, int n);
std::pair<Complex, Complex> euler_to_z(double theta, double phi, double psi);

StateVector project_charge(const StateVector& v, const ChargeVector& q);
StateVector project_casimir(const StateVector& v, const std::vector<int>& casimirs);

StateVector charge_state_projector(const CoherentSpec& spec);
StateVector charge_state_series(const CoherentSpec& spec);
StateVector charge_state_exponential(const CoherentSpec& spec);

// Optional deformations for the a-type (f) and b-type (g) creation chains.
// Each function sees the occupation block of its own rep.
struct Deformation {
  DiagonalFunction f = constant_function(1.0);
  DiagonalFunction g = constant_function(1.0);
};

// C0 exp[prod z H_f prod a^dag + prod w H_g prod b^dag] exp[sum z_i w_i (1/N_i) a_i^dag b_i^dag] |l,0;0>,
// every diagonal factor applied after its creation monomial.
StateVector exponential_state(const CoherentSpec& spec, const Deformation& deformation);

// Mode that stays empty in the base state: the last one, or the first for
// SU(2) with q < 0.
std::size_t pivot_mode(const CoherentSpec& spec);

StateVector casimir_state(const CoherentSpec& spec);

// Amplitude of a state at arbitrary occupations (including beyond caps).
using AmplitudeOracle = std::function<Complex(const OccupationState&)>;
using OccupationWeight = std::function<double(const OccupationState&)>;

struct AnnihilationResidual {
  double interior = 0.0;   // max abs over targets whose raised partner lies inside the caps
  double boundary = 0.0;   // L2 over the remaining targets
  double bound = 0.0;      // L2 of the omitted terms the truncation cut off
  std::size_t interior_states = 0;
  std::size_t boundary_states = 0;
};

// Residual of  D(N) prod_{modes} a  psi  =  eigenvalue psi, D optional.
AnnihilationResidual annihilation_residual(const StateVector& psi, const std::vector<ModeRef>& modes,
                                           Complex eigenvalue, const AmplitudeOracle& oracle,
                                           const OccupationWeight& prefactor = {});

void add_annihilation_checks(VerificationReport& report, const std::string& name, const AnnihilationResidual& r,
                             double tol);

// Q_a, a_i b_i, prod a and prod b relations for a fixed-charge state built
// from `spec`; the oracle supplies amplitudes beyond the caps.
VerificationReport check_charge_state(const StateVector& psi, const CoherentSpec& spec, const AmplitudeOracle& oracle,
                                      double tol);

// C(F) psi = c_F psi for every rep.
VerificationReport check_casimir_state(const StateVector& psi, const std::vector<int>& casimirs, double tol);

// a psi = z psi for the Heisenberg-Weyl state.
VerificationReport check_hw_state(const StateVector& psi, Complex z, double tol);

}  // namespace suncs

#pragma once

// f-deformed (nonlinear) coherent states: eigenstates of f(N) * prod a.

#include <string>
#include <vector>

#include "suncs/coherent.hpp"

namespace suncs {

// Built-ins act on the occupation block of one rep:
//   one, n_last_plus_one, inv_n_last_plus_one, total_plus_one.
DiagonalFunction builtin_deformation(const std::string& name);
const std::vector<std::string>& builtin_deformation_names();

struct TableEntry {
  std::vector<int> occupations;
  double value = 0.0;
};
// Defined exactly on the listed occupation tuples.
DiagonalFunction table_deformation(std::string name, const std::vector<TableEntry>& entries);

struct NonlinearSpec {
  CoherentSpec base;
  Deformation deformation;
};

// c(n) z^n / sqrt(n!), c(n) = prod_{k<n} 1/f(k).
StateVector nl_hw_state(Complex z, const DiagonalFunction& f, int cap);

// exp[prod z H_f prod a^dag + prod w H_g prod b^dag] applied to the
// pair-exponentiated base state; f = g = 1 gives charge_state_exponential.
StateVector nl_charge_state(const NonlinearSpec& spec);

// Amplitude from the coefficient recursion: descend each creation chain to
// its seed, take the undeformed seed amplitude, then climb with
// prod z / (f(s) sqrt(prod (s_i + 1))). Zero off the chain cone.
Complex nl_recursion_amplitude(const NonlinearSpec& spec, const OccupationState& s);
StateVector nl_charge_state_recursion(const NonlinearSpec& spec);

// Charges plus f(N) prod a and g(M) prod b relations.
VerificationReport check_nl_state(const StateVector& psi, const NonlinearSpec& spec, double tol);
// f(N) a psi = z psi on the single oscillator.
VerificationReport check_nl_hw_state(const StateVector& psi, Complex z, const DiagonalFunction& f, double tol);

// (prod a^dag)^n prod_{k=1}^n H_f(N+k) against [H_f(N) prod a^dag]^n as
// matrices on the basis, for n = 1..n_max. The last mode of the rep is left
// out of the 1/N product.
VerificationReport check_pullthrough(const BasisPtr& basis, std::size_t rep_pos, const DiagonalFunction& f, int n_max,
                                     double tol);

}  // namespace suncs

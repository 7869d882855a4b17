#include "suncs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "suncs/sun_algebra.hpp"

namespace suncs {

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error("Fraction: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::string Fraction::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Fraction operator+(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Fraction operator-(Fraction a, Fraction b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Fraction operator*(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }

std::string to_string(CoherentKind kind) {
  switch (kind) {
    case CoherentKind::heisenberg_weyl: return "hw";
    case CoherentKind::fixed_casimir: return "casimir";
    case CoherentKind::fixed_charge: return "charge";
  }
  return "charge";
}

CoherentKind coherent_kind_from_string(const std::string& name) {
  if (name == "hw") return CoherentKind::heisenberg_weyl;
  if (name == "casimir") return CoherentKind::fixed_casimir;
  if (name == "charge") return CoherentKind::fixed_charge;
  throw Error("unknown coherent-state kind '" + name + "'");
}

void CoherentSpec::validate() const {
  if (truncation.caps.size() != layout.rep_count()) throw Error("spec: one cap per rep required");
  if (params.size() != layout.rep_count()) throw Error("spec: one parameter vector per rep required");
  for (std::size_t r = 0; r < layout.rep_count(); ++r) {
    if (params[r].size() != layout.mode_count(r)) {
      throw Error("spec: parameter vector for rep F=" + std::to_string(layout.reps()[r]) + " needs " +
                  std::to_string(layout.mode_count(r)) + " entries");
    }
  }
  if (kind == CoherentKind::fixed_charge && charges.q.size() != layout.charge_count()) {
    throw Error("spec: expected " + std::to_string(layout.charge_count()) + " charges");
  }
  if (kind == CoherentKind::fixed_casimir && casimirs.size() != layout.rep_count()) {
    throw Error("spec: expected one Casimir value per rep");
  }
}

bool SectorSolution::integral() const {
  return std::all_of(l.begin(), l.end(), [](const Fraction& f) { return f.is_integer(); });
}

bool SectorSolution::feasible() const {
  return integral() && std::all_of(l.begin(), l.end(), [](const Fraction& f) { return f.num >= 0; });
}

std::vector<int> SectorSolution::integer_l() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!l[i].is_integer() || l[i].num < 0) {
      throw InfeasibleError("charges admit no base state: l_" + std::to_string(i + 1) + " = " + l[i].str());
    }
    out.push_back(static_cast<int>(l[i].num));
  }
  return out;
}

SectorSolution solve_sector(int n_group, const ChargeVector& q) {
  if (n_group < 2) throw Error("solve_sector: N must be >= 2");
  if (q.q.size() != static_cast<std::size_t>(n_group - 1)) throw Error("solve_sector: expected N-1 charges");
  SectorSolution s{n_group, q, {}};
  for (int i = 1; i < n_group; ++i) {
    Fraction sum;
    for (int a = i; a < n_group; ++a) {
      const int prev = a > 1 ? q.q[static_cast<std::size_t>(a - 2)] : 0;
      sum = sum + Fraction(q.q[static_cast<std::size_t>(a - 1)] - prev, a);
    }
    s.l.push_back(sum);
  }
  return s;
}

namespace {

std::vector<Fraction> occupations_from(int n_group, const SectorSolution& sol, const std::vector<int>& m, int n_last) {
  const auto n = static_cast<std::size_t>(n_group);
  if (!m.empty() && m.size() != n) throw Error("expected " + std::to_string(n) + " b-occupations");
  std::vector<Fraction> out(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int shift = m.empty() ? 0 : m[i] - m[n - 1];
    out[i] = Fraction(n_last + shift) + sol.l[i];
  }
  out[n - 1] = Fraction(n_last);
  return out;
}

Complex amplitude_factor(Complex z, int n) {
  Complex a = 1.0;
  for (int k = 1; k <= n; ++k) a *= z / std::sqrt(static_cast<double>(k));
  return a;
}

bool has_conjugate_block(const ModeLayout& layout) {
  return layout.rep_count() == 2 && layout.reps()[0] == 1 && layout.reps()[1] == layout.n_group() - 1;
}

void require_closed_form_layout(const ModeLayout& layout, const char* who) {
  const bool ok = layout.n_group() >= 2 &&
                  ((layout.rep_count() == 1 && layout.reps()[0] == 1) || has_conjugate_block(layout));
  if (!ok) throw UnsupportedRepError(std::string(who) + ": closed forms need reps {1} or {1, N-1}");
}

// All vectors of `parts` non-negative integers with sum <= cap.
void for_each_composition(std::size_t parts, int cap, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> v(parts, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == parts) {
      fn(v);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      v[k] = x;
      rec(k + 1, left - x);
    }
    v[k] = 0;
  };
  rec(0, cap);
}

}  // namespace

std::vector<int> solve_occupations(int n_group, const ChargeVector& q, const std::vector<int>& m, int n_last) {
  const auto sol = solve_sector(n_group, q);
  const auto frac = occupations_from(n_group, sol, m, n_last);
  std::vector<int> out;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    if (!frac[i].is_integer() || frac[i].num < 0) {
      throw InfeasibleError("no occupation solution: n_" + std::to_string(i + 1) + " = " + frac[i].str());
    }
    out.push_back(static_cast<int>(frac[i].num));
  }
  return out;
}

std::vector<Fraction> paper_formula_occupations(int n_group, const ChargeVector& q, const std::vector<int>& m,
                                                int n_last) {
  const auto sol = solve_sector(n_group, q);
  const auto n = static_cast<std::size_t>(n_group);
  std::vector<Fraction> out(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Fraction v = Fraction(n_last) + sol.l[i];
    if (!m.empty()) {
      for (std::size_t a = i + 1; a < n; ++a) v = v + Fraction(static_cast<std::int64_t>(a) * (m[a - 1] - m[a]));
    }
    out[i] = v;
  }
  out[n - 1] = Fraction(n_last);
  return out;
}

Complex hw_product_amplitude(const ModeLayout& layout, const ParamVectors& params, const OccupationState& s) {
  Complex amp = 1.0;
  for (std::size_t r = 0; r < layout.rep_count(); ++r) {
    const std::size_t off = layout.offset(r);
    for (std::size_t k = 0; k < layout.mode_count(r); ++k) amp *= amplitude_factor(params[r][k], s.quanta[off + k]);
  }
  return amp;
}

StateVector hw_product_state(const BasisPtr& basis, const ParamVectors& params) {
  StateVector v(basis);
  for (std::size_t i = 0; i < basis->size(); ++i) v[i] = hw_product_amplitude(basis->layout(), params, basis->state(i));
  return v;
}

StateVector hw_state(Complex z, int cap) {
  if (cap < 0) throw Error("hw_state: cap must be >= 0");
  auto basis = build_basis(ModeLayout::heisenberg_weyl(), {{cap}});
  return hw_product_state(basis, {{z}});
}

StateVector su2_spin_state(Complex z1, Complex z2, int n) {
  if (n < 0) throw Error("su2_spin_state: n must be >= 0");
  const double norm2 = std::norm(z1) + std::norm(z2);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw ConstraintError("su2_spin_state: |z1|^2 + |z2|^2 = " + std::to_string(norm2) + ", expected 1");
  }
  auto basis = build_basis(ModeLayout(2, {1}), {{n}});
  StateVector v = project_casimir(hw_product_state(basis, {{z1, z2}}), {n});
  v *= Complex(std::tgamma(n + 1.0));
  return v;
}

std::pair<Complex, Complex> euler_to_z(double theta, double phi, double psi) {
  const Complex i{0.0, 1.0};
  return {std::exp(i * (psi / 2)) * std::exp(i * (phi / 2)) * std::cos(theta / 2),
          std::exp(i * (psi / 2)) * std::exp(-i * (phi / 2)) * std::sin(theta / 2)};
}

StateVector project_charge(const StateVector& v, const ChargeVector& q) {
  StateVector out(v.basis());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.basis()->charge(i) == q) out[i] = v[i];
  }
  return out;
}

StateVector project_casimir(const StateVector& v, const std::vector<int>& casimirs) {
  const auto& basis = *v.basis();
  if (casimirs.size() != basis.layout().rep_count()) throw Error("project_casimir: one value per rep required");
  StateVector out(v.basis());
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool keep = true;
    for (std::size_t r = 0; r < casimirs.size() && keep; ++r) keep = basis.rep_total(i, r) == casimirs[r];
    if (keep) out[i] = v[i];
  }
  return out;
}

StateVector charge_state_projector(const CoherentSpec& spec) {
  spec.validate();
  auto basis = build_basis(spec.layout, spec.truncation);
  return project_charge(hw_product_state(basis, spec.params), spec.charges);
}

StateVector charge_state_series(const CoherentSpec& spec) {
  spec.validate();
  require_closed_form_layout(spec.layout, "charge_state_series");
  const int n = spec.layout.n_group();
  const auto sol = solve_sector(n, spec.charges);
  if (!sol.integral()) {
    for (std::size_t i = 0; i < sol.l.size(); ++i) {
      if (!sol.l[i].is_integer()) {
        throw InfeasibleError("charge sector is empty: l_" + std::to_string(i + 1) + " = " + sol.l[i].str());
      }
    }
  }
  auto basis = build_basis(spec.layout, spec.truncation);
  StateVector v(basis);
  const bool with_b = has_conjugate_block(spec.layout);
  const int cap_a = spec.truncation.caps[0];
  const int cap_b = with_b ? spec.truncation.caps[1] : 0;
  const auto visit = [&](const std::vector<int>& m) {
    for (int n_last = 0; n_last <= cap_a; ++n_last) {
      const auto occ = occupations_from(n, sol, m, n_last);
      if (std::any_of(occ.begin(), occ.end(), [](const Fraction& f) { return f.num < 0; })) continue;
      OccupationState s;
      for (const auto& f : occ) s.quanta.push_back(static_cast<int>(f.num));
      s.quanta.insert(s.quanta.end(), m.begin(), m.end());
      if (auto idx = basis->find(s)) v[*idx] = hw_product_amplitude(spec.layout, spec.params, s);
    }
  };
  if (with_b) {
    for_each_composition(static_cast<std::size_t>(n), cap_b, visit);
  } else {
    visit({});
  }
  return v;
}

std::size_t pivot_mode(const CoherentSpec& spec) {
  const int n = spec.layout.n_group();
  if (n == 2 && !spec.charges.q.empty() && spec.charges.q[0] < 0) return 0;
  return static_cast<std::size_t>(n - 1);
}

namespace {

// Diagonal factor 1/(prod_{i != pivot} n_i * h(n - 1)) on the block of one rep,
// evaluated only on states whose block is fully occupied (image of prod a^dag).
SparseOperator pull_through_factor(const BasisPtr& basis, std::size_t rep_pos, std::size_t pivot,
                                   const DiagonalFunction& h) {
  const auto& layout = basis->layout();
  const std::size_t off = layout.offset(rep_pos);
  const std::size_t d = layout.mode_count(rep_pos);
  DiagonalFunction fn{
      "H_" + h.name,
      [=](std::span<const int> full) {
        std::vector<int> shifted(d);
        double denom = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
          shifted[k] = full[off + k] - 1;
          if (k != pivot) denom *= full[off + k];
        }
        const double hv = h(shifted);
        if (hv == 0.0) throw DomainError("deformation '" + h.name + "' vanishes on the creation chain");
        return 1.0 / (denom * hv);
      },
      [=](std::span<const int> full) {
        return std::all_of(full.begin() + static_cast<std::ptrdiff_t>(off),
                           full.begin() + static_cast<std::ptrdiff_t>(off + d), [](int x) { return x >= 1; });
      }};
  return diagonal_op(basis, fn, [&](std::size_t i) { return fn.domain(basis->state(i).quanta); });
}

SparseOperator chain_generator(const BasisPtr& basis, std::size_t rep_pos, std::size_t pivot, const DiagonalFunction& h,
                               const std::vector<Complex>& params) {
  const auto& layout = basis->layout();
  const int rep = layout.reps()[rep_pos];
  std::vector<ModeRef> modes;
  Complex coeff = 1.0;
  for (std::size_t k = 0; k < layout.mode_count(rep_pos); ++k) {
    modes.push_back({rep, k});
    coeff *= params[k];
  }
  return scale(compose(pull_through_factor(basis, rep_pos, pivot, h), monomial(basis, modes, LadderKind::raise)), coeff);
}

}  // namespace

StateVector exponential_state(const CoherentSpec& spec, const Deformation& deformation) {
  spec.validate();
  require_closed_form_layout(spec.layout, "exponential_state");
  const int n = spec.layout.n_group();
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t pivot = pivot_mode(spec);

  std::vector<int> base_a(nn, 0);
  if (pivot == 0) {
    base_a[1] = -spec.charges.q[0];
  } else {
    const auto l = solve_sector(n, spec.charges).integer_l();
    std::copy(l.begin(), l.end(), base_a.begin());
  }

  auto basis = build_basis(spec.layout, spec.truncation);
  const bool with_b = has_conjugate_block(spec.layout);
  OccupationState base;
  base.quanta = base_a;
  if (with_b) base.quanta.resize(2 * nn, 0);
  StateVector psi(basis);
  const auto idx = basis->find(base);
  if (!idx) return psi;  // base state beyond the caps: nothing survives truncation

  Complex c0 = 1.0;
  for (std::size_t i = 0; i < nn; ++i) c0 *= amplitude_factor(spec.params[0][i], base_a[i]);
  psi[*idx] = c0;

  if (with_b) {
    SparseOperator pairs(basis);
    for (std::size_t i = 0; i + 1 < nn; ++i) {
      const std::size_t flat = i;
      DiagonalFunction inv_n{"1/N_" + std::to_string(i + 1),
                             [flat](std::span<const int> s) { return 1.0 / s[flat]; },
                             [flat](std::span<const int> s) { return s[flat] >= 1; }};
      const auto factor =
          diagonal_op(basis, inv_n, [&](std::size_t k) { return basis->state(k).quanta[flat] >= 1; });
      const auto create = monomial(basis, {{1, i}, {n - 1, i}}, LadderKind::raise);
      pairs = add(pairs, compose(factor, create), 1.0, spec.params[0][i] * spec.params[1][i]);
    }
    psi = apply_exponential(pairs, psi);
  }

  SparseOperator gen = chain_generator(basis, 0, pivot, deformation.f, spec.params[0]);
  if (with_b) gen = add(gen, chain_generator(basis, 1, nn - 1, deformation.g, spec.params[1]));
  return apply_exponential(gen, psi);
}

StateVector charge_state_exponential(const CoherentSpec& spec) { return exponential_state(spec, Deformation{}); }

StateVector casimir_state(const CoherentSpec& spec) {
  spec.validate();
  const auto& layout = spec.layout;
  for (std::size_t r = 0; r < layout.rep_count(); ++r) {
    double norm2 = 0.0;
    for (const auto& z : spec.params[r]) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > 1e-10) {
      throw ConstraintError("casimir_state: parameter vector of rep F=" + std::to_string(layout.reps()[r]) +
                            " has squared norm " + std::to_string(norm2) + ", expected 1");
    }
    if (spec.casimirs[r] < 0 || spec.casimirs[r] > spec.truncation.caps[r]) {
      throw Error("casimir_state: Casimir value outside 0..cap for rep F=" + std::to_string(layout.reps()[r]));
    }
  }
  if (has_conjugate_block(layout)) {
    Complex dot = 0.0;
    for (std::size_t i = 0; i < layout.mode_count(0); ++i) dot += spec.params[0][i] * spec.params[1][i];
    if (std::abs(dot) > 1e-10) {
      throw ConstraintError("casimir_state: z.w = " + std::to_string(std::abs(dot)) + " in magnitude, expected 0");
    }
  }
  auto basis = build_basis(layout, spec.truncation);
  return project_casimir(hw_product_state(basis, spec.params), spec.casimirs);
}

AnnihilationResidual annihilation_residual(const StateVector& psi, const std::vector<ModeRef>& modes,
                                           Complex eigenvalue, const AmplitudeOracle& oracle,
                                           const OccupationWeight& prefactor) {
  const auto& basis = psi.basis();
  const auto& layout = basis->layout();
  std::vector<std::size_t> flat;
  for (const auto& m : modes) flat.push_back(layout.offset(layout.rep_position(m.rep)) + m.mode);

  StateVector lowered = apply(monomial(basis, modes, LadderKind::lower), psi);
  AnnihilationResidual out;
  double boundary2 = 0.0;
  double bound2 = 0.0;
  for (std::size_t t = 0; t < basis->size(); ++t) {
    const auto& s = basis->state(t);
    OccupationState raised = s;
    double element = 1.0;
    for (auto f : flat) {
      raised.quanta[f] += 1;
      element *= std::sqrt(static_cast<double>(raised.quanta[f]));
    }
    const bool inside = basis->find(raised).has_value();
    const Complex omitted = inside ? Complex{} : element * oracle(raised);
    // The prefactor is only evaluated where it multiplies something nonzero.
    const double d = prefactor && (lowered[t] != Complex{} || omitted != Complex{}) ? prefactor(s) : 1.0;
    const Complex r = d * lowered[t] - eigenvalue * psi[t];
    if (inside) {
      out.interior = std::max(out.interior, std::abs(r));
      ++out.interior_states;
    } else {
      boundary2 += std::norm(r);
      bound2 += std::norm(d * omitted);
      ++out.boundary_states;
    }
  }
  out.boundary = std::sqrt(boundary2);
  out.bound = std::sqrt(bound2);
  return out;
}

void add_annihilation_checks(VerificationReport& report, const std::string& name, const AnnihilationResidual& r,
                             double tol) {
  report.bound(name + ".interior", r.interior, tol).samples = r.interior_states;
  report.bound(name + ".boundary", r.boundary, r.bound * (1.0 + 1e-9) + tol, "bound: first omitted terms")
      .samples = r.boundary_states;
}

namespace {

double eigen_residual(const SparseOperator& op, const StateVector& psi, double value) {
  StateVector r = apply(op, psi);
  r += Complex(-value) * psi;
  double m = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) m = std::max(m, std::abs(r[i]));
  return m;
}

}  // namespace

VerificationReport check_charge_state(const StateVector& psi, const CoherentSpec& spec, const AmplitudeOracle& oracle,
                                      double tol) {
  spec.validate();
  const auto& basis = psi.basis();
  const int n = spec.layout.n_group();
  VerificationReport report("charge-state eigen relations");
  const auto gens = schwinger_generators(basis);
  for (std::size_t a = 0; a < gens.charges.size(); ++a) {
    report.bound("charge_" + std::to_string(a + 1), eigen_residual(gens.charges[a], psi, spec.charges.q[a]), tol);
  }

  const bool with_b = has_conjugate_block(spec.layout);
  std::vector<ModeRef> a_modes;
  std::vector<ModeRef> b_modes;
  Complex prod_z = 1.0;
  Complex prod_w = 1.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    a_modes.push_back({1, i});
    prod_z *= spec.params[0][i];
    if (with_b) {
      b_modes.push_back({n - 1, i});
      prod_w *= spec.params[1][i];
      add_annihilation_checks(report, "pair_" + std::to_string(i + 1),
                              annihilation_residual(psi, {{1, i}, {n - 1, i}}, spec.params[0][i] * spec.params[1][i], oracle),
                              tol);
    }
  }
  add_annihilation_checks(report, "product_a", annihilation_residual(psi, a_modes, prod_z, oracle), tol);
  if (with_b) add_annihilation_checks(report, "product_b", annihilation_residual(psi, b_modes, prod_w, oracle), tol);
  return report;
}

VerificationReport check_casimir_state(const StateVector& psi, const std::vector<int>& casimirs, double tol) {
  const auto ops = casimir_operators(psi.basis());
  if (casimirs.size() != ops.size()) throw Error("check_casimir_state: one value per rep required");
  VerificationReport report("casimir-state eigen relations");
  const auto& reps = psi.basis()->layout().reps();
  for (std::size_t r = 0; r < ops.size(); ++r) {
    report.bound("casimir_F" + std::to_string(reps[r]), eigen_residual(ops[r], psi, casimirs[r]), tol);
  }
  return report;
}

VerificationReport check_hw_state(const StateVector& psi, Complex z, double tol) {
  VerificationReport report("heisenberg-weyl eigen relation");
  const auto oracle = [z](const OccupationState& s) { return amplitude_factor(z, s.quanta[0]); };
  add_annihilation_checks(report, "annihilation", annihilation_residual(psi, {{1, 0}}, z, oracle), tol);
  return report;
}

}  // namespace suncs

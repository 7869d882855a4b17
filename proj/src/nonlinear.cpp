#include "suncs/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "suncs/sun_algebra.hpp"

namespace suncs {

namespace {

bool non_negative(std::span<const int> s) {
  return std::all_of(s.begin(), s.end(), [](int x) { return x >= 0; });
}

bool has_conjugate_block(const ModeLayout& layout) {
  return layout.rep_count() == 2 && layout.reps()[1] == layout.n_group() - 1;
}

}  // namespace

const std::vector<std::string>& builtin_deformation_names() {
  static const std::vector<std::string> names{"one", "n_last_plus_one", "inv_n_last_plus_one", "total_plus_one"};
  return names;
}

DiagonalFunction builtin_deformation(const std::string& name) {
  if (name == "one") return {name, [](std::span<const int>) { return 1.0; }, non_negative};
  if (name == "n_last_plus_one") {
    return {name, [](std::span<const int> s) { return s.back() + 1.0; }, non_negative};
  }
  if (name == "inv_n_last_plus_one") {
    return {name, [](std::span<const int> s) { return 1.0 / (s.back() + 1.0); }, non_negative};
  }
  if (name == "total_plus_one") {
    return {name, [](std::span<const int> s) { return std::accumulate(s.begin(), s.end(), 0) + 1.0; }, non_negative};
  }
  throw Error("unknown deformation '" + name + "'");
}

DiagonalFunction table_deformation(std::string name, const std::vector<TableEntry>& entries) {
  auto table = std::make_shared<std::map<std::vector<int>, double>>();
  for (const auto& e : entries) (*table)[e.occupations] = e.value;
  auto key = [](std::span<const int> s) { return std::vector<int>(s.begin(), s.end()); };
  return {std::move(name), [table, key](std::span<const int> s) { return table->at(key(s)); },
          [table, key](std::span<const int> s) { return table->contains(key(s)); }};
}

StateVector nl_hw_state(Complex z, const DiagonalFunction& f, int cap) {
  if (cap < 0) throw Error("nl_hw_state: cap must be >= 0");
  auto basis = build_basis(ModeLayout::heisenberg_weyl(), {{cap}});
  StateVector v(basis);
  Complex amp = 1.0;
  for (int n = 0; n <= cap; ++n) {
    if (n > 0) {
      const int k = n - 1;
      const double fk = f(std::span<const int>(&k, 1));
      if (fk == 0.0) throw DomainError("deformation '" + f.name + "' vanishes at n=" + std::to_string(k));
      amp *= z / (fk * std::sqrt(static_cast<double>(n)));
    }
    v[basis->index_of({{n}})] = amp;
  }
  return v;
}

StateVector nl_charge_state(const NonlinearSpec& spec) { return exponential_state(spec.base, spec.deformation); }

Complex nl_recursion_amplitude(const NonlinearSpec& spec, const OccupationState& s) {
  const auto& layout = spec.base.layout;
  if (charge_of(s, layout) != spec.base.charges) return 0.0;
  const auto nn = static_cast<std::size_t>(layout.n_group());
  const bool with_b = has_conjugate_block(layout);

  struct Chain {
    std::size_t offset;
    std::size_t anchor;
    const DiagonalFunction* h;
    const std::vector<Complex>* params;
    int steps = 0;
  };
  std::vector<Chain> chains{{0, pivot_mode(spec.base), &spec.deformation.f, &spec.base.params[0]}};
  if (with_b) chains.push_back({nn, nn - 1, &spec.deformation.g, &spec.base.params[1]});

  OccupationState seed = s;
  for (auto& c : chains) {
    auto first = seed.quanta.begin() + static_cast<std::ptrdiff_t>(c.offset);
    c.steps = *std::min_element(first, first + static_cast<std::ptrdiff_t>(nn));
    for (std::size_t k = 0; k < nn; ++k) seed.quanta[c.offset + k] -= c.steps;
    if (seed.quanta[c.offset + c.anchor] != 0) return 0.0;
  }

  Complex amp = hw_product_amplitude(layout, spec.base.params, seed);
  for (const auto& c : chains) {
    Complex prod = 1.0;
    for (const auto& z : *c.params) prod *= z;
    std::vector<int> cur(seed.quanta.begin() + static_cast<std::ptrdiff_t>(c.offset),
                         seed.quanta.begin() + static_cast<std::ptrdiff_t>(c.offset + nn));
    for (int step = 0; step < c.steps; ++step) {
      double root = 1.0;
      for (int x : cur) root *= x + 1.0;
      const double hv = (*c.h)(cur);
      if (hv == 0.0) throw DomainError("deformation '" + c.h->name + "' vanishes on the recursion path");
      amp *= prod / (hv * std::sqrt(root));
      for (int& x : cur) ++x;
    }
  }
  return amp;
}

StateVector nl_charge_state_recursion(const NonlinearSpec& spec) {
  spec.base.validate();
  auto basis = build_basis(spec.base.layout, spec.base.truncation);
  StateVector v(basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    if (basis->charge(i) == spec.base.charges) v[i] = nl_recursion_amplitude(spec, basis->state(i));
  }
  return v;
}

VerificationReport check_nl_state(const StateVector& psi, const NonlinearSpec& spec, double tol) {
  const auto& base = spec.base;
  base.validate();
  const auto& layout = base.layout;
  const int n = layout.n_group();
  const auto nn = static_cast<std::size_t>(n);
  VerificationReport report("nonlinear eigen relations");

  const auto gens = schwinger_generators(psi.basis());
  for (std::size_t a = 0; a < gens.charges.size(); ++a) {
    StateVector r = apply(gens.charges[a], psi);
    r += Complex(-base.charges.q[a]) * psi;
    double m = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) m = std::max(m, std::abs(r[i]));
    report.bound("charge_" + std::to_string(a + 1), m, tol);
  }

  const auto oracle = [&spec](const OccupationState& s) { return nl_recursion_amplitude(spec, s); };
  const auto block_weight = [nn](const DiagonalFunction& h, std::size_t offset) {
    return [&h, offset, nn](const OccupationState& s) {
      return h(std::span<const int>(s.quanta).subspan(offset, nn));
    };
  };

  std::vector<ModeRef> a_modes;
  std::vector<ModeRef> b_modes;
  Complex prod_z = 1.0;
  Complex prod_w = 1.0;
  for (std::size_t i = 0; i < nn; ++i) {
    a_modes.push_back({1, i});
    prod_z *= base.params[0][i];
  }
  add_annihilation_checks(report, "deformed_product_a",
                          annihilation_residual(psi, a_modes, prod_z, oracle, block_weight(spec.deformation.f, 0)),
                          tol);
  if (has_conjugate_block(layout)) {
    for (std::size_t i = 0; i < nn; ++i) {
      b_modes.push_back({n - 1, i});
      prod_w *= base.params[1][i];
    }
    add_annihilation_checks(report, "deformed_product_b",
                            annihilation_residual(psi, b_modes, prod_w, oracle, block_weight(spec.deformation.g, nn)),
                            tol);
  }
  return report;
}

VerificationReport check_nl_hw_state(const StateVector& psi, Complex z, const DiagonalFunction& f, double tol) {
  VerificationReport report("nonlinear heisenberg-weyl eigen relation");
  const auto oracle = [&](const OccupationState& s) {
    Complex amp = 1.0;
    for (int k = 0; k < s.quanta[0]; ++k) amp *= z / (f(std::span<const int>(&k, 1)) * std::sqrt(k + 1.0));
    return amp;
  };
  const auto weight = [&f](const OccupationState& s) { return f(s.quanta); };
  add_annihilation_checks(report, "deformed_annihilation", annihilation_residual(psi, {{1, 0}}, z, oracle, weight),
                          tol);
  return report;
}

VerificationReport check_pullthrough(const BasisPtr& basis, std::size_t rep_pos, const DiagonalFunction& f, int n_max,
                                     double tol) {
  const auto& layout = basis->layout();
  const std::size_t off = layout.offset(rep_pos);
  const std::size_t d = layout.mode_count(rep_pos);
  const int rep = layout.reps()[rep_pos];

  // H_f(N + k) = 1 / (prod_{i<last} (N_i + k) f(N + k - 1)).
  const auto shifted_h = [=](std::span<const int> full, int k) {
    std::vector<int> arg(d);
    double denom = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      arg[i] = full[off + i] + k - 1;
      if (i + 1 < d) denom *= full[off + i] + k;
    }
    return 1.0 / (denom * f(arg));
  };

  std::vector<ModeRef> modes;
  for (std::size_t i = 0; i < d; ++i) modes.push_back({rep, i});
  const SparseOperator create = monomial(basis, modes, LadderKind::raise);
  DiagonalFunction h_now{"H_" + f.name, [&](std::span<const int> s) { return shifted_h(s, 0); }, {}};
  const auto occupied = [&](std::size_t i) {
    const auto& q = basis->state(i).quanta;
    return std::all_of(q.begin() + static_cast<std::ptrdiff_t>(off), q.begin() + static_cast<std::ptrdiff_t>(off + d),
                       [](int x) { return x >= 1; });
  };
  const SparseOperator step = compose(diagonal_op(basis, h_now, occupied), create);

  VerificationReport report("pull-through identity");
  SparseOperator rhs = SparseOperator::identity(basis);
  SparseOperator create_n = SparseOperator::identity(basis);
  for (int n = 1; n <= n_max; ++n) {
    rhs = compose(step, rhs);
    create_n = compose(create, create_n);
    DiagonalFunction shifted{"prod H_" + f.name,
                             [&, n](std::span<const int> s) {
                               double v = 1.0;
                               for (int k = 1; k <= n; ++k) v *= shifted_h(s, k);
                               return v;
                             },
                             {}};
    const SparseOperator lhs = compose(create_n, diagonal_op(basis, shifted));
    report.bound("n=" + std::to_string(n), max_abs_diff(lhs, rhs), tol).samples = lhs.nnz();
  }
  report.extra["rep"] = rep;
  report.extra["deformation"] = f.name;
  report.extra["n_max"] = n_max;
  return report;
}

}  // namespace suncs

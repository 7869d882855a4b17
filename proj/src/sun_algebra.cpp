#include "suncs/sun_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace suncs {

namespace {

constexpr Complex kI{0.0, 1.0};

DenseMatrix unit(int n, int i, int j) {
  DenseMatrix m = DenseMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

std::vector<int> root_of(int n_group, int i, int j) {
  std::vector<int> root;
  for (int a = 1; a < n_group; ++a) {
    const auto h = cartan_weights(n_group, a);
    root.push_back(h[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(j)]);
  }
  return root;
}

// d Lambda^F(X) on the F-subset basis (X acts as a derivation on wedges).
DenseMatrix exterior_power(const DenseMatrix& x, int n_group, int rep) {
  const auto subsets = rep_subsets(n_group, rep);
  const auto dim = static_cast<Eigen::Index>(subsets.size());
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  auto find_subset = [&](const std::vector<int>& s) {
    return static_cast<Eigen::Index>(std::lower_bound(subsets.begin(), subsets.end(), s) - subsets.begin());
  };
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto& s = subsets[static_cast<std::size_t>(col)];
    for (std::size_t p = 0; p < s.size(); ++p) {
      for (int i = 0; i < n_group; ++i) {
        const Complex coeff = x(i, s[p]);
        if (coeff == Complex{}) continue;
        std::vector<int> t = s;
        t[p] = i;
        if (i != s[p] && std::find(s.begin(), s.end(), i) != s.end()) continue;
        int swaps = 0;
        for (std::size_t u = 0; u < t.size(); ++u) {
          for (std::size_t v = u + 1; v < t.size(); ++v) swaps += t[u] > t[v] ? 1 : 0;
        }
        std::sort(t.begin(), t.end());
        out(find_subset(t), col) += (swaps % 2 ? -1.0 : 1.0) * coeff;
      }
    }
  }
  return out;
}

double max_abs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

const char* group_name_prefix = "su";

}  // namespace

GeneratorSet fundamental_generators(int n_group) {
  if (n_group < 2) throw Error("fundamental_generators: N must be >= 2");
  GeneratorSet g;
  g.n_group = n_group;
  g.rep = 1;
  for (int a = 1; a < n_group; ++a) {
    const auto h = cartan_weights(n_group, a);
    DenseMatrix m = DenseMatrix::Zero(n_group, n_group);
    for (int i = 0; i < n_group; ++i) m(i, i) = h[static_cast<std::size_t>(i)];
    g.cartan.push_back(std::move(m));
  }
  for (int i = 0; i < n_group; ++i) {
    for (int j = 0; j < n_group; ++j) {
      if (i != j) g.ladders.push_back({i, j, unit(n_group, i, j), root_of(n_group, i, j)});
    }
  }
  for (int k = 1; k < n_group; ++k) {
    for (int j = 0; j < k; ++j) {
      g.hermitian.push_back(unit(n_group, j, k) + unit(n_group, k, j));
      g.hermitian.push_back(-kI * (unit(n_group, j, k) - unit(n_group, k, j)));
    }
    g.hermitian.push_back(std::sqrt(2.0 / (k * (k + 1.0))) * g.cartan[static_cast<std::size_t>(k - 1)]);
  }
  return g;
}

GeneratorSet conjugate_generators(const GeneratorSet& gens) {
  GeneratorSet g = gens;
  g.rep = gens.n_group - 1;
  for (auto& m : g.cartan) m = -m.transpose().eval();
  for (auto& l : g.ladders) l.matrix = -l.matrix.transpose().eval();
  for (auto& m : g.hermitian) m = -m.transpose().eval();
  return g;
}

GeneratorSet exterior_power_generators(int n_group, int rep) {
  if (rep < 1 || rep > n_group - 1) throw Error("exterior_power_generators: rep outside 1..N-1");
  GeneratorSet g = fundamental_generators(n_group);
  g.rep = rep;
  for (auto& m : g.cartan) m = exterior_power(m, n_group, rep);
  for (auto& l : g.ladders) l.matrix = exterior_power(l.matrix, n_group, rep);
  for (auto& m : g.hermitian) m = exterior_power(m, n_group, rep);
  return g;
}

SparseOperator bilinear(const BasisPtr& basis, std::size_t rep_pos, const DenseMatrix& matrix) {
  const auto& layout = basis->layout();
  const std::size_t d = layout.mode_count(rep_pos);
  const std::size_t off = layout.offset(rep_pos);
  if (static_cast<std::size_t>(matrix.rows()) != d || static_cast<std::size_t>(matrix.cols()) != d) {
    throw BasisMismatchError("bilinear: matrix dimension does not match rep mode count");
  }
  std::vector<Triplet> t;
  for (std::size_t col = 0; col < basis->size(); ++col) {
    const auto& s = basis->state(col);
    for (std::size_t l = 0; l < d; ++l) {
      const int nl = s.quanta[off + l];
      if (nl == 0) continue;
      for (std::size_t k = 0; k < d; ++k) {
        const Complex m = matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
        if (m == Complex{}) continue;
        if (k == l) {
          t.push_back({col, col, m * static_cast<double>(nl)});
          continue;
        }
        OccupationState target = s;
        target.quanta[off + l] -= 1;
        target.quanta[off + k] += 1;
        const double amp = std::sqrt(static_cast<double>(nl) * static_cast<double>(s.quanta[off + k] + 1));
        t.push_back({basis->index_of(target), col, m * amp});
      }
    }
  }
  return SparseOperator::from_triplets(basis, std::move(t));
}

SchwingerGenerators schwinger_generators(const BasisPtr& basis, const RepGeneratorMap& supplied) {
  const auto& layout = basis->layout();
  const int n = layout.n_group();
  if (n < 2) throw UnsupportedRepError("schwinger_generators: layout has no SU(N) structure");

  const GeneratorSet fundamental = fundamental_generators(n);
  std::vector<GeneratorSet> per_rep;
  for (std::size_t r = 0; r < layout.rep_count(); ++r) {
    const int rep = layout.reps()[r];
    if (auto it = supplied.find(rep); it != supplied.end()) {
      per_rep.push_back(it->second);
    } else if (rep == 1) {
      per_rep.push_back(fundamental);
    } else if (rep == n - 1) {
      per_rep.push_back(conjugate_generators(fundamental));
    } else {
      throw UnsupportedRepError("schwinger_generators: no matrices for intermediate rep F=" + std::to_string(rep) +
                                " (supply exterior_power_generators(N, F))");
    }
    if (static_cast<std::size_t>(per_rep.back().dim()) != layout.mode_count(r)) {
      throw BasisMismatchError("schwinger_generators: rep matrices for F=" + std::to_string(rep) +
                               " have wrong dimension");
    }
  }

  auto assemble = [&](auto pick, Complex factor) {
    SparseOperator sum(basis);
    for (std::size_t r = 0; r < per_rep.size(); ++r) sum = add(sum, bilinear(basis, r, pick(per_rep[r])), 1.0, factor);
    return sum;
  };

  SchwingerGenerators out;
  out.basis = basis;
  for (std::size_t a = 0; a < fundamental.cartan.size(); ++a) {
    out.charges.push_back(assemble([a](const GeneratorSet& g) { return g.cartan[a]; }, 1.0));
  }
  for (std::size_t a = 0; a < fundamental.hermitian.size(); ++a) {
    out.hermitian.push_back(assemble([a](const GeneratorSet& g) { return g.hermitian[a]; }, 0.5));
  }
  for (std::size_t k = 0; k < fundamental.ladders.size(); ++k) {
    out.ladders.push_back(assemble([k](const GeneratorSet& g) { return g.ladders[k].matrix; }, 1.0));
    out.ladder_labels.emplace_back(fundamental.ladders[k].i, fundamental.ladders[k].j);
    out.roots.push_back(fundamental.ladders[k].root);
  }
  return out;
}

std::vector<SparseOperator> casimir_operators(const BasisPtr& basis) {
  std::vector<SparseOperator> out;
  for (std::size_t r = 0; r < basis->layout().rep_count(); ++r) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < basis->size(); ++i) {
      const int total = basis->rep_total(i, r);
      if (total) t.push_back({i, i, static_cast<double>(total)});
    }
    out.push_back(SparseOperator::from_triplets(basis, std::move(t)));
  }
  return out;
}

StructureConstants structure_constants(const GeneratorSet& gens) {
  const auto& lam = gens.hermitian;
  const int dim = static_cast<int>(lam.size());
  double norm_err = 0.0;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const Complex tr = (lam[static_cast<std::size_t>(a)] * lam[static_cast<std::size_t>(b)]).trace();
      norm_err = std::max(norm_err, std::abs(tr - (a == b ? 2.0 : 0.0)));
    }
  }
  if (norm_err > 1e-12) {
    throw Error("structure_constants: generators violate tr(l^a l^b) = 2 delta^{ab} (error " +
                std::to_string(norm_err) + ")");
  }

  StructureConstants sc;
  sc.dim = dim;
  sc.f.assign(static_cast<std::size_t>(dim * dim * dim), 0.0);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const DenseMatrix comm = lam[static_cast<std::size_t>(a)] * lam[static_cast<std::size_t>(b)] -
                               lam[static_cast<std::size_t>(b)] * lam[static_cast<std::size_t>(a)];
      for (int c = 0; c < dim; ++c) {
        const Complex v = (comm * lam[static_cast<std::size_t>(c)]).trace() / (4.0 * kI);
        sc.f[static_cast<std::size_t>((a * dim + b) * dim + c)] = v.real();
      }
    }
  }
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        sc.antisymmetry_violation = std::max({sc.antisymmetry_violation, std::abs(sc(a, b, c) + sc(b, a, c)),
                                              std::abs(sc(a, b, c) - sc(b, c, a))});
      }
    }
  }

  const auto& lad = gens.ladders;
  for (std::size_t al = 0; al < lad.size(); ++al) {
    for (std::size_t be = 0; be < lad.size(); ++be) {
      if (al == be) continue;
      const DenseMatrix comm = lad[al].matrix * lad[be].matrix - lad[be].matrix * lad[al].matrix;
      const bool opposite = lad[al].i == lad[be].j && lad[al].j == lad[be].i;
      if (opposite) {
        CartanProjection proj{al, {}};
        DenseMatrix fit = DenseMatrix::Zero(comm.rows(), comm.cols());
        for (const auto& h : gens.cartan) {
          const Complex c = (h.adjoint() * comm).trace() / (h.adjoint() * h).trace();
          proj.coefficients.push_back(c.real());
          fit += c * h;
        }
        sc.cartan_weyl_fit_residual = std::max(sc.cartan_weyl_fit_residual, max_abs(comm - fit));
        sc.cartan_projections.push_back(std::move(proj));
        continue;
      }
      if (max_abs(comm) < 1e-14) continue;
      std::vector<int> target(lad[al].root.size());
      for (std::size_t a = 0; a < target.size(); ++a) target[a] = lad[al].root[a] + lad[be].root[a];
      const auto it = std::find_if(lad.begin(), lad.end(), [&](const LadderGenerator& g) { return g.root == target; });
      if (it == lad.end()) {
        sc.cartan_weyl_fit_residual = std::max(sc.cartan_weyl_fit_residual, max_abs(comm));
        continue;
      }
      const Complex value = (it->matrix.adjoint() * comm).trace() / (it->matrix.adjoint() * it->matrix).trace();
      sc.cartan_weyl_fit_residual = std::max(sc.cartan_weyl_fit_residual, max_abs(comm - value * it->matrix));
      sc.ladder_coefficients.push_back({al, be, static_cast<std::size_t>(it - lad.begin()), value});
    }
  }
  return sc;
}

VerificationReport verify_algebra(const SchwingerGenerators& gens, const StructureConstants& f, double tol) {
  const auto& q = gens.hermitian;
  const int dim = static_cast<int>(q.size());
  if (dim != f.dim) throw Error("verify_algebra: generator count does not match structure constants");

  double closure = 0.0;
  std::size_t pairs = 0;
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      SparseOperator residual = commutator(q[static_cast<std::size_t>(a)], q[static_cast<std::size_t>(b)]);
      for (int c = 0; c < dim; ++c) {
        const double fabc = f(a, b, c);
        if (fabc != 0.0) residual = add(residual, q[static_cast<std::size_t>(c)], 1.0, -kI * fabc);
      }
      closure = std::max(closure, residual.max_abs());
      ++pairs;
    }
  }

  double cartan = 0.0;
  for (std::size_t a = 0; a < gens.charges.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.charges.size(); ++b) {
      cartan = std::max(cartan, commutator(gens.charges[a], gens.charges[b]).max_abs());
    }
  }

  double roots = 0.0;
  for (std::size_t k = 0; k < gens.ladders.size(); ++k) {
    for (std::size_t a = 0; a < gens.charges.size(); ++a) {
      const SparseOperator r =
          add(commutator(gens.charges[a], gens.ladders[k]), gens.ladders[k], 1.0, -static_cast<double>(gens.roots[k][a]));
      roots = std::max(roots, r.max_abs());
    }
  }

  const auto& layout = gens.basis->layout();
  VerificationReport report("verify-algebra");
  report.bound("lie_closure", closure, tol).samples = pairs;
  report.bound("cartan_commutativity", cartan, tol);
  report.bound("root_relations", roots, tol);
  report.extra["group"] = group_name_prefix + std::to_string(layout.n_group());
  report.extra["reps"] = layout.reps();
  report.extra["caps"] = gens.basis->truncation().caps;
  report.extra["max_residual"] = std::max({closure, cartan, roots});
  report.extra["pairs_checked"] = pairs;
  report.extra["tol"] = tol;
  return report;
}

double casimir_centrality_residual(const SchwingerGenerators& gens) {
  const auto casimirs = casimir_operators(gens.basis);
  double worst = 0.0;
  for (const auto& q : gens.hermitian) {
    for (const auto& c : casimirs) worst = std::max(worst, commutator(q, c).max_abs());
  }
  return worst;
}

double spin_casimir_residual(const SchwingerGenerators& gens) {
  if (gens.basis->layout().n_group() != 2) throw Error("spin_casimir_residual: SU(2) only");
  SparseOperator jj(gens.basis);
  for (const auto& j : gens.hermitian) jj = add(jj, compose(j, j));
  const SparseOperator c = casimir_operators(gens.basis).front();
  const SparseOperator rhs = add(compose(c, c), c, 0.25, 0.5);
  return max_abs_diff(jj, rhs);
}

}  // namespace suncs

#include "suncs/resolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

namespace suncs {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string group_name(const ModeLayout& layout) {
  return layout.n_group() == 1 ? "hw" : "su" + std::to_string(layout.n_group());
}

bool has_conjugate_block(const ModeLayout& layout) {
  return layout.n_group() >= 3 && layout.rep_count() == 2 && layout.reps()[0] == 1 &&
         layout.reps()[1] == layout.n_group() - 1;
}

std::vector<OccupationState> sector_states(const FockBasis& basis, const ChargeVector& q) {
  std::vector<OccupationState> out;
  for (auto i : charge_sector(basis, q)) out.push_back(basis.state(i));
  return out;
}

std::vector<OccupationState> casimir_block(const FockBasis& basis, const std::vector<int>& casimirs) {
  std::vector<OccupationState> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool keep = true;
    for (std::size_t r = 0; r < casimirs.size() && keep; ++r) keep = basis.rep_total(i, r) == casimirs[r];
    if (keep) out.push_back(basis.state(i));
  }
  return out;
}

double max_entry(const Eigen::MatrixXd& m) { return m.size() ? m.maxCoeff() : 0.0; }
double max_entry(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Projector onto the kernel of the contraction sum_i a_i b_i on the block:
// the irreducible (traceless) part of a {1, N-1} Casimir block.
Eigen::MatrixXcd traceless_projector(const ModeLayout& layout, const std::vector<OccupationState>& block) {
  const auto d = static_cast<Eigen::Index>(block.size());
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  if (!has_conjugate_block(layout) || block.empty()) return id;
  const std::size_t nn = layout.mode_count(0);
  std::map<OccupationState, Eigen::Index> lower;
  std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, double>> entries;
  for (Eigen::Index col = 0; col < d; ++col) {
    const auto& s = block[static_cast<std::size_t>(col)];
    for (std::size_t i = 0; i < nn; ++i) {
      const int n = s.quanta[i];
      const int m = s.quanta[nn + i];
      if (n == 0 || m == 0) continue;
      OccupationState t = s;
      t.quanta[i] -= 1;
      t.quanta[nn + i] -= 1;
      const auto [it, inserted] = lower.emplace(t, static_cast<Eigen::Index>(lower.size()));
      entries.push_back({{it->second, col}, std::sqrt(static_cast<double>(n) * m)});
    }
  }
  if (lower.empty()) return id;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(lower.size()), d);
  for (const auto& [rc, v] : entries) t(rc.first, rc.second) += v;
  const Eigen::MatrixXcd gram = t * t.adjoint();
  return id - t.adjoint() * gram.llt().solve(t);
}

}  // namespace

nlohmann::json RoiReport::to_json() const {
  nlohmann::json j = {{"kind", kind},
                      {"group", group},
                      {"q_or_casimir", q_or_casimir},
                      {"samples", samples},
                      {"lambda_fit", lambda_fit},
                      {"max_abs_deviation", max_abs_deviation},
                      {"stderr", std_error},
                      {"pass", pass},
                      {"seed", seed}};
  if (!details.empty()) j["details"] = details;
  return j;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (index * 0xD1B54A32D192ED03ULL);
  std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
  return std::mt19937_64(seq);
}

unsigned worker_count() {
  if (const char* env = std::getenv("SUNCS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Complex gaussian_plane_sample(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::vector<Complex> sphere_sample(std::size_t dim, std::mt19937_64& rng) {
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& x : v) {
    x = gaussian_plane_sample(rng);
    norm2 += std::norm(x);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

FramePair haar_frame_sample(int n_group, std::mt19937_64& rng) {
  if (n_group < 2) throw Error("haar_frame_sample: N must be >= 2");
  Eigen::MatrixXcd g(n_group, n_group);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = gaussian_plane_sample(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  FramePair out;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    out.z.push_back(q(0, j));
    out.w.push_back(std::conj(q(1, j)));
  }
  return out;
}

OuterMoment outer_moment(const ModeLayout& layout, const std::vector<OccupationState>& block,
                         const ParamSampler& sampler, std::size_t samples, std::uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(block.size());
  const std::size_t chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<Eigen::MatrixXcd> sums(chunks);
  std::vector<Eigen::MatrixXd> squares(chunks);
  std::atomic<std::size_t> next{0};

  const auto work = [&] {
    Eigen::VectorXcd psi(d);
    for (std::size_t c = next++; c < chunks; c = next++) {
      auto rng = substream(seed, c);
      Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
      Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(d, d);
      const std::size_t count = std::min(kChunkSamples, samples - c * kChunkSamples);
      for (std::size_t k = 0; k < count; ++k) {
        const ParamVectors params = sampler(rng);
        for (Eigen::Index i = 0; i < d; ++i) {
          psi(i) = hw_product_amplitude(layout, params, block[static_cast<std::size_t>(i)]);
        }
        const Eigen::MatrixXcd outer = psi * psi.adjoint();
        sum += outer;
        sq += outer.cwiseAbs2();
      }
      sums[c] = std::move(sum);
      squares[c] = std::move(sq);
    }
  };
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(chunks, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXd total_sq = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t c = 0; c < chunks; ++c) {
    total += sums[c];
    total_sq += squares[c];
  }
  const double s = static_cast<double>(samples);
  OuterMoment out;
  out.samples = samples;
  out.mean = total / s;
  const Eigen::MatrixXd var = (total_sq / s - out.mean.cwiseAbs2()).cwiseMax(0.0) * (s / std::max(s - 1.0, 1.0));
  out.std_error = (var / s).cwiseSqrt();
  return out;
}

RoiReport charge_roi_analytic(const ModeLayout& layout, const ChargeVector& q, const Truncation& truncation,
                              double tol) {
  auto basis = build_basis(layout, truncation);
  ParamVectors unit;
  for (std::size_t r = 0; r < layout.rep_count(); ++r) unit.emplace_back(layout.mode_count(r), Complex(1.0));
  // Coefficients of the monomials prod z^n in the fixed-charge state.
  const StateVector coeff = project_charge(hw_product_state(basis, unit), q);

  // int d^2z/pi e^{-|z|^2} z^n conj(z)^m = delta_{nm} n!, computed as a product.
  const auto radial_moment = [](int n) {
    double v = 1.0;
    for (int k = 2; k <= n; ++k) v *= k;
    return v;
  };
  const auto entry = [&](std::size_t s, std::size_t t) -> Complex {
    if (basis->state(s) != basis->state(t)) return 0.0;  // phase orthogonality
    double moment = 1.0;
    for (int n : basis->state(s).quanta) moment *= radial_moment(n);
    return coeff[s] * std::conj(coeff[t]) * moment;
  };

  const auto sector = charge_sector(*basis, q);
  RoiReport rep;
  rep.kind = "charge-analytic";
  rep.group = group_name(layout);
  rep.q_or_casimir = q.q;
  double dev = 0.0;
  double trace = 0.0;
  const bool dense = basis->size() <= 1024;
  if (dense) {
    for (std::size_t s = 0; s < basis->size(); ++s) {
      const bool in_s = basis->charge(s) == q;
      for (std::size_t t = 0; t < basis->size(); ++t) {
        const Complex expected = (in_s && s == t) ? 1.0 : 0.0;
        const Complex m = entry(s, t);
        dev = std::max(dev, std::abs(m - expected));
        if (s == t && in_s) trace += m.real();
      }
    }
  } else {
    for (auto s : sector) {
      for (auto t : sector) {
        const Complex m = entry(s, t);
        dev = std::max(dev, std::abs(m - (s == t ? 1.0 : 0.0)));
        if (s == t) trace += m.real();
      }
    }
  }
  rep.lambda_fit = sector.empty() ? 0.0 : trace / static_cast<double>(sector.size());
  rep.max_abs_deviation = dev;
  rep.pass = dev <= tol;
  rep.details = {{"sector_dim", sector.size()},
                 {"basis_size", basis->size()},
                 {"scope", dense ? "full-basis" : "sector-block"},
                 {"tol", tol}};
  return rep;
}

RoiReport charge_roi_numeric(const ModeLayout& layout, const ChargeVector& q, const Truncation& truncation,
                             std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) throw Error("charge_roi_numeric: at least 1000 samples required");
  auto basis = build_basis(layout, truncation);
  const auto block = sector_states(*basis, q);
  const ParamSampler sampler = [&layout](std::mt19937_64& rng) {
    ParamVectors p;
    for (std::size_t r = 0; r < layout.rep_count(); ++r) {
      std::vector<Complex> v(layout.mode_count(r));
      for (auto& x : v) x = gaussian_plane_sample(rng);
      p.push_back(std::move(v));
    }
    return p;
  };
  const OuterMoment m = outer_moment(layout, block, sampler, samples, seed);
  const auto d = static_cast<Eigen::Index>(block.size());
  const Eigen::MatrixXcd dev = m.mean - Eigen::MatrixXcd::Identity(d, d);

  RoiReport rep;
  rep.kind = "charge-numeric";
  rep.group = group_name(layout);
  rep.q_or_casimir = q.q;
  rep.samples = samples;
  rep.seed = seed;
  rep.lambda_fit = d ? m.mean.trace().real() / static_cast<double>(d) : 0.0;
  rep.max_abs_deviation = max_entry(dev);
  rep.std_error = max_entry(m.std_error);
  rep.pass = rep.max_abs_deviation <= 3.0 * rep.std_error;
  rep.details = {{"sector_dim", block.size()}, {"criterion", "max |deviation| <= 3 * max stderr"}};
  return rep;
}

std::size_t irrep_dimension(const ModeLayout& layout, const std::vector<int>& casimirs) {
  const auto sym = [](int n, std::size_t d) -> std::size_t {
    return n < 0 ? 0 : binomial(n + static_cast<int>(d) - 1, static_cast<int>(d) - 1);
  };
  if (layout.rep_count() == 1) return sym(casimirs[0], layout.mode_count(0));
  if (has_conjugate_block(layout)) {
    const std::size_t d = layout.mode_count(0);
    return sym(casimirs[0], d) * sym(casimirs[1], d) - sym(casimirs[0] - 1, d) * sym(casimirs[1] - 1, d);
  }
  throw UnsupportedRepError("casimir ROI needs a single rep or reps {1, N-1}");
}

RoiReport casimir_roi_mc(const ModeLayout& layout, const std::vector<int>& casimirs, std::size_t samples,
                         std::uint64_t seed) {
  if (casimirs.size() != layout.rep_count()) throw Error("casimir_roi_mc: one Casimir value per rep required");
  if (samples == 0) throw Error("casimir_roi_mc: samples must be positive");
  const std::size_t dim = irrep_dimension(layout, casimirs);
  auto basis = build_basis(layout, {casimirs});
  const auto block = casimir_block(*basis, casimirs);

  ParamSampler sampler;
  if (has_conjugate_block(layout)) {
    const int n = layout.n_group();
    sampler = [n](std::mt19937_64& rng) {
      auto f = haar_frame_sample(n, rng);
      return ParamVectors{std::move(f.z), std::move(f.w)};
    };
  } else {
    sampler = [&layout](std::mt19937_64& rng) {
      ParamVectors p;
      for (std::size_t r = 0; r < layout.rep_count(); ++r) p.push_back(sphere_sample(layout.mode_count(r), rng));
      return p;
    };
  }
  const OuterMoment m = outer_moment(layout, block, sampler, samples, seed);
  const Eigen::MatrixXcd proj = traceless_projector(layout, block);
  const double proj_trace = proj.trace().real();

  double factorials = 1.0;
  for (int c : casimirs) factorials *= std::tgamma(c + 1.0);
  const double lambda = 1.0 / (factorials * static_cast<double>(dim));

  RoiReport rep;
  rep.kind = "casimir-mc";
  rep.group = group_name(layout);
  rep.q_or_casimir = casimirs;
  rep.samples = samples;
  rep.seed = seed;
  rep.lambda_fit = (m.mean * proj).trace().real() / proj_trace;
  rep.max_abs_deviation = max_entry(Eigen::MatrixXcd(m.mean - lambda * proj));
  rep.std_error = max_entry(m.std_error);
  rep.pass = rep.max_abs_deviation <= 3.0 * rep.std_error && std::abs(proj_trace - static_cast<double>(dim)) < 1e-9;

  // Schur: the block average commutes with the Cartan charges (diagonal here).
  double schur = 0.0;
  for (std::size_t a = 0; a < layout.charge_count(); ++a) {
    for (Eigen::Index i = 0; i < m.mean.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.mean.cols(); ++j) {
        const auto qi = charge_of(block[static_cast<std::size_t>(i)], layout).q[a];
        const auto qj = charge_of(block[static_cast<std::size_t>(j)], layout).q[a];
        schur = std::max(schur, std::abs(m.mean(i, j) * static_cast<double>(qj - qi)));
      }
    }
  }
  rep.details = {{"block_dim", block.size()},
                 {"irrep_dim", dim},
                 {"projector_trace", proj_trace},
                 {"lambda_expected", lambda},
                 {"relative_deviation", rep.max_abs_deviation / lambda},
                 {"lambda_relative_error", std::abs(rep.lambda_fit - lambda) / lambda},
                 {"cartan_commutator", schur},
                 {"criterion", "max |mean - lambda P| <= 3 * max stderr"}};
  return rep;
}

ScalingReport casimir_error_scaling(const ModeLayout& layout, const std::vector<int>& casimirs,
                                    const std::vector<std::size_t>& sizes, std::uint64_t seed) {
  ScalingReport out;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto s : sizes) {
    const auto rep = casimir_roi_mc(layout, casimirs, s, seed);
    out.sizes.push_back(s);
    out.std_errors.push_back(rep.std_error);
    const double x = std::log(static_cast<double>(s));
    const double y = std::log(rep.std_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(sizes.size());
  out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return out;
}

}  // namespace suncs

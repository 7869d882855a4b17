#include "suncs/fock.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

namespace suncs {

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  }
  return result;
}

std::vector<int> cartan_weights(int n_group, int a) {
  std::vector<int> h(static_cast<std::size_t>(n_group), 0);
  for (int i = 0; i < a; ++i) h[static_cast<std::size_t>(i)] = 1;
  h[static_cast<std::size_t>(a)] = -a;
  return h;
}

std::vector<std::vector<int>> rep_subsets(int n_group, int rep) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> recurse = [&](int start) {
    if (static_cast<int>(current.size()) == rep) {
      out.push_back(current);
      return;
    }
    for (int i = start; i < n_group; ++i) {
      current.push_back(i);
      recurse(i + 1);
      current.pop_back();
    }
  };
  recurse(0);
  return out;
}

ModeLayout::ModeLayout() : ModeLayout(1, {1}) {}

ModeLayout::ModeLayout(int n_group, std::vector<int> reps) : n_group_(n_group), reps_(std::move(reps)) {
  if (n_group_ < 1) throw Error("ModeLayout: group rank N must be >= 1");
  if (reps_.empty()) throw Error("ModeLayout: at least one representation is required");
  const int max_rep = std::max(1, n_group_ - 1);
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    if (reps_[k] < 1 || reps_[k] > max_rep) {
      throw Error("ModeLayout: representation F=" + std::to_string(reps_[k]) + " outside 1.." +
                  std::to_string(max_rep));
    }
    if (k > 0 && reps_[k] <= reps_[k - 1]) {
      throw Error("ModeLayout: representations must be distinct and sorted ascending");
    }
  }

  const std::size_t charges = charge_count();
  std::size_t offset = 0;
  for (int rep : reps_) {
    const std::size_t count = n_group_ == 1 ? 1 : binomial(n_group_, rep);
    mode_counts_.push_back(count);
    offsets_.push_back(offset);
    offset += count;

    std::vector<std::vector<int>> mode_weights(count, std::vector<int>(charges, 0));
    for (std::size_t a = 1; a <= charges; ++a) {
      const auto h = cartan_weights(n_group_, static_cast<int>(a));
      if (rep == 1) {
        for (std::size_t i = 0; i < count; ++i) mode_weights[i][a - 1] = h[i];
      } else if (rep == n_group_ - 1) {
        for (std::size_t j = 0; j < count; ++j) mode_weights[j][a - 1] = -h[j];
      } else {
        const auto subsets = rep_subsets(n_group_, rep);
        for (std::size_t s = 0; s < count; ++s) {
          int w = 0;
          for (int i : subsets[s]) w += h[static_cast<std::size_t>(i)];
          mode_weights[s][a - 1] = w;
        }
      }
    }
    weights_.insert(weights_.end(), mode_weights.begin(), mode_weights.end());
  }
  total_modes_ = offset;
}

ModeLayout ModeLayout::heisenberg_weyl() { return ModeLayout(1, {1}); }

ModeLayout ModeLayout::standard(int n_group) {
  if (n_group <= 2) return ModeLayout(n_group, {1});
  return ModeLayout(n_group, {1, n_group - 1});
}

std::optional<std::size_t> ModeLayout::find_rep(int rep) const {
  const auto it = std::find(reps_.begin(), reps_.end(), rep);
  if (it == reps_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - reps_.begin());
}

std::size_t ModeLayout::rep_position(int rep) const {
  if (auto pos = find_rep(rep)) return *pos;
  throw Error("ModeLayout: representation F=" + std::to_string(rep) + " not in layout");
}

bool ModeLayout::conjugate_pair_only() const {
  return std::all_of(reps_.begin(), reps_.end(), [&](int f) { return f == 1 || f == n_group_ - 1; });
}

int OccupationState::total(const ModeLayout& layout, std::size_t rep_pos) const {
  const auto b = block(layout, rep_pos);
  return std::accumulate(b.begin(), b.end(), 0);
}

std::size_t OccupationHash::operator()(const OccupationState& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : s.quanta) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

ChargeVector charge_of(const OccupationState& state, const ModeLayout& layout) {
  ChargeVector out{std::vector<int>(layout.charge_count(), 0)};
  const auto& weights = layout.weights();
  for (std::size_t mode = 0; mode < layout.total_modes(); ++mode) {
    const int n = state.quanta[mode];
    if (n == 0) continue;
    for (std::size_t a = 0; a < out.q.size(); ++a) out.q[a] += weights[mode][a] * n;
  }
  return out;
}

namespace {

void check_truncation(const ModeLayout& layout, const Truncation& truncation) {
  if (truncation.caps.size() != layout.rep_count()) {
    throw Error("Truncation: expected " + std::to_string(layout.rep_count()) + " caps, got " +
                std::to_string(truncation.caps.size()));
  }
  for (int cap : truncation.caps) {
    if (cap < 0) throw Error("Truncation: caps must be non-negative");
  }
}

// All occupation vectors of `modes` oscillators with total <= cap.
std::vector<std::vector<int>> enumerate_block(std::size_t modes, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(modes, 0);
  std::function<void(std::size_t, int)> recurse = [&](std::size_t mode, int remaining) {
    if (mode == modes) {
      out.push_back(current);
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      current[mode] = n;
      recurse(mode + 1, remaining - n);
    }
    current[mode] = 0;
  };
  recurse(0, cap);
  return out;
}

}  // namespace

std::size_t basis_size(const ModeLayout& layout, const Truncation& truncation) {
  check_truncation(layout, truncation);
  double estimate = 1.0;
  std::size_t worst = 0;
  double worst_count = 0.0;
  for (std::size_t r = 0; r < layout.rep_count(); ++r) {
    double count = 1.0;
    const auto d = static_cast<double>(layout.mode_count(r));
    for (int i = 1; i <= truncation.caps[r]; ++i) count *= (d + i) / i;
    estimate *= count;
    if (count > worst_count) {
      worst_count = count;
      worst = r;
    }
  }
  if (estimate > static_cast<double>(kMaxBasisSize)) {
    std::ostringstream msg;
    msg << "basis size ~" << static_cast<long double>(estimate) << " exceeds guard " << kMaxBasisSize
        << "; offending cap K=" << truncation.caps[worst] << " for rep F=" << layout.reps()[worst];
    throw SizeOverflowError(msg.str());
  }
  std::size_t size = 1;
  for (std::size_t r = 0; r < layout.rep_count(); ++r) {
    size *= binomial(truncation.caps[r] + static_cast<int>(layout.mode_count(r)),
                     static_cast<int>(layout.mode_count(r)));
  }
  return size;
}

FockBasis::FockBasis(ModeLayout layout, Truncation truncation)
    : layout_(std::move(layout)), truncation_(std::move(truncation)) {
  const std::size_t expected = basis_size(layout_, truncation_);

  std::vector<std::vector<std::vector<int>>> blocks;
  for (std::size_t r = 0; r < layout_.rep_count(); ++r) {
    blocks.push_back(enumerate_block(layout_.mode_count(r), truncation_.caps[r]));
  }

  states_.reserve(expected);
  std::vector<std::size_t> choice(blocks.size(), 0);
  while (true) {
    OccupationState s;
    s.quanta.reserve(layout_.total_modes());
    for (std::size_t r = 0; r < blocks.size(); ++r) {
      const auto& b = blocks[r][choice[r]];
      s.quanta.insert(s.quanta.end(), b.begin(), b.end());
    }
    states_.push_back(std::move(s));
    std::size_t r = 0;
    while (r < blocks.size() && ++choice[r] == blocks[r].size()) choice[r++] = 0;
    if (r == blocks.size()) break;
  }

  // Graded order: total quanta ascending, then descending lexicographic.
  std::sort(states_.begin(), states_.end(), [](const OccupationState& a, const OccupationState& b) {
    const int ta = std::accumulate(a.quanta.begin(), a.quanta.end(), 0);
    const int tb = std::accumulate(b.quanta.begin(), b.quanta.end(), 0);
    if (ta != tb) return ta < tb;
    return a.quanta > b.quanta;
  });

  totals_.resize(states_.size() * layout_.rep_count());
  charges_.reserve(states_.size());
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    for (std::size_t r = 0; r < layout_.rep_count(); ++r) {
      totals_[i * layout_.rep_count() + r] = states_[i].total(layout_, r);
    }
    charges_.push_back(charge_of(states_[i], layout_));
    index_.emplace(states_[i], i);
  }
}

std::optional<std::size_t> FockBasis::find(const OccupationState& state) const {
  const auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index_of(const OccupationState& state) const {
  if (auto idx = find(state)) return *idx;
  std::ostringstream msg;
  msg << "FockBasis: occupation (";
  for (std::size_t i = 0; i < state.quanta.size(); ++i) msg << (i ? "," : "") << state.quanta[i];
  msg << ") not in truncated basis";
  throw Error(msg.str());
}

BasisPtr build_basis(const ModeLayout& layout, const Truncation& truncation) {
  return std::make_shared<const FockBasis>(layout, truncation);
}

std::vector<std::size_t> charge_sector(const FockBasis& basis, const ChargeVector& q) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis.charge(i) == q) out.push_back(i);
  }
  return out;
}

std::map<ChargeVector, std::vector<std::size_t>> charge_sectors(const FockBasis& basis) {
  std::map<ChargeVector, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < basis.size(); ++i) out[basis.charge(i)].push_back(i);
  return out;
}

}  // namespace suncs

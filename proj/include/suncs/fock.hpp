#pragma once

// Truncated multi-mode bosonic Fock spaces for generalized Schwinger bosons.
//
// A layout for SU(N) carries one block of binomial(N, F) oscillators per
// fundamental representation F. Occupation states are stored flattened, rep
// blocks in ascending F order. The Heisenberg-Weyl oscillator is the special
// layout n_group = 1, reps = {1}: a single mode with no charges.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "suncs/error.hpp"

namespace suncs {

inline constexpr std::size_t kMaxBasisSize = 10'000'000;

std::size_t binomial(int n, int k);

// Integer Cartan weights h^a_i of the defining representation, from
// H^a(1) = sum_{i<=a} e^{ii} - a e^{a+1,a+1}. Index a is 1-based, the
// returned vector is indexed by i = 0..N-1.
std::vector<int> cartan_weights(int n_group, int a);

// F-element subsets of {0..N-1} in lexicographic order; labels the modes of
// the F-th fundamental representation for 1 < F < N-1.
std::vector<std::vector<int>> rep_subsets(int n_group, int rep);

class ModeLayout {
 public:
  ModeLayout();  // Heisenberg-Weyl
  ModeLayout(int n_group, std::vector<int> reps);

  static ModeLayout heisenberg_weyl();
  // reps {1, N-1}, or {1} for SU(2).
  static ModeLayout standard(int n_group);

  int n_group() const { return n_group_; }
  const std::vector<int>& reps() const { return reps_; }
  std::size_t rep_count() const { return reps_.size(); }
  std::optional<std::size_t> find_rep(int rep) const;
  std::size_t rep_position(int rep) const;
  std::size_t mode_count(std::size_t rep_pos) const { return mode_counts_[rep_pos]; }
  std::size_t offset(std::size_t rep_pos) const { return offsets_[rep_pos]; }
  std::size_t total_modes() const { return total_modes_; }
  std::size_t charge_count() const { return n_group_ > 1 ? static_cast<std::size_t>(n_group_ - 1) : 0; }

  // Weight of each flattened mode under the integer charges Q_a: [mode][a-1].
  const std::vector<std::vector<int>>& weights() const { return weights_; }

  // True when every rep is the defining (F=1) or conjugate (F=N-1) one.
  bool conjugate_pair_only() const;

  bool operator==(const ModeLayout& other) const {
    return n_group_ == other.n_group_ && reps_ == other.reps_;
  }

 private:
  int n_group_ = 1;
  std::vector<int> reps_;
  std::vector<std::size_t> mode_counts_;
  std::vector<std::size_t> offsets_;
  std::size_t total_modes_ = 0;
  std::vector<std::vector<int>> weights_;
};

struct Truncation {
  std::vector<int> caps;  // maximum total quanta per rep, aligned with ModeLayout::reps()
  bool operator==(const Truncation&) const = default;
};

struct OccupationState {
  std::vector<int> quanta;

  std::span<const int> block(const ModeLayout& layout, std::size_t rep_pos) const {
    return std::span<const int>(quanta).subspan(layout.offset(rep_pos), layout.mode_count(rep_pos));
  }
  int total(const ModeLayout& layout, std::size_t rep_pos) const;

  auto operator<=>(const OccupationState&) const = default;
  bool operator==(const OccupationState&) const = default;
};

struct OccupationHash {
  std::size_t operator()(const OccupationState& s) const noexcept;
};

struct ChargeVector {
  std::vector<int> q;
  auto operator<=>(const ChargeVector&) const = default;
  bool operator==(const ChargeVector&) const = default;
};

ChargeVector charge_of(const OccupationState& state, const ModeLayout& layout);

// Immutable after construction; safe for concurrent readers.
class FockBasis {
 public:
  FockBasis(ModeLayout layout, Truncation truncation);

  const ModeLayout& layout() const { return layout_; }
  const Truncation& truncation() const { return truncation_; }
  std::size_t size() const { return states_.size(); }

  const OccupationState& state(std::size_t index) const { return states_[index]; }
  const std::vector<OccupationState>& states() const { return states_; }
  std::optional<std::size_t> find(const OccupationState& state) const;
  std::size_t index_of(const OccupationState& state) const;

  int rep_total(std::size_t index, std::size_t rep_pos) const {
    return totals_[index * layout_.rep_count() + rep_pos];
  }
  int cap(std::size_t rep_pos) const { return truncation_.caps[rep_pos]; }
  // Strictly below the cap of the given rep: a single raise stays inside.
  bool interior(std::size_t index, std::size_t rep_pos) const {
    return rep_total(index, rep_pos) < cap(rep_pos);
  }
  const ChargeVector& charge(std::size_t index) const { return charges_[index]; }

  bool same_space(const FockBasis& other) const {
    return layout_ == other.layout_ && truncation_ == other.truncation_;
  }

 private:
  ModeLayout layout_;
  Truncation truncation_;
  std::vector<OccupationState> states_;
  std::vector<int> totals_;
  std::vector<ChargeVector> charges_;
  std::unordered_map<OccupationState, std::size_t, OccupationHash> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr build_basis(const ModeLayout& layout, const Truncation& truncation);

// Number of states build_basis would enumerate, without enumerating.
std::size_t basis_size(const ModeLayout& layout, const Truncation& truncation);

std::vector<std::size_t> charge_sector(const FockBasis& basis, const ChargeVector& q);

// Every occurring charge with its member indices, ordered by charge.
std::map<ChargeVector, std::vector<std::size_t>> charge_sectors(const FockBasis& basis);

}  // namespace suncs

#pragma once

// Resolution-of-identity checks. The per-mode measure is d^2z e^{-|z|^2}/pi,
// so fixed-charge states integrate to the sector projector with constant 1.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "suncs/coherent.hpp"
#include "json.hpp"

namespace suncs {

struct RoiReport {
  std::string kind;  // charge-analytic | charge-numeric | casimir-mc
  std::string group;
  nlohmann::json q_or_casimir;
  std::size_t samples = 0;
  double lambda_fit = 0.0;
  double max_abs_deviation = 0.0;
  double std_error = 0.0;  // largest per-entry standard error
  bool pass = false;
  std::uint64_t seed = 0;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Independent generator for chunk `index` of a run seeded with `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// SUNCS_THREADS if set, else hardware concurrency.
unsigned worker_count();

inline constexpr std::size_t kChunkSamples = 4096;

// Complex normal with E|z|^2 = 1: the Gaussian plane measure.
Complex gaussian_plane_sample(std::mt19937_64& rng);
std::vector<Complex> sphere_sample(std::size_t dim, std::mt19937_64& rng);

struct FramePair {
  std::vector<Complex> z;
  std::vector<Complex> w;
};
// Rows of a Haar unitary: z = row 0, w = conj(row 1), so |z| = |w| = 1 and z.w = 0.
FramePair haar_frame_sample(int n_group, std::mt19937_64& rng);

// Monte-Carlo mean of psi psi^dagger for a sampled parameter set, with
// per-entry standard errors. Chunks of kChunkSamples use their own substream
// and are merged in chunk order, so results do not depend on thread count.
struct OuterMoment {
  Eigen::MatrixXcd mean;
  Eigen::MatrixXd std_error;
  std::size_t samples = 0;
};
using ParamSampler = std::function<ParamVectors(std::mt19937_64&)>;
OuterMoment outer_moment(const ModeLayout& layout, const std::vector<OccupationState>& block,
                         const ParamSampler& sampler, std::size_t samples, std::uint64_t seed);

RoiReport charge_roi_analytic(const ModeLayout& layout, const ChargeVector& q, const Truncation& truncation,
                              double tol = 1e-12);
RoiReport charge_roi_numeric(const ModeLayout& layout, const ChargeVector& q, const Truncation& truncation,
                             std::size_t samples, std::uint64_t seed);

// Fixed-Casimir block average over the parameter manifold (unit spheres, or
// Haar frames for reps {1, N-1}). Expected: lambda times the projector onto
// the irreducible part of the block, lambda = 1/(prod c_F! * dim).
RoiReport casimir_roi_mc(const ModeLayout& layout, const std::vector<int>& casimirs, std::size_t samples,
                         std::uint64_t seed);

// Dimension of the irreducible representation reached by the Casimir block.
std::size_t irrep_dimension(const ModeLayout& layout, const std::vector<int>& casimirs);

struct ScalingReport {
  std::vector<std::size_t> sizes;
  std::vector<double> std_errors;
  double slope = 0.0;  // d log(stderr) / d log(S), ideally -1/2
};
ScalingReport casimir_error_scaling(const ModeLayout& layout, const std::vector<int>& casimirs,
                                    const std::vector<std::size_t>& sizes, std::uint64_t seed);

}  // namespace suncs

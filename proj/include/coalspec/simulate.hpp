#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "coalspec/generator.hpp"
#include "coalspec/partition.hpp"
#include "coalspec/rrt.hpp"

namespace coalspec {

inline constexpr double kRunToAbsorption = std::numeric_limits<double>::infinity();

/// A coalescent path from Delta_[n]: states[k] holds on
/// [jump_times[k-1], jump_times[k]) with jump_times[-1] = 0.
struct Trajectory {
  std::vector<double> jump_times;
  std::vector<SetPartition> states;

  const SetPartition& state_at(double t) const;
  bool absorbed() const { return states.back().size() == 1; }
  bool visits(const SetPartition& p) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Independent stream for replicate `replicate` of a run seeded with `seed`.
Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate);

/// Bolthausen-Sznitman n-coalescent through the random recursive tree: start
/// from a uniform increasing tree on singletons and cut a uniform edge after
/// an exponential wait with rate equal to the number of edges.
Trajectory simulate_bs(int n, double horizon, Rng& rng);

/// Kingman's n-coalescent: with b blocks wait Exp(C(b,2)), then merge a
/// uniform pair.
Trajectory simulate_kingman(int n, double horizon, Rng& rng);

Trajectory simulate(Model model, int n, double horizon, Rng& rng);

struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/reps)
  std::uint64_t hits = 0;
  std::uint64_t reps = 0;
};

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t reps);

/// Empirical law of Pi(t) started at Delta_[n]; only observed states appear.
/// Replicate i uses replicate_rng(seed, i).
std::map<SetPartition, Estimate> estimate_transition(Model model, int n, double t, std::uint64_t reps,
                                                     std::uint64_t seed);

/// Fraction of uniform increasing trees on pi that contain rho.
Estimate estimate_containment(const SetPartition& pi, const SetPartition& rho, std::uint64_t reps,
                              std::uint64_t seed);

/// Fraction of trajectories from Delta_[n] (run to absorption) visiting rho.
Estimate estimate_hitting(Model model, const SetPartition& rho, std::uint64_t reps, std::uint64_t seed);

}  // namespace coalspec

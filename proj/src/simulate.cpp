#include "coalspec/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coalspec/errors.hpp"

namespace coalspec {

namespace {

void require_positive_n(int n) {
  if (n < 1 || n > kMaxElement) throw domain_error("simulate: n must be in 1..64");
}

void require_reps(std::uint64_t reps) {
  if (reps == 0) throw domain_error("estimate: reps must be at least 1");
}

}  // namespace

const SetPartition& Trajectory::state_at(double t) const {
  const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  return states[static_cast<std::size_t>(it - jump_times.begin())];
}

bool Trajectory::visits(const SetPartition& p) const {
  return std::find(states.begin(), states.end(), p) != states.end();
}

Rng replicate_rng(std::uint64_t seed, std::uint64_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32)};
  return Rng(seq);
}

Trajectory simulate_bs(int n, double horizon, Rng& rng) {
  require_positive_n(n);
  Trajectory path;
  auto tree = sample_rrt(SetPartition::singletons(n), rng);
  path.states.push_back(tree.labels());
  double now = 0.0;
  while (tree.node_count() > 1) {
    const auto edges = static_cast<double>(tree.node_count() - 1);
    now += std::exponential_distribution<double>(edges)(rng);
    if (now > horizon) break;
    tree = cut_random(tree, rng);
    path.jump_times.push_back(now);
    path.states.push_back(tree.labels());
  }
  return path;
}

Trajectory simulate_kingman(int n, double horizon, Rng& rng) {
  require_positive_n(n);
  Trajectory path;
  auto state = SetPartition::singletons(n);
  path.states.push_back(state);
  double now = 0.0;
  while (state.size() > 1) {
    const auto b = state.size();
    const auto pairs = b * (b - 1) / 2;
    now += std::exponential_distribution<double>(static_cast<double>(pairs))(rng);
    if (now > horizon) break;
    auto pick = std::uniform_int_distribution<std::size_t>(0, pairs - 1)(rng);
    std::size_t first = 0;
    while (pick >= b - 1 - first) {
      pick -= b - 1 - first;
      ++first;
    }
    const std::size_t second = first + 1 + pick;
    state = merge_blocks(state, (std::uint64_t{1} << first) | (std::uint64_t{1} << second));
    path.jump_times.push_back(now);
    path.states.push_back(state);
  }
  return path;
}

Trajectory simulate(Model model, int n, double horizon, Rng& rng) {
  return model == Model::bolthausen_sznitman ? simulate_bs(n, horizon, rng) : simulate_kingman(n, horizon, rng);
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t reps) {
  require_reps(reps);
  Estimate e;
  e.hits = hits;
  e.reps = reps;
  e.estimate = static_cast<double>(hits) / static_cast<double>(reps);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(reps));
  return e;
}

std::map<SetPartition, Estimate> estimate_transition(Model model, int n, double t, std::uint64_t reps,
                                                     std::uint64_t seed) {
  require_reps(reps);
  if (!(t >= 0.0)) throw domain_error("estimate_transition: t must be nonnegative");
  std::map<SetPartition, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < reps; ++i) {
    auto rng = replicate_rng(seed, i);
    const auto path = simulate(model, n, t, rng);
    ++counts[path.states.back()];
  }
  std::map<SetPartition, Estimate> out;
  for (const auto& [state, hits] : counts) out.emplace(state, binomial_estimate(hits, reps));
  return out;
}

Estimate estimate_containment(const SetPartition& pi, const SetPartition& rho, std::uint64_t reps,
                              std::uint64_t seed) {
  require_reps(reps);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < reps; ++i) {
    auto rng = replicate_rng(seed, i);
    if (contains(sample_rrt(pi, rng), rho)) ++hits;
  }
  return binomial_estimate(hits, reps);
}

Estimate estimate_hitting(Model model, const SetPartition& rho, std::uint64_t reps, std::uint64_t seed) {
  require_reps(reps);
  if (!rho.is_full_ground()) throw domain_error("estimate_hitting: rho must be a partition of [n]");
  const int n = rho.ground_size();
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < reps; ++i) {
    auto rng = replicate_rng(seed, i);
    if (simulate(model, n, kRunToAbsorption, rng).visits(rho)) ++hits;
  }
  return binomial_estimate(hits, reps);
}

}  // namespace coalspec

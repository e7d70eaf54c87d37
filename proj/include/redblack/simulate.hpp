#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redblack/equilibrium.hpp"

// Monte Carlo play-out of a strategy profile, used to cross-check the
// analytic win probabilities.

namespace redblack {

struct SimReport {
  std::int64_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> wins;   // per player
  std::int64_t house_wins = 0;      // games ending dead
  std::vector<double> empirical;    // wins / runs
  double mean_rounds = 0.0;
};

// Plays `runs` independent games. Run r draws from its own generator
// (std::mt19937_64 seeded with splitmix64(seed + r)), so results are
// reproducible from (seed, runs) alone and independent of execution order.
// Throws if a single game exceeds 10^7 rounds.
SimReport run_games(const GameConfig& cfg, const WinProbModel& model,
                    const std::vector<Strategy>& profile, std::int64_t runs,
                    std::uint64_t seed);

struct EmpiricalComparison {
  double z = 3.0;
  std::vector<double> analytic;
  std::vector<double> empirical;
  std::vector<double> bound;      // z * sqrt(p(1-p)/runs) per player
  std::vector<bool> pass;
  bool all_pass = true;
};

// Per player: |empirical - analytic| <= z standard errors. Zero-variance
// entries (analytic 0 or 1) must match exactly.
EmpiricalComparison compare_empirical(const SimReport& sim,
                                      std::span<const double> analytic,
                                      double z = 3.0);

}  // namespace redblack

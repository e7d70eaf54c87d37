#include "redblack/simulate.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace redblack {

namespace {

constexpr std::int64_t kRoundCap = 10'000'000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; keeps draws identical across
// standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SimReport run_games(const GameConfig& cfg, const WinProbModel& model,
                    const std::vector<Strategy>& profile, std::int64_t runs,
                    std::uint64_t seed) {
  if (static_cast<int>(profile.size()) != cfg.n_players) {
    throw std::invalid_argument("expected one strategy per player");
  }
  if (runs <= 0) throw std::invalid_argument("runs must be positive");

  SimReport report;
  report.runs = runs;
  report.seed = seed;
  report.wins.assign(cfg.n_players, 0);

  std::int64_t total_rounds = 0;
  for (std::int64_t run = 0; run < runs; ++run) {
    // Per-run substream: reproducible regardless of how runs are batched.
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(run)));
    State s = cfg.initial_state();
    StateClass cls = classify_state(cfg, s);
    std::int64_t rounds = 0;
    while (cls.active()) {
      if (++rounds > kRoundCap) {
        throw std::runtime_error("game exceeded the round cap");
      }
      BetProfile bets(cfg.n_players);
      for (int j = 0; j < cfg.n_players; ++j) bets[j] = profile[j].bet(s, j);
      std::vector<Outcome> outs = transitions(cfg, s, bets, model);
      double u = uniform01(rng);
      double acc = 0.0;
      const State* next = &outs.back().state;
      for (const Outcome& o : outs) {
        acc += o.prob;
        if (u < acc) {
          next = &o.state;
          break;
        }
      }
      assert(std::accumulate(next->begin(), next->end(), 0) <=
             std::accumulate(s.begin(), s.end(), 0));  // money never grows
      s = *next;
      cls = classify_state(cfg, s);
    }
    total_rounds += rounds;
    if (cls.tag == StateTag::Winner) {
      ++report.wins[cls.winner];
    } else {
      ++report.house_wins;
    }
  }

  report.empirical.resize(cfg.n_players);
  for (int j = 0; j < cfg.n_players; ++j) {
    report.empirical[j] =
        static_cast<double>(report.wins[j]) / static_cast<double>(runs);
  }
  report.mean_rounds =
      static_cast<double>(total_rounds) / static_cast<double>(runs);
  return report;
}

EmpiricalComparison compare_empirical(const SimReport& sim,
                                      std::span<const double> analytic,
                                      double z) {
  if (analytic.size() != sim.empirical.size()) {
    throw std::invalid_argument("expected one analytic value per player");
  }
  EmpiricalComparison cmp;
  cmp.z = z;
  for (std::size_t j = 0; j < analytic.size(); ++j) {
    double p = analytic[j];
    double emp = sim.empirical[j];
    double bound =
        z * std::sqrt(p * (1.0 - p) / static_cast<double>(sim.runs));
    bool pass;
    if (p <= 0.0 || p >= 1.0) {
      pass = emp == p;  // zero variance: demand an exact match
    } else {
      pass = std::abs(emp - p) <= bound;
    }
    cmp.analytic.push_back(p);
    cmp.empirical.push_back(emp);
    cmp.bound.push_back(bound);
    cmp.pass.push_back(pass);
    cmp.all_pass = cmp.all_pass && pass;
  }
  return cmp;
}

}  // namespace redblack

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "redblack/prob_models.hpp"

// Strategy evaluation and equilibrium certification. Everything here works
// on the full enumerated state space; the instances this toolkit targets
// stay small (a few hundred states), so dense solves are fine.

namespace redblack {

// A stationary pure strategy: one legal stake per (active state, player).
// At absorbing states, and for players who cannot stake, bet() must be 0.
struct Strategy {
  std::string name;
  std::function<int(const State& s, int player)> bet;
};

// Stake the whole fortune while it is strictly between 0 and the goal.
Strategy bold_strategy(const GameConfig& cfg);
// Stake the minimum of 1.
Strategy timid_strategy(const GameConfig& cfg);

std::vector<Strategy> all_bold_profile(const GameConfig& cfg);

// Per-state win probabilities under a fixed strategy profile.
struct ProfileValue {
  std::vector<State> states;                 // lexicographic
  std::vector<std::vector<double>> win_prob; // [player][state index]
  std::vector<double> house_mass;            // P(nobody wins) per state
  int initial_index = -1;
  std::string method;                        // "linear-solve" | "fixed-point"

  double initial_win_prob(int player) const {
    return win_prob[player][initial_index];
  }
};

// Solves the absorbing-chain equations for every player plus the house.
// Uses a dense LU solve and falls back to fixed-point iteration (sup-norm
// 1e-12, cap 1e6 sweeps) if the system is singular; throws on
// non-convergence, which would indicate broken probability bookkeeping.
ProfileValue evaluate_profile(const GameConfig& cfg, const WinProbModel& model,
                              const std::vector<Strategy>& profile);

// One player's optimal value/policy against fixed opponents.
struct BestResponse {
  int player = 0;
  std::vector<State> states;
  std::vector<double> value;  // per state
  std::vector<int> policy;    // optimal stake per state, 0 at absorbing
  int sweeps = 0;
  int initial_index = -1;

  double initial_value() const { return value[initial_index]; }
};

// Value iteration over the player's stake choices, opponents following
// `profile` (the player's own entry is ignored). Sup-norm tolerance 1e-12,
// sweep cap 1e6. Ties between stakes (within 1e-9) resolve to the smallest.
BestResponse best_response(const GameConfig& cfg, const WinProbModel& model,
                           int player, const std::vector<Strategy>& profile);

// Expected value of each legal stake for `player` at `s`, opponents playing
// `profile`, continuations priced by the value table `v` (aligned with
// `space`). Returns (stake, value) pairs in ascending stake order.
std::vector<std::pair<int, double>> bet_values(
    const GameConfig& cfg, const WinProbModel& model, int player,
    const std::vector<Strategy>& profile, const State& s,
    const StateSpace& space, const std::vector<double>& v);

// Probability that `player` eventually wins when they stake `bet` once at s
// (all others bold) and everyone plays boldly afterwards, computed by the
// two-round closed form: win now, or lose the round to some rival and win
// the next round from the reduced fortune, with the rivals' coordinates kept
// at their current fortunes.
double one_shot_deviation_value(const GameConfig& cfg,
                                const WinProbModel& model, const State& s,
                                int player, int bet);

struct DeviationWitness {
  State state;
  int bet = 0;
  double gain = 0.0;
};

struct PlayerCertificate {
  int player = 0;
  double bold_value = 0.0;
  double best_response_value = 0.0;
  std::optional<DeviationWitness> witness;  // set when the gain exceeds tol
};

struct Certificate {
  bool is_nash = true;
  double tol = 1e-9;
  bool all_states = false;     // compared at every active state, not just the start
  bool hypothesis_holds = false;
  std::vector<PlayerCertificate> players;
};

// Is all-bold a Nash equilibrium? Compares each player's bold value with
// their best response against all-bold. By default the comparison happens at
// the initial state; with all_states set, at every active state. The
// certificate also reports whether the slice inequality held everywhere, so
// "inequality everywhere => bold is Nash" can be examined per instance.
Certificate certify_bold_nash(const GameConfig& cfg, const WinProbModel& model,
                              double tol = 1e-9, bool all_states = false);

}  // namespace redblack

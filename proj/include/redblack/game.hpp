#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Core state machine for an N-player red-and-black betting game.
//
// Every player starts with a positive fortune, all players share one goal G,
// and the table's total money M = sum of fortunes must satisfy G <= M < 2G.
// Each round the active players stake part of their fortune; exactly one
// player (or the house) collects every stake. A player wins outright on
// reaching the goal; the game is dead once the money left on the table cannot
// reach the goal for anyone.

namespace redblack {

// A fortune vector, one entry per player. States live on the lattice
// {0..M}^N restricted to sum <= M.
using State = std::vector<int>;

// A stake vector, one entry per player, validated against action_set().
using BetProfile = std::vector<int>;

struct GameConfig {
  int n_players = 0;
  std::vector<int> initial_fortunes;
  int goal = 0;
  int total = 0;  // M, derived: sum of initial fortunes

  State initial_state() const { return initial_fortunes; }
};

// Builds a validated config. Throws std::invalid_argument naming the violated
// condition: n < 2, non-positive fortune, M < G, or M >= 2G.
GameConfig validate_config(int n_players, const std::vector<int>& fortunes,
                           int goal);

enum class StateTag { Active, Winner, Dead };

struct StateClass {
  StateTag tag = StateTag::Active;
  int winner = -1;  // player index when tag == Winner

  bool active() const { return tag == StateTag::Active; }
  bool absorbing() const { return tag != StateTag::Active; }
};

// Winner: some coordinate reached the goal (unique, since M < 2G).
// Dead: nobody can reach the goal anymore (sum of fortunes < G).
// Active: everything else.
StateClass classify_state(const GameConfig& cfg, const State& s);

// All states with coordinates in {0..M} and sum <= M, ascending
// lexicographic. Size is C(M + N, N).
std::vector<State> enumerate_states(const GameConfig& cfg);

// Legal stakes for one player: {1..x_j} while the game is still running and
// the fortune is strictly between 0 and the goal (betting is compulsory),
// {0} otherwise. Players at or above the goal, and broke players, sit out,
// and nobody stakes once the game is settled.
std::vector<int> action_set(const GameConfig& cfg, const State& s, int player);

// Terminal reward: 1 once the player's fortune reaches the goal, else 0.
int payoff(const GameConfig& cfg, const State& s, int player);

class WinProbModel;  // defined in prob_models.hpp

struct Outcome {
  State state;
  double prob = 0.0;
};

// One-round law of motion from an Active state. The winner keeps their own
// stake and collects everyone else's; losers forfeit theirs; with the
// leftover probability the house collects every stake. Duplicate successor
// states are merged and zero-probability outcomes dropped; results are in
// ascending lexicographic state order and their probabilities sum to 1
// within 1e-12.
std::vector<Outcome> transitions(const GameConfig& cfg, const State& s,
                                 const BetProfile& bets,
                                 const WinProbModel& model);

// Enumerated state space with index lookup, shared by the solvers.
struct StateSpace {
  explicit StateSpace(const GameConfig& cfg);

  std::vector<State> states;  // lexicographic
  std::map<State, int> index;

  int index_of(const State& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
  int size() const { return static_cast<int>(states.size()); }
};

}  // namespace redblack

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "redblack/game.hpp"

// Win-probability models. A model maps a stake vector (plus the current
// fortunes, for families that need them) to one win probability per player.
// Two rules bind every legal model:
//   * the probabilities sum to at most 1 (the remainder goes to the house),
//   * a player staking nothing cannot win the round.

namespace redblack {

// Scalar shape phi: [0,1] -> [0,1] with phi(0) = 0, used by the proportional
// family. Table shapes interpolate linearly between equally spaced knots.
struct PhiFunction {
  enum class Shape { Linear, Power, Table };

  Shape shape = Shape::Linear;
  double param = 1.0;          // slope w (Linear, w <= 1) or exponent p (Power, p >= 1)
  std::vector<double> knots;   // Table values at i/(knots-1)

  double operator()(double s) const;
  nlohmann::json descriptor() const;
};

PhiFunction phi_linear(double w);
PhiFunction phi_power(double p);
PhiFunction phi_table(std::vector<double> knots);

class WinProbModel {
 public:
  using Eval = std::function<std::vector<double>(std::span<const int> bets,
                                                 std::span<const int> fortunes)>;

  WinProbModel(int n_players, Eval eval, nlohmann::json descriptor,
               std::vector<int> default_context);

  int players() const { return n_players_; }

  // Win probability per player for the given stakes, evaluated against the
  // given fortune context (families that ignore fortunes document so in
  // their descriptor).
  std::vector<double> win_probs(std::span<const int> bets,
                                std::span<const int> fortunes) const;

  // Same, against the context the model was built with.
  std::vector<double> win_probs(std::span<const int> bets) const;

  const nlohmann::json& descriptor() const { return descriptor_; }
  const std::vector<int>& default_context() const { return default_context_; }

 private:
  int n_players_;
  Eval eval_;
  nlohmann::json descriptor_;
  std::vector<int> default_context_;
};

// F_i = phi(a_i / (a_i + sum of the other players' fortunes)). The fortunes
// in the denominator come from the evaluation context, so slices and
// transitions see the fortunes of the state they are taken at;
// context_fortunes only seeds the default context. A zero denominator or a
// zero stake gives probability 0.
WinProbModel make_proportional(PhiFunction phi,
                               std::vector<int> context_fortunes);

// F_j = c for every player who stakes at least 1, independent of fortunes.
// Requires 0 <= c <= 1/n so the probabilities can sum to at most 1.
WinProbModel make_constant(int n_players, double c);

// One designated player wins outright (probability 1) whenever their stake
// meets the threshold; everyone else never wins. threshold >= 1.
WinProbModel make_threshold_surewin(int n_players, int player, int threshold);

// F_j = (1 - exp(-epsilon * a_j)) / n, fortunes ignored. epsilon > 0.
WinProbModel make_scaled_exponential(int n_players, double epsilon);

struct ModelViolation {
  BetProfile bets;
  std::string kind;  // "prob-sum-above-one" | "win-at-zero-stake"
  double value = 0.0;
};

struct ModelValidationReport {
  bool ok = true;
  std::vector<ModelViolation> violations;
  long long bets_checked = 0;
};

// Exhaustively scans every stake vector with entries in {0..M} summing to at
// most M, evaluated against the initial fortunes, and records every breach
// of the two model rules (sum tolerance 1e-12).
ModelValidationReport validate_model(const WinProbModel& model,
                                     const GameConfig& cfg);

// The two curves of the one-player view at a state: vary one player's stake
// t over {0..M} while every other player stakes their full fortune.
//   f[t] = that player's win probability
//   g[t] = the other players' combined win probability
struct FGSlice {
  std::vector<double> f;
  std::vector<double> g;
  State state;
  int player = 0;
};

FGSlice slice_fg(const WinProbModel& model, const GameConfig& cfg,
                 const State& s, int player);

}  // namespace redblack

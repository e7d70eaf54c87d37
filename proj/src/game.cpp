#include "redblack/game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "redblack/prob_models.hpp"

namespace redblack {

namespace {

constexpr double kProbTolerance = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_state_shape(const GameConfig& cfg, const State& s) {
  require(static_cast<int>(s.size()) == cfg.n_players,
          "state has " + std::to_string(s.size()) + " coordinates, expected " +
              std::to_string(cfg.n_players));
  int sum = 0;
  for (int x : s) {
    require(x >= 0, "negative fortune in state");
    sum += x;
  }
  require(sum <= cfg.total,
          "state holds more money than the table total " +
              std::to_string(cfg.total));
}

}  // namespace

GameConfig validate_config(int n_players, const std::vector<int>& fortunes,
                           int goal) {
  require(n_players >= 2,
          "need at least 2 players, got " + std::to_string(n_players));
  require(static_cast<int>(fortunes.size()) == n_players,
          "expected one fortune per player");
  for (int i = 0; i < n_players; ++i) {
    require(fortunes[i] >= 1, "player " + std::to_string(i + 1) +
                                  " must start with a positive fortune");
  }
  require(goal >= 1, "goal must be positive");
  int total = std::accumulate(fortunes.begin(), fortunes.end(), 0);
  require(total >= goal, "M < G: table total " + std::to_string(total) +
                             " is below the goal " + std::to_string(goal));
  require(total < 2 * goal,
          "M >= 2G: table total " + std::to_string(total) +
              " would allow two winners (goal " + std::to_string(goal) + ")");
  GameConfig cfg;
  cfg.n_players = n_players;
  cfg.initial_fortunes = fortunes;
  cfg.goal = goal;
  cfg.total = total;
  return cfg;
}

StateClass classify_state(const GameConfig& cfg, const State& s) {
  check_state_shape(cfg, s);
  StateClass c;
  int sum = 0;
  for (int j = 0; j < cfg.n_players; ++j) {
    sum += s[j];
    if (s[j] >= cfg.goal) {
      c.tag = StateTag::Winner;
      c.winner = j;  // unique: two winners would need M >= 2G
      return c;
    }
  }
  c.tag = sum >= cfg.goal ? StateTag::Active : StateTag::Dead;
  return c;
}

std::vector<State> enumerate_states(const GameConfig& cfg) {
  std::vector<State> out;
  State cur(cfg.n_players, 0);
  // Odometer over {0..M}^N, pruned by the running sum; emits lexicographic.
  std::function<void(int, int)> fill = [&](int pos, int remaining) {
    if (pos == cfg.n_players) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      fill(pos + 1, remaining - v);
    }
    cur[pos] = 0;
  };
  fill(0, cfg.total);
  return out;
}

std::vector<int> action_set(const GameConfig& cfg, const State& s,
                            int player) {
  check_state_shape(cfg, s);
  require(player >= 0 && player < cfg.n_players, "player index out of range");
  int x = s[player];
  // Once the game is settled nobody stakes; otherwise broke players and
  // players already at the goal sit out.
  if (!classify_state(cfg, s).active() || x < 1 || x >= cfg.goal) return {0};
  std::vector<int> bets(x);
  std::iota(bets.begin(), bets.end(), 1);
  return bets;
}

int payoff(const GameConfig& cfg, const State& s, int player) {
  check_state_shape(cfg, s);
  require(player >= 0 && player < cfg.n_players, "player index out of range");
  return s[player] >= cfg.goal ? 1 : 0;
}

std::vector<Outcome> transitions(const GameConfig& cfg, const State& s,
                                 const BetProfile& bets,
                                 const WinProbModel& model) {
  StateClass cls = classify_state(cfg, s);
  require(cls.active(), "transitions need an active state");
  require(static_cast<int>(bets.size()) == cfg.n_players,
          "expected one stake per player");
  require(model.players() == cfg.n_players,
          "model is for a different player count");
  int pot = 0;
  for (int j = 0; j < cfg.n_players; ++j) {
    auto legal = action_set(cfg, s, j);
    require(std::find(legal.begin(), legal.end(), bets[j]) != legal.end(),
            "illegal stake " + std::to_string(bets[j]) + " for player " +
                std::to_string(j + 1));
    pot += bets[j];
  }

  std::vector<double> probs = model.win_probs(bets, s);
  double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  require(sum <= 1.0 + kProbTolerance,
          "win probabilities sum to " + std::to_string(sum) +
              ", above 1: model breaks the probability budget");
  double house = std::max(0.0, 1.0 - sum);
  if (house < kProbTolerance) house = 0.0;

  std::map<State, double> merged;
  for (int j = 0; j < cfg.n_players; ++j) {
    if (probs[j] <= 0.0) continue;
    State next(cfg.n_players);
    for (int i = 0; i < cfg.n_players; ++i) {
      next[i] = i == j ? s[i] + (pot - bets[i]) : s[i] - bets[i];
    }
    merged[next] += probs[j];
  }
  if (house > 0.0) {
    State next(cfg.n_players);
    for (int i = 0; i < cfg.n_players; ++i) next[i] = s[i] - bets[i];
    merged[next] += house;
  }

  std::vector<Outcome> out;
  out.reserve(merged.size());
  for (auto& [state, prob] : merged) out.push_back({state, prob});
  return out;
}

StateSpace::StateSpace(const GameConfig& cfg) : states(enumerate_states(cfg)) {
  for (int i = 0; i < static_cast<int>(states.size()); ++i) {
    index.emplace(states[i], i);
  }
}

}  // namespace redblack

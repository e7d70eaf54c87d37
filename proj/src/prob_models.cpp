#include "redblack/prob_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace redblack {

namespace {

constexpr double kProbTolerance = 1e-12;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

double PhiFunction::operator()(double s) const {
  switch (shape) {
    case Shape::Linear:
      return param * s;
    case Shape::Power:
      return std::pow(s, param);
    case Shape::Table: {
      if (s <= 0.0) return knots.front();
      if (s >= 1.0) return knots.back();
      double pos = s * static_cast<double>(knots.size() - 1);
      auto lo = static_cast<std::size_t>(pos);
      double frac = pos - static_cast<double>(lo);
      return knots[lo] + frac * (knots[lo + 1] - knots[lo]);
    }
  }
  return 0.0;
}

nlohmann::json PhiFunction::descriptor() const {
  switch (shape) {
    case Shape::Linear:
      return {{"shape", "linear"}, {"param", param}};
    case Shape::Power:
      return {{"shape", "power"}, {"param", param}};
    case Shape::Table:
      return {{"shape", "table"}, {"knots", knots}};
  }
  return {};
}

PhiFunction phi_linear(double w) {
  require(w >= 0.0 && w <= 1.0,
          "linear shape needs slope in [0, 1], got " + std::to_string(w));
  return {PhiFunction::Shape::Linear, w, {}};
}

PhiFunction phi_power(double p) {
  require(p >= 1.0,
          "power shape needs exponent >= 1, got " + std::to_string(p));
  return {PhiFunction::Shape::Power, p, {}};
}

PhiFunction phi_table(std::vector<double> knots) {
  require(knots.size() >= 2, "table shape needs at least 2 knots");
  require(knots.front() == 0.0, "table shape must start at 0");
  for (double v : knots) {
    require(v >= 0.0 && v <= 1.0, "table knots must lie in [0, 1]");
  }
  return {PhiFunction::Shape::Table, 0.0, std::move(knots)};
}

WinProbModel::WinProbModel(int n_players, Eval eval, nlohmann::json descriptor,
                           std::vector<int> default_context)
    : n_players_(n_players),
      eval_(std::move(eval)),
      descriptor_(std::move(descriptor)),
      default_context_(std::move(default_context)) {
  require(n_players_ >= 2, "a model needs at least 2 players");
  require(static_cast<int>(default_context_.size()) == n_players_,
          "context needs one fortune per player");
}

std::vector<double> WinProbModel::win_probs(
    std::span<const int> bets, std::span<const int> fortunes) const {
  require(static_cast<int>(bets.size()) == n_players_,
          "expected one stake per player");
  require(static_cast<int>(fortunes.size()) == n_players_,
          "expected one fortune per player");
  return eval_(bets, fortunes);
}

std::vector<double> WinProbModel::win_probs(std::span<const int> bets) const {
  return win_probs(bets, default_context_);
}

WinProbModel make_proportional(PhiFunction phi,
                               std::vector<int> context_fortunes) {
  int n = static_cast<int>(context_fortunes.size());
  auto eval = [phi, n](std::span<const int> bets,
                       std::span<const int> fortunes) {
    std::vector<double> probs(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (bets[i] <= 0) continue;  // no stake, no win
      long long rival_money = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) rival_money += fortunes[j];
      }
      long long denom = bets[i] + rival_money;
      if (denom <= 0) continue;
      probs[i] = phi(static_cast<double>(bets[i]) / static_cast<double>(denom));
    }
    return probs;
  };
  nlohmann::json desc = {{"family", "proportional"},
                         {"phi", phi.descriptor()},
                         {"context", context_fortunes}};
  return WinProbModel(n, eval, desc, std::move(context_fortunes));
}

WinProbModel make_constant(int n_players, double c) {
  require(c >= 0.0, "constant win probability must be non-negative");
  require(c * n_players <= 1.0,
          "constant win probability too big: " + std::to_string(n_players) +
              " * " + std::to_string(c) + " exceeds 1");
  auto eval = [c, n_players](std::span<const int> bets,
                             std::span<const int> /*fortunes*/) {
    std::vector<double> probs(n_players, 0.0);
    for (int i = 0; i < n_players; ++i) {
      if (bets[i] >= 1) probs[i] = c;
    }
    return probs;
  };
  nlohmann::json desc = {{"family", "constant"}, {"c", c}};
  return WinProbModel(n_players, eval, desc,
                      std::vector<int>(n_players, 1));
}

WinProbModel make_threshold_surewin(int n_players, int player, int threshold) {
  require(player >= 0 && player < n_players, "player index out of range");
  require(threshold >= 1, "threshold must be at least 1");
  auto eval = [n_players, player, threshold](std::span<const int> bets,
                                             std::span<const int>) {
    std::vector<double> probs(n_players, 0.0);
    if (bets[player] >= threshold) probs[player] = 1.0;
    return probs;
  };
  nlohmann::json desc = {{"family", "threshold"},
                         {"player", player + 1},
                         {"threshold", threshold}};
  return WinProbModel(n_players, eval, desc, std::vector<int>(n_players, 1));
}

WinProbModel make_scaled_exponential(int n_players, double epsilon) {
  require(epsilon > 0.0, "epsilon must be positive");
  auto eval = [n_players, epsilon](std::span<const int> bets,
                                   std::span<const int>) {
    std::vector<double> probs(n_players, 0.0);
    for (int i = 0; i < n_players; ++i) {
      probs[i] = (1.0 - std::exp(-epsilon * bets[i])) / n_players;
    }
    return probs;
  };
  nlohmann::json desc = {{"family", "exponential"}, {"epsilon", epsilon}};
  return WinProbModel(n_players, eval, desc, std::vector<int>(n_players, 1));
}

ModelValidationReport validate_model(const WinProbModel& model,
                                     const GameConfig& cfg) {
  require(model.players() == cfg.n_players,
          "model is for a different player count");
  ModelValidationReport report;
  BetProfile bets(cfg.n_players, 0);
  // Walk every stake vector with entries in {0..M} and sum <= M.
  std::function<void(int, int)> scan = [&](int pos, int remaining) {
    if (pos == cfg.n_players) {
      ++report.bets_checked;
      std::vector<double> probs = model.win_probs(bets, cfg.initial_fortunes);
      double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
      if (sum > 1.0 + kProbTolerance) {
        report.violations.push_back({bets, "prob-sum-above-one", sum});
      }
      for (int j = 0; j < cfg.n_players; ++j) {
        if (bets[j] == 0 && probs[j] != 0.0) {
          report.violations.push_back({bets, "win-at-zero-stake", probs[j]});
        }
      }
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      bets[pos] = v;
      scan(pos + 1, remaining - v);
    }
    bets[pos] = 0;
  };
  scan(0, cfg.total);
  report.ok = report.violations.empty();
  return report;
}

FGSlice slice_fg(const WinProbModel& model, const GameConfig& cfg,
                 const State& s, int player) {
  require(model.players() == cfg.n_players,
          "model is for a different player count");
  require(player >= 0 && player < cfg.n_players, "player index out of range");
  require(classify_state(cfg, s).active(), "slice needs an active state");

  FGSlice slice;
  slice.state = s;
  slice.player = player;
  slice.f.resize(cfg.total + 1);
  slice.g.resize(cfg.total + 1);
  BetProfile bets(s.begin(), s.end());  // rivals stake their whole fortune
  for (int t = 0; t <= cfg.total; ++t) {
    bets[player] = t;
    std::vector<double> probs = model.win_probs(bets, s);
    slice.f[t] = probs[player];
    double rivals = 0.0;
    for (int i = 0; i < cfg.n_players; ++i) {
      if (i != player) rivals += probs[i];
    }
    slice.g[t] = rivals;
  }
  return slice;
}

}  // namespace redblack

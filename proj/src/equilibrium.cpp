#include "redblack/equilibrium.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "redblack/inequality.hpp"

namespace redblack {

namespace {

constexpr double kSupNormTolerance = 1e-12;
constexpr double kTieTolerance = 1e-9;
constexpr int kMaxSweeps = 1'000'000;
constexpr int kMaxLinearSolveStates = 10'000;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

int stake_or_zero(const GameConfig& cfg, const State& s, int player,
                  int stake) {
  int x = s[player];
  if (x < 1 || x >= cfg.goal) return 0;
  if (!classify_state(cfg, s).active()) return 0;
  return stake;
}

// One row of the absorbing-chain equations: value(state) equals
// `absorbed` (mass already delivered to each player / the house this round)
// plus the mass flowing to other active states.
struct ChainRow {
  std::vector<std::pair<int, double>> active_mass;  // (active row, prob)
  std::vector<double> absorbed;                     // n_players + 1 entries
};

BetProfile profile_bets(const GameConfig& cfg,
                        const std::vector<Strategy>& profile, const State& s) {
  BetProfile bets(cfg.n_players);
  for (int j = 0; j < cfg.n_players; ++j) bets[j] = profile[j].bet(s, j);
  return bets;
}

// Rows of the chain under a fixed profile, indexed by active-state order.
std::vector<ChainRow> build_chain(const GameConfig& cfg,
                                  const WinProbModel& model,
                                  const std::vector<Strategy>& profile,
                                  const StateSpace& space,
                                  const std::vector<int>& active_row) {
  std::vector<ChainRow> rows;
  for (int i = 0; i < space.size(); ++i) {
    if (active_row[i] < 0) continue;
    const State& s = space.states[i];
    ChainRow row;
    row.absorbed.assign(cfg.n_players + 1, 0.0);
    for (const Outcome& out : transitions(cfg, s, profile_bets(cfg, profile, s),
                                          model)) {
      int k = space.index_of(out.state);
      StateClass cls = classify_state(cfg, out.state);
      if (cls.active()) {
        row.active_mass.emplace_back(active_row[k], out.prob);
      } else if (cls.tag == StateTag::Winner) {
        row.absorbed[cls.winner] += out.prob;
      } else {
        row.absorbed[cfg.n_players] += out.prob;  // dead: the house keeps it
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Solves value = flow * value + absorbed for each column (players, house).
// Dense LU when small and well posed; otherwise monotone fixed-point
// iteration from zero, which also handles chains that can circulate forever.
std::vector<std::vector<double>> solve_chain(const std::vector<ChainRow>& rows,
                                             int columns, std::string* method) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<double>> solution(columns,
                                            std::vector<double>(n, 0.0));
  if (n == 0) {
    *method = "linear-solve";
    return solution;
  }

  if (n <= kMaxLinearSolveStates) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, columns);
    for (int r = 0; r < n; ++r) {
      for (auto [col, p] : rows[r].active_mass) a(r, col) -= p;
      for (int c = 0; c < columns; ++c) b(r, c) = rows[r].absorbed[c];
    }
    Eigen::MatrixXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(b);
    double residual = (a * x - b).cwiseAbs().maxCoeff();
    if (std::isfinite(residual) && residual <= 1e-9) {
      *method = "linear-solve";
      for (int c = 0; c < columns; ++c) {
        for (int r = 0; r < n; ++r) solution[c][r] = x(r, c);
      }
      return solution;
    }
  }

  *method = "fixed-point";
  for (int c = 0; c < columns; ++c) {
    std::vector<double>& v = solution[c];
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double change = 0.0;
      for (int r = 0; r < n; ++r) {
        double next = rows[r].absorbed[c];
        for (auto [col, p] : rows[r].active_mass) next += p * v[col];
        change = std::max(change, std::abs(next - v[r]));
        v[r] = next;
      }
      if (change < kSupNormTolerance) break;
      if (sweep == kMaxSweeps - 1) {
        throw std::runtime_error(
            "profile evaluation did not converge; probability flow is likely "
            "broken");
      }
    }
  }
  return solution;
}

}  // namespace

Strategy bold_strategy(const GameConfig& cfg) {
  return {"bold", [cfg](const State& s, int player) {
            return stake_or_zero(cfg, s, player, s[player]);
          }};
}

Strategy timid_strategy(const GameConfig& cfg) {
  return {"timid", [cfg](const State& s, int player) {
            return stake_or_zero(cfg, s, player, 1);
          }};
}

std::vector<Strategy> all_bold_profile(const GameConfig& cfg) {
  return std::vector<Strategy>(cfg.n_players, bold_strategy(cfg));
}

ProfileValue evaluate_profile(const GameConfig& cfg, const WinProbModel& model,
                              const std::vector<Strategy>& profile) {
  require(static_cast<int>(profile.size()) == cfg.n_players,
          "expected one strategy per player");
  StateSpace space(cfg);

  std::vector<int> active_row(space.size(), -1);
  std::vector<int> active_index;  // active row -> state index
  for (int i = 0; i < space.size(); ++i) {
    if (classify_state(cfg, space.states[i]).active()) {
      active_row[i] = static_cast<int>(active_index.size());
      active_index.push_back(i);
    }
  }

  ProfileValue value;
  value.states = space.states;
  value.win_prob.assign(cfg.n_players, std::vector<double>(space.size(), 0.0));
  value.house_mass.assign(space.size(), 0.0);
  for (int i = 0; i < space.size(); ++i) {
    StateClass cls = classify_state(cfg, space.states[i]);
    if (cls.tag == StateTag::Winner) {
      value.win_prob[cls.winner][i] = 1.0;
    } else if (cls.tag == StateTag::Dead) {
      value.house_mass[i] = 1.0;
    }
  }

  auto rows = build_chain(cfg, model, profile, space, active_row);
  auto solved = solve_chain(rows, cfg.n_players + 1, &value.method);
  for (int r = 0; r < static_cast<int>(active_index.size()); ++r) {
    for (int j = 0; j < cfg.n_players; ++j) {
      value.win_prob[j][active_index[r]] = solved[j][r];
    }
    value.house_mass[active_index[r]] = solved[cfg.n_players][r];
  }

  value.initial_index = space.index_of(cfg.initial_state());
  require(value.initial_index >= 0, "initial state missing from state space");
  return value;
}

BestResponse best_response(const GameConfig& cfg, const WinProbModel& model,
                           int player, const std::vector<Strategy>& profile) {
  require(player >= 0 && player < cfg.n_players, "player index out of range");
  require(static_cast<int>(profile.size()) == cfg.n_players,
          "expected one strategy per player");
  StateSpace space(cfg);

  BestResponse best;
  best.player = player;
  best.states = space.states;
  best.value.assign(space.size(), 0.0);
  best.policy.assign(space.size(), 0);
  best.initial_index = space.index_of(cfg.initial_state());

  // Cache the outcome rows for every (active state, own stake).
  struct Choice {
    int stake;
    std::vector<std::pair<int, double>> flow;  // (state index, prob)
    double absorbed_win;                       // mass hitting our win states
  };
  std::vector<std::vector<Choice>> choices(space.size());
  std::vector<int> active_states;
  for (int i = 0; i < space.size(); ++i) {
    const State& s = space.states[i];
    StateClass cls = classify_state(cfg, s);
    if (!cls.active()) {
      best.value[i] = payoff(cfg, s, player);
      continue;
    }
    active_states.push_back(i);
    BetProfile bets = profile_bets(cfg, profile, s);
    for (int stake : action_set(cfg, s, player)) {
      bets[player] = stake;
      Choice choice{stake, {}, 0.0};
      for (const Outcome& out : transitions(cfg, s, bets, model)) {
        StateClass ocls = classify_state(cfg, out.state);
        if (ocls.active()) {
          choice.flow.emplace_back(space.index_of(out.state), out.prob);
        } else if (ocls.tag == StateTag::Winner && ocls.winner == player) {
          choice.absorbed_win += out.prob;
        }
      }
      choices[i].push_back(std::move(choice));
    }
  }

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double change = 0.0;
    for (int i : active_states) {
      double value_here = 0.0;
      for (const Choice& choice : choices[i]) {
        double q = choice.absorbed_win;
        for (auto [k, p] : choice.flow) q += p * best.value[k];
        value_here = std::max(value_here, q);
      }
      change = std::max(change, std::abs(value_here - best.value[i]));
      best.value[i] = value_here;
    }
    best.sweeps = sweep + 1;
    if (change < kSupNormTolerance) break;
    if (sweep == kMaxSweeps - 1) {
      throw std::runtime_error("best response did not converge");
    }
  }

  // Extract the policy: smallest stake within kTieTolerance of the best.
  for (int i : active_states) {
    double top = -1.0;
    int pick = 0;
    for (const Choice& choice : choices[i]) {
      double q = choice.absorbed_win;
      for (auto [k, p] : choice.flow) q += p * best.value[k];
      if (q > top + kTieTolerance) {
        top = q;
        pick = choice.stake;
      }
    }
    best.policy[i] = pick;
  }
  return best;
}

std::vector<std::pair<int, double>> bet_values(
    const GameConfig& cfg, const WinProbModel& model, int player,
    const std::vector<Strategy>& profile, const State& s,
    const StateSpace& space, const std::vector<double>& v) {
  require(classify_state(cfg, s).active(), "bet values need an active state");
  BetProfile bets = profile_bets(cfg, profile, s);
  std::vector<std::pair<int, double>> out;
  for (int stake : action_set(cfg, s, player)) {
    bets[player] = stake;
    double q = 0.0;
    for (const Outcome& o : transitions(cfg, s, bets, model)) {
      StateClass cls = classify_state(cfg, o.state);
      if (cls.active()) {
        q += o.prob * v[space.index_of(o.state)];
      } else if (cls.tag == StateTag::Winner && cls.winner == player) {
        q += o.prob;
      }
    }
    out.emplace_back(stake, q);
  }
  return out;
}

double one_shot_deviation_value(const GameConfig& cfg,
                                const WinProbModel& model, const State& s,
                                int player, int bet) {
  require(classify_state(cfg, s).active(),
          "deviation value needs an active state");
  auto legal = action_set(cfg, s, player);
  require(std::find(legal.begin(), legal.end(), bet) != legal.end(),
          "illegal stake " + std::to_string(bet) + " for player " +
              std::to_string(player + 1));

  Strategy bold = bold_strategy(cfg);
  BetProfile deviation(cfg.n_players);
  for (int i = 0; i < cfg.n_players; ++i) {
    deviation[i] = i == player ? bet : bold.bet(s, i);
  }
  std::vector<double> now = model.win_probs(deviation, s);

  // If a rival collects this round, the player still holds s[player] - bet
  // and (in this closed form) faces the same rival fortunes as before.
  BetProfile continuation(s.begin(), s.end());
  continuation[player] = s[player] - bet;
  std::vector<double> later = model.win_probs(continuation, s);

  double rivals_now = 0.0;
  for (int i = 0; i < cfg.n_players; ++i) {
    if (i != player) rivals_now += now[i];
  }
  return now[player] + rivals_now * later[player];
}

Certificate certify_bold_nash(const GameConfig& cfg, const WinProbModel& model,
                              double tol, bool all_states) {
  Certificate cert;
  cert.tol = tol;
  cert.all_states = all_states;
  cert.hypothesis_holds = hypothesis_check(model, cfg).holds;

  std::vector<Strategy> bold = all_bold_profile(cfg);
  ProfileValue bold_value = evaluate_profile(cfg, model, bold);

  for (int j = 0; j < cfg.n_players; ++j) {
    BestResponse br = best_response(cfg, model, j, bold);
    PlayerCertificate pc;
    pc.player = j;
    pc.bold_value = bold_value.initial_win_prob(j);
    pc.best_response_value = br.initial_value();

    int witness_state = br.initial_index;
    double gain = pc.best_response_value - pc.bold_value;
    if (all_states) {
      for (int i = 0; i < static_cast<int>(br.states.size()); ++i) {
        if (!classify_state(cfg, br.states[i]).active()) continue;
        double here = br.value[i] - bold_value.win_prob[j][i];
        if (here > gain) {
          gain = here;
          witness_state = i;
        }
      }
    }
    if (gain > tol) {
      cert.is_nash = false;
      pc.witness = DeviationWitness{br.states[witness_state],
                                    br.policy[witness_state], gain};
    }
    cert.players.push_back(std::move(pc));
  }
  return cert;
}

}  // namespace redblack

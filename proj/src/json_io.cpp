#include "redblack/json_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace redblack::io {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

double to_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    require(used == text.size(), what + ": trailing junk in '" + text + "'");
    return value;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(what + ": expected a number, got '" + text +
                                "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument(what + ": number out of range: '" + text +
                                "'");
  }
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

// Inline JSON, an @-prefixed path, or a bare path to an existing file all
// route through load_json(); anything else falls to the compact grammar.
bool names_json_input(const std::string& text) {
  if (looks_like_json(text)) return true;
  if (!text.empty() && text.front() == '@') return true;
  return std::ifstream(text).good();
}

json load_json(const std::string& text, const std::string& what) {
  std::string body = text;
  if (!body.empty() && body.front() == '@') body = body.substr(1);
  if (!looks_like_json(body)) {
    std::ifstream in(body);
    require(in.good(), what + ": cannot open file '" + body + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw std::invalid_argument(what + ": bad JSON: " + e.what());
  }
}

}  // namespace

json to_json(const GameConfig& cfg) {
  return {{"n", cfg.n_players},
          {"fortunes", cfg.initial_fortunes},
          {"goal", cfg.goal},
          {"total", cfg.total}};
}

GameConfig config_from_json(const json& j) {
  require(j.is_object(), "game config must be a JSON object");
  require(j.contains("n") && j.contains("fortunes") && j.contains("goal"),
          "game config needs fields n, fortunes, goal");
  return validate_config(j.at("n").get<int>(),
                         j.at("fortunes").get<std::vector<int>>(),
                         j.at("goal").get<int>());
}

GameConfig parse_config(const std::string& text) {
  return config_from_json(load_json(text, "game config"));
}

WinProbModel model_from_json(const json& j, const GameConfig& cfg) {
  require(j.is_object() && j.contains("family"),
          "model descriptor needs a family field");
  std::string family = j.at("family").get<std::string>();
  if (family == "proportional") {
    PhiFunction phi = phi_linear(1.0);
    if (j.contains("phi")) {
      const json& p = j.at("phi");
      std::string shape = p.at("shape").get<std::string>();
      if (shape == "linear") {
        phi = phi_linear(p.at("param").get<double>());
      } else if (shape == "power") {
        phi = phi_power(p.at("param").get<double>());
      } else if (shape == "table") {
        phi = phi_table(p.at("knots").get<std::vector<double>>());
      } else {
        throw std::invalid_argument("unknown phi shape '" + shape + "'");
      }
    }
    std::vector<int> context = cfg.initial_fortunes;
    if (j.contains("context")) context = j.at("context").get<std::vector<int>>();
    require(static_cast<int>(context.size()) == cfg.n_players,
            "model context needs one fortune per player");
    return make_proportional(phi, context);
  }
  if (family == "constant") {
    return make_constant(cfg.n_players, j.at("c").get<double>());
  }
  if (family == "threshold") {
    int player = j.at("player").get<int>();  // 1-based outside
    require(player >= 1 && player <= cfg.n_players,
            "threshold player out of range");
    return make_threshold_surewin(cfg.n_players, player - 1,
                                  j.at("threshold").get<int>());
  }
  if (family == "exponential") {
    return make_scaled_exponential(cfg.n_players,
                                   j.at("epsilon").get<double>());
  }
  throw std::invalid_argument("unknown model family '" + family + "'");
}

WinProbModel parse_model(const std::string& text, const GameConfig& cfg) {
  if (names_json_input(text)) {
    return model_from_json(load_json(text, "model"), cfg);
  }
  auto parts = split(text, ':');
  require(!parts.empty(), "empty model spec");
  const std::string& family = parts[0];
  if (family == "proportional") {
    PhiFunction phi = phi_linear(1.0);
    if (parts.size() == 3) {
      phi = parse_phi(parts[1] + ":" + parts[2]);
    } else {
      require(parts.size() == 1,
              "proportional model takes an optional phi, e.g. "
              "proportional:linear:1");
    }
    return make_proportional(phi, cfg.initial_fortunes);
  }
  if (family == "constant") {
    require(parts.size() == 2, "constant model needs a value, e.g. constant:0.5");
    return make_constant(cfg.n_players, to_number(parts[1], "constant c"));
  }
  if (family == "threshold") {
    require(parts.size() == 3,
            "threshold model needs player and threshold, e.g. threshold:1:3");
    int player = static_cast<int>(to_number(parts[1], "threshold player"));
    require(player >= 1 && player <= cfg.n_players,
            "threshold player out of range");
    int threshold = static_cast<int>(to_number(parts[2], "threshold"));
    return make_threshold_surewin(cfg.n_players, player - 1, threshold);
  }
  if (family == "exponential") {
    require(parts.size() == 2,
            "exponential model needs epsilon, e.g. exponential:0.01");
    return make_scaled_exponential(cfg.n_players,
                                   to_number(parts[1], "epsilon"));
  }
  throw std::invalid_argument("unknown model family '" + family + "'");
}

PhiFunction parse_phi(const std::string& text) {
  auto parts = split(text, ':');
  require(parts.size() == 2, "phi spec looks like linear:W or power:P");
  if (parts[0] == "linear") return phi_linear(to_number(parts[1], "phi slope"));
  if (parts[0] == "power") return phi_power(to_number(parts[1], "phi power"));
  throw std::invalid_argument("unknown phi shape '" + parts[0] + "'");
}

std::vector<double> parse_table(const std::string& text, int table_max) {
  require(table_max >= 1, "table domain needs M >= 1");
  if (names_json_input(text)) {
    json j = load_json(text, "table");
    require(j.is_array(), "table JSON must be an array");
    auto values = j.get<std::vector<double>>();
    require(static_cast<int>(values.size()) == table_max + 1,
            "table has " + std::to_string(values.size()) +
                " entries, expected M + 1 = " + std::to_string(table_max + 1));
    return values;
  }
  auto parts = split(text, ':');
  require(!parts.empty(), "empty table spec");
  std::vector<double> values(table_max + 1);
  const std::string& form = parts[0];
  if (form == "exp") {
    require(parts.size() == 2, "exp form needs epsilon, e.g. exp:0.01");
    double eps = to_number(parts[1], "epsilon");
    for (int t = 0; t <= table_max; ++t) values[t] = 1.0 - std::exp(-eps * t);
    return values;
  }
  if (form == "truncated-linear") {
    require(parts.size() == 3,
            "truncated-linear form needs slope and cutoff, e.g. "
            "truncated-linear:0.01:100");
    double eps = to_number(parts[1], "slope");
    double cut = to_number(parts[2], "cutoff");
    for (int t = 0; t <= table_max; ++t) {
      values[t] = t < cut ? 1.0 - eps * t : 0.0;
    }
    return values;
  }
  if (form == "linear") {
    require(parts.size() == 2, "linear form needs a slope, e.g. linear:0.3");
    double slope = to_number(parts[1], "slope");
    for (int t = 0; t <= table_max; ++t) values[t] = slope * t;
    return values;
  }
  if (form == "const") {
    require(parts.size() == 2, "const form needs a value, e.g. const:0.7");
    double c = to_number(parts[1], "value");
    for (int t = 0; t <= table_max; ++t) values[t] = c;
    return values;
  }
  throw std::invalid_argument("unknown table form '" + form + "'");
}

std::vector<Strategy> parse_profile(const std::string& text,
                                    const GameConfig& cfg) {
  auto parts = split(text, ',');
  require(static_cast<int>(parts.size()) == cfg.n_players,
          "profile needs one strategy per player, e.g. bold,timid");
  std::vector<Strategy> profile;
  for (const std::string& name : parts) {
    if (name == "bold") {
      profile.push_back(bold_strategy(cfg));
    } else if (name == "timid") {
      profile.push_back(timid_strategy(cfg));
    } else {
      throw std::invalid_argument("unknown strategy '" + name +
                                  "' (expected bold or timid)");
    }
  }
  return profile;
}

json to_json(const ModelValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"bets", v.bets}, {"kind", v.kind}, {"value", v.value}});
  }
  return {{"ok", r.ok},
          {"bets_checked", r.bets_checked},
          {"violations", violations}};
}

json to_json(const InequalityReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"a", v.a}, {"x", v.x}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  return {{"holds", r.holds},
          {"table_max", r.table_max},
          {"restricted", r.restricted},
          {"pairs_scanned", r.pairs_scanned},
          {"pairs_checked", r.pairs_checked},
          {"violations", violations}};
}

json to_json(const GminTable& t) {
  return {{"values", t.values}, {"argmin_x", t.argmin_x}};
}

json to_json(const EquationClassification& c) {
  return {{"max_residual", c.max_residual},
          {"family", equation_family_name(c.family)}};
}

json to_json(const HypothesisReport& r) {
  json contexts = json::array();
  for (const auto& ctx : r.contexts) {
    json entry = {{"state", ctx.state},
                  {"player", ctx.player + 1},
                  {"holds", ctx.report.holds}};
    if (!ctx.report.holds) entry["report"] = to_json(ctx.report);
    contexts.push_back(std::move(entry));
  }
  return {{"holds", r.holds},
          {"contexts_checked", r.contexts_checked},
          {"contexts_failed", r.contexts_failed},
          {"contexts", contexts}};
}

json to_json(const ProfileValue& v) {
  int n = static_cast<int>(v.win_prob.size());
  json per_state = json::array();
  for (std::size_t i = 0; i < v.states.size(); ++i) {
    json probs = json::array();
    for (int j = 0; j < n; ++j) probs.push_back(v.win_prob[j][i]);
    per_state.push_back({{"state", v.states[i]},
                         {"win_prob", probs},
                         {"house_mass", v.house_mass[i]}});
  }
  json initial_probs = json::array();
  for (int j = 0; j < n; ++j) initial_probs.push_back(v.initial_win_prob(j));
  return {{"method", v.method},
          {"initial",
           {{"state", v.states[v.initial_index]},
            {"win_prob", initial_probs},
            {"house_mass", v.house_mass[v.initial_index]}}},
          {"per_state", per_state}};
}

json to_json(const BestResponse& b) {
  json per_state = json::array();
  for (std::size_t i = 0; i < b.states.size(); ++i) {
    per_state.push_back({{"state", b.states[i]},
                         {"value", b.value[i]},
                         {"bet", b.policy[i]}});
  }
  return {{"player", b.player + 1},
          {"value_at_initial", b.initial_value()},
          {"bet_at_initial", b.policy[b.initial_index]},
          {"sweeps", b.sweeps},
          {"per_state", per_state}};
}

json to_json(const Certificate& c) {
  json players = json::array();
  for (const auto& pc : c.players) {
    json entry = {{"player", pc.player + 1},
                  {"bold_value", pc.bold_value},
                  {"best_response_value", pc.best_response_value}};
    if (pc.witness) {
      entry["witness"] = {{"state", pc.witness->state},
                          {"bet", pc.witness->bet},
                          {"gain", pc.witness->gain}};
    }
    players.push_back(std::move(entry));
  }
  return {{"is_nash", c.is_nash},
          {"tol", c.tol},
          {"all_states", c.all_states},
          {"hypothesis_holds", c.hypothesis_holds},
          {"players", players}};
}

json to_json(const SimReport& s) {
  return {{"runs", s.runs},
          {"seed", s.seed},
          {"wins", s.wins},
          {"house_wins", s.house_wins},
          {"empirical", s.empirical},
          {"mean_rounds", s.mean_rounds}};
}

json to_json(const EmpiricalComparison& c) {
  json players = json::array();
  for (std::size_t j = 0; j < c.analytic.size(); ++j) {
    players.push_back({{"player", j + 1},
                       {"analytic", c.analytic[j]},
                       {"empirical", c.empirical[j]},
                       {"bound", c.bound[j]},
                       {"pass", static_cast<bool>(c.pass[j])}});
  }
  return {{"z", c.z}, {"all_pass", c.all_pass}, {"per_player", players}};
}

}  // namespace redblack::io

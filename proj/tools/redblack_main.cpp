// Command-line front end: verdicts and reports for red-and-black betting
// games. Every subcommand emits one report (JSON by default) that embeds the
// fully resolved run parameters, so a report alone is enough to reproduce
// the run. Exit codes: 0 success (or verdict matches --expect), 1 verdict
// differs from --expect, 2 bad input.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "redblack/equilibrium.hpp"
#include "redblack/inequality.hpp"
#include "redblack/json_io.hpp"
#include "redblack/simulate.hpp"

namespace {

using nlohmann::json;
using namespace redblack;

struct Output {
  json runspec;
  json result;
  std::string verdict;            // matched against --expect
  std::string csv;                // preformatted CSV body
  std::string table;              // preformatted human table
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      out += row[c];
      if (c + 1 < row.size()) out.append(width[c] - row[c].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

// Shared options, registered per subcommand as needed.
struct Common {
  std::string game;
  std::string model;
  std::string phi;
  std::string f_spec;
  std::string g_spec;
  int table_max = 0;
  std::string profile;
  int player = 0;  // 1-based
  double tol = 1e-9;
  long long runs = 100000;
  unsigned long long seed = 1;
  double z = 3.0;
  bool unrestricted = false;
  bool all_states = false;
  std::string expect;
  std::string format = "json";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, Common& opt) {
  cmd->add_option("--format", opt.format, "Output format: json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  cmd->add_option("--out", opt.out_path, "Write the report to a file");
  cmd->add_option("--expect", opt.expect,
                  "Fail (exit 1) unless the verdict matches");
}

GameConfig need_config(const Common& opt) {
  if (opt.game.empty()) throw std::invalid_argument("--game is required");
  return io::parse_config(opt.game);
}

WinProbModel need_model(const Common& opt, const GameConfig& cfg) {
  if (opt.model.empty()) throw std::invalid_argument("--model is required");
  if (!opt.phi.empty()) {
    if (opt.model != "proportional") {
      throw std::invalid_argument("--phi only applies to --model proportional");
    }
    return make_proportional(io::parse_phi(opt.phi), cfg.initial_fortunes);
  }
  return io::parse_model(opt.model, cfg);
}

json game_options(const GameConfig& cfg, const WinProbModel& model) {
  return {{"game", io::to_json(cfg)}, {"model", model.descriptor()}};
}

// ---- subcommand runners -------------------------------------------------

Output run_validate(const Common& opt) {
  GameConfig cfg = need_config(opt);
  WinProbModel model = need_model(opt, cfg);
  ModelValidationReport report = validate_model(model, cfg);

  Output out;
  out.runspec = game_options(cfg, model);
  out.result = io::to_json(report);
  out.verdict = report.ok ? "valid" : "violations";

  std::ostringstream csv;
  csv << "bets,kind,value\n";
  std::vector<std::vector<std::string>> rows = {{"bets", "kind", "value"}};
  for (const auto& v : report.violations) {
    csv << join_ints(v.bets, ";") << ',' << v.kind << ',' << fmt_double(v.value)
        << '\n';
    rows.push_back({join_ints(v.bets, " "), v.kind, fmt_double(v.value)});
  }
  out.csv = csv.str();
  out.table = "verdict: " + out.verdict + "\n" +
              (report.violations.empty() ? "" : render_table(rows));
  return out;
}

Output run_check_inequality(const Common& opt) {
  if (opt.table_max < 1) throw std::invalid_argument("--M is required (>= 1)");
  std::vector<double> f = io::parse_table(opt.f_spec, opt.table_max);
  std::vector<double> g = io::parse_table(opt.g_spec, opt.table_max);
  InequalityReport report = check_inequality(f, g, !opt.unrestricted);

  Output out;
  out.runspec = {{"f", opt.f_spec},
                 {"g", opt.g_spec},
                 {"M", opt.table_max},
                 {"restricted", !opt.unrestricted}};
  out.result = io::to_json(report);
  out.verdict = report.holds ? "holds" : "violated";

  std::ostringstream csv;
  csv << "a,x,lhs,rhs\n";
  std::vector<std::vector<std::string>> rows = {{"a", "x", "lhs", "rhs"}};
  for (const auto& v : report.violations) {
    csv << v.a << ',' << v.x << ',' << fmt_double(v.lhs) << ','
        << fmt_double(v.rhs) << '\n';
    rows.push_back({std::to_string(v.a), std::to_string(v.x),
                    fmt_double(v.lhs), fmt_double(v.rhs)});
  }
  out.csv = csv.str();
  out.table = "verdict: " + out.verdict + " (" +
              std::to_string(report.violations.size()) + " violations)\n" +
              (report.violations.empty() ? "" : render_table(rows));
  return out;
}

Output run_gmin(const Common& opt) {
  if (opt.table_max < 1) throw std::invalid_argument("--M is required (>= 1)");
  std::vector<double> f = io::parse_table(opt.f_spec, opt.table_max);
  GminTable table = gmin(f);

  Output out;
  out.runspec = {{"f", opt.f_spec}, {"M", opt.table_max}};
  out.result = io::to_json(table);
  out.verdict = "ok";

  std::ostringstream csv;
  csv << "y,g_min\n";
  std::vector<std::vector<std::string>> rows = {{"y", "g_min"}};
  for (std::size_t y = 0; y < table.values.size(); ++y) {
    csv << y << ',' << fmt_double(table.values[y]) << '\n';
    rows.push_back({std::to_string(y), fmt_double(table.values[y])});
  }
  out.csv = csv.str();
  out.table = render_table(rows);
  return out;
}

Output run_check_equation(const Common& opt) {
  if (opt.table_max < 1) throw std::invalid_argument("--M is required (>= 1)");
  std::vector<double> f = io::parse_table(opt.f_spec, opt.table_max);
  std::vector<double> g = io::parse_table(opt.g_spec, opt.table_max);
  EquationClassification cls = check_equation(f, g, opt.tol);

  Output out;
  out.runspec = {{"f", opt.f_spec},
                 {"g", opt.g_spec},
                 {"M", opt.table_max},
                 {"tol", opt.tol}};
  out.result = io::to_json(cls);
  out.verdict = equation_family_name(cls.family);
  out.csv = "max_residual,family\n" + fmt_double(cls.max_residual) + "," +
            out.verdict + "\n";
  out.table = "family: " + out.verdict +
              "\nmax residual: " + fmt_double(cls.max_residual) + "\n";
  return out;
}

Output run_hypothesis(const Common& opt) {
  GameConfig cfg = need_config(opt);
  WinProbModel model = need_model(opt, cfg);
  HypothesisReport report = hypothesis_check(model, cfg);

  Output out;
  out.runspec = game_options(cfg, model);
  out.result = io::to_json(report);
  out.verdict = report.holds ? "holds" : "violated";

  std::ostringstream csv;
  csv << "state,player,holds,violations\n";
  std::vector<std::vector<std::string>> rows = {
      {"state", "player", "holds", "violations"}};
  for (const auto& ctx : report.contexts) {
    csv << join_ints(ctx.state, ";") << ',' << ctx.player + 1 << ','
        << (ctx.report.holds ? "true" : "false") << ','
        << ctx.report.violations.size() << '\n';
    rows.push_back({join_ints(ctx.state, " "), std::to_string(ctx.player + 1),
                    ctx.report.holds ? "true" : "false",
                    std::to_string(ctx.report.violations.size())});
  }
  out.csv = csv.str();
  out.table = "verdict: " + out.verdict + "\n" + render_table(rows);
  return out;
}

Output run_evaluate(const Common& opt) {
  GameConfig cfg = need_config(opt);
  WinProbModel model = need_model(opt, cfg);
  std::vector<Strategy> profile =
      opt.profile.empty() ? all_bold_profile(cfg)
                          : io::parse_profile(opt.profile, cfg);
  ProfileValue value = evaluate_profile(cfg, model, profile);

  json names = json::array();
  for (const auto& s : profile) names.push_back(s.name);

  Output out;
  out.runspec = game_options(cfg, model);
  out.runspec["profile"] = names;
  out.result = io::to_json(value);
  out.verdict = "ok";

  std::ostringstream csv;
  for (int j = 0; j < cfg.n_players; ++j) csv << "state_" << j + 1 << ',';
  for (int j = 0; j < cfg.n_players; ++j) csv << "win_prob_" << j + 1 << ',';
  csv << "house_mass\n";
  for (std::size_t i = 0; i < value.states.size(); ++i) {
    csv << join_ints(value.states[i], ",") << ',';
    for (int j = 0; j < cfg.n_players; ++j) {
      csv << fmt_double(value.win_prob[j][i]) << ',';
    }
    csv << fmt_double(value.house_mass[i]) << '\n';
  }
  out.csv = csv.str();

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"state"};
  for (int j = 0; j < cfg.n_players; ++j) {
    header.push_back("win_prob_" + std::to_string(j + 1));
  }
  header.push_back("house_mass");
  rows.push_back(header);
  for (std::size_t i = 0; i < value.states.size(); ++i) {
    std::vector<std::string> row = {join_ints(value.states[i], " ")};
    for (int j = 0; j < cfg.n_players; ++j) {
      row.push_back(fmt_double(value.win_prob[j][i]));
    }
    row.push_back(fmt_double(value.house_mass[i]));
    rows.push_back(row);
  }
  out.table = render_table(rows);
  return out;
}

Output run_best_response(const Common& opt) {
  GameConfig cfg = need_config(opt);
  WinProbModel model = need_model(opt, cfg);
  if (opt.player < 1 || opt.player > cfg.n_players) {
    throw std::invalid_argument("--player must be in 1.." +
                                std::to_string(cfg.n_players));
  }
  std::vector<Strategy> profile =
      opt.profile.empty() ? all_bold_profile(cfg)
                          : io::parse_profile(opt.profile, cfg);
  BestResponse best = best_response(cfg, model, opt.player - 1, profile);

  json names = json::array();
  for (const auto& s : profile) names.push_back(s.name);

  Output out;
  out.runspec = game_options(cfg, model);
  out.runspec["player"] = opt.player;
  out.runspec["profile"] = names;
  out.result = io::to_json(best);
  out.verdict = "ok";

  std::ostringstream csv;
  for (int j = 0; j < cfg.n_players; ++j) csv << "state_" << j + 1 << ',';
  csv << "value,bet\n";
  std::vector<std::vector<std::string>> rows = {{"state", "value", "bet"}};
  for (std::size_t i = 0; i < best.states.size(); ++i) {
    csv << join_ints(best.states[i], ",") << ','
        << fmt_double(best.value[i]) << ',' << best.policy[i] << '\n';
    rows.push_back({join_ints(best.states[i], " "), fmt_double(best.value[i]),
                    std::to_string(best.policy[i])});
  }
  out.csv = csv.str();
  out.table = render_table(rows);
  return out;
}

Output run_certify(const Common& opt) {
  GameConfig cfg = need_config(opt);
  WinProbModel model = need_model(opt, cfg);
  Certificate cert = certify_bold_nash(cfg, model, opt.tol, opt.all_states);

  Output out;
  out.runspec = game_options(cfg, model);
  out.runspec["tol"] = opt.tol;
  out.runspec["all_states"] = opt.all_states;
  out.result = io::to_json(cert);
  out.verdict = cert.is_nash ? "nash" : "no-nash";

  std::ostringstream csv;
  csv << "player,bold_value,best_response_value,witness_bet,gain\n";
  std::vector<std::vector<std::string>> rows = {
      {"player", "bold_value", "best_response_value", "witness_bet", "gain"}};
  for (const auto& pc : cert.players) {
    std::string bet = pc.witness ? std::to_string(pc.witness->bet) : "";
    std::string gain = pc.witness ? fmt_double(pc.witness->gain) : "";
    csv << pc.player + 1 << ',' << fmt_double(pc.bold_value) << ','
        << fmt_double(pc.best_response_value) << ',' << bet << ',' << gain
        << '\n';
    rows.push_back({std::to_string(pc.player + 1), fmt_double(pc.bold_value),
                    fmt_double(pc.best_response_value), bet, gain});
  }
  out.csv = csv.str();
  out.table = "verdict: " + out.verdict +
              (cert.hypothesis_holds ? " (inequality holds everywhere)\n"
                                     : " (inequality violated somewhere)\n") +
              render_table(rows);
  return out;
}

Output run_simulate(const Common& opt) {
  GameConfig cfg = need_config(opt);
  WinProbModel model = need_model(opt, cfg);
  std::vector<Strategy> profile =
      opt.profile.empty() ? all_bold_profile(cfg)
                          : io::parse_profile(opt.profile, cfg);
  SimReport sim = run_games(cfg, model, profile, opt.runs, opt.seed);

  ProfileValue value = evaluate_profile(cfg, model, profile);
  std::vector<double> analytic(cfg.n_players);
  for (int j = 0; j < cfg.n_players; ++j) {
    analytic[j] = value.initial_win_prob(j);
  }
  EmpiricalComparison cmp = compare_empirical(sim, analytic, opt.z);

  json names = json::array();
  for (const auto& s : profile) names.push_back(s.name);

  Output out;
  out.runspec = game_options(cfg, model);
  out.runspec["profile"] = names;
  out.runspec["runs"] = opt.runs;
  out.runspec["seed"] = opt.seed;
  out.runspec["z"] = opt.z;
  out.result = {{"simulation", io::to_json(sim)},
                {"comparison", io::to_json(cmp)}};
  out.verdict = cmp.all_pass ? "pass" : "fail";

  std::ostringstream csv;
  csv << "player,wins,empirical,analytic,bound,pass\n";
  std::vector<std::vector<std::string>> rows = {
      {"player", "wins", "empirical", "analytic", "bound", "pass"}};
  for (int j = 0; j < cfg.n_players; ++j) {
    csv << j + 1 << ',' << sim.wins[j] << ',' << fmt_double(sim.empirical[j])
        << ',' << fmt_double(cmp.analytic[j]) << ',' << fmt_double(cmp.bound[j])
        << ',' << (cmp.pass[j] ? "true" : "false") << '\n';
    rows.push_back({std::to_string(j + 1), std::to_string(sim.wins[j]),
                    fmt_double(sim.empirical[j]), fmt_double(cmp.analytic[j]),
                    fmt_double(cmp.bound[j]), cmp.pass[j] ? "true" : "false"});
  }
  csv << "house," << sim.house_wins << ','
      << fmt_double(static_cast<double>(sim.house_wins) /
                    static_cast<double>(sim.runs))
      << ",,,\n";
  out.csv = csv.str();
  out.table = "verdict: " + out.verdict + "\n" + render_table(rows);
  return out;
}

// ---- dispatch ------------------------------------------------------------

int emit(const std::string& command, const Common& opt, const Output& out) {
  std::string text;
  if (opt.format == "json") {
    json report = {{"command", command},
                   {"runspec", out.runspec},
                   {"verdict", out.verdict},
                   {"result", out.result}};
    text = report.dump(2) + "\n";
  } else if (opt.format == "csv") {
    text = out.csv;
  } else {
    text = out.table;
  }

  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file.good()) {
      std::cerr << "error: cannot write to '" << opt.out_path << "'\n";
      return 2;
    }
    file << text;
  }

  if (!opt.expect.empty() && opt.expect != out.verdict) {
    std::cerr << "expected verdict '" << opt.expect << "' but got '"
              << out.verdict << "'\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for N-player red-and-black betting games"};
  app.require_subcommand(1);

  Common opt;
  std::function<Output()> runner;
  std::string command;

  auto game_model = [&](CLI::App* cmd) {
    cmd->add_option("--game", opt.game,
                    "Game config: inline JSON or a path, e.g. "
                    "'{\"n\":2,\"fortunes\":[3,4],\"goal\":5}'");
    cmd->add_option("--model", opt.model,
                    "Win model: proportional[:linear:W|:power:P], constant:C, "
                    "threshold:PLAYER:T, exponential:EPS, or JSON");
    cmd->add_option("--phi", opt.phi, "Shape for proportional: linear:W or power:P");
  };
  auto tables = [&](CLI::App* cmd, bool with_g) {
    cmd->add_option("--f", opt.f_spec,
                    "Table: exp:EPS, truncated-linear:EPS:CUT, linear:S, "
                    "const:C, or a JSON array");
    if (with_g) cmd->add_option("--g", opt.g_spec, "Second table, same forms");
    cmd->add_option("--M", opt.table_max, "Table domain maximum");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a model's probability rules");
  game_model(validate);
  add_output_options(validate, opt);
  validate->callback([&] { command = "validate"; runner = [&] { return run_validate(opt); }; });

  CLI::App* ineq = app.add_subcommand("check-inequality",
                                      "Scan f(x)-f(a) >= g(a)f(x-a)");
  tables(ineq, true);
  ineq->add_flag("--unrestricted", opt.unrestricted,
                 "Scan all stake/fortune pairs, not just a <= x");
  add_output_options(ineq, opt);
  ineq->callback([&] { command = "check-inequality"; runner = [&] { return run_check_inequality(opt); }; });

  CLI::App* gmin_cmd = app.add_subcommand("gmin", "Largest g compatible with f");
  tables(gmin_cmd, false);
  add_output_options(gmin_cmd, opt);
  gmin_cmd->callback([&] { command = "gmin"; runner = [&] { return run_gmin(opt); }; });

  CLI::App* eq = app.add_subcommand("check-equation",
                                    "Classify exact solutions of the identity");
  tables(eq, true);
  eq->add_option("--tol", opt.tol, "Residual/shape tolerance")->capture_default_str();
  add_output_options(eq, opt);
  eq->callback([&] { command = "check-equation"; runner = [&] { return run_check_equation(opt); }; });

  CLI::App* hyp = app.add_subcommand("hypothesis",
                                     "Check the slice inequality at every active state");
  game_model(hyp);
  add_output_options(hyp, opt);
  hyp->callback([&] { command = "hypothesis"; runner = [&] { return run_hypothesis(opt); }; });

  CLI::App* eval = app.add_subcommand("evaluate", "Win probabilities under a profile");
  game_model(eval);
  eval->add_option("--profile", opt.profile, "Per-player strategies, e.g. bold,timid (default all bold)");
  add_output_options(eval, opt);
  eval->callback([&] { command = "evaluate"; runner = [&] { return run_evaluate(opt); }; });

  CLI::App* br = app.add_subcommand("best-response", "Optimal play against fixed opponents");
  game_model(br);
  br->add_option("--player", opt.player, "Player (1-based)")->required();
  br->add_option("--profile", opt.profile, "Opponent strategies (default all bold)");
  add_output_options(br, opt);
  br->callback([&] { command = "best-response"; runner = [&] { return run_best_response(opt); }; });

  CLI::App* cert = app.add_subcommand("certify", "Is all-bold a Nash equilibrium?");
  game_model(cert);
  cert->add_option("--tol", opt.tol, "Gain tolerance")->capture_default_str();
  cert->add_flag("--all-states", opt.all_states, "Compare at every active state");
  add_output_options(cert, opt);
  cert->callback([&] { command = "certify"; runner = [&] { return run_certify(opt); }; });

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo cross-check of a profile");
  game_model(sim);
  sim->add_option("--profile", opt.profile, "Per-player strategies (default all bold)");
  sim->add_option("--runs", opt.runs, "Number of games")->capture_default_str();
  sim->add_option("--seed", opt.seed, "Base seed")->capture_default_str();
  sim->add_option("--z", opt.z, "Standard-error multiplier")->capture_default_str();
  add_output_options(sim, opt);
  sim->callback([&] { command = "simulate"; runner = [&] { return run_simulate(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    Output out = runner();
    return emit(command, opt, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

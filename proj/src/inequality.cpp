#include "redblack/inequality.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace redblack {

namespace {

constexpr double kViolationTolerance = 1e-12;

}  // namespace

InequalityReport check_inequality(std::span<const double> f,
                                  std::span<const double> g,
                                  bool restrict_a_le_x) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("f has " + std::to_string(f.size()) +
                                " entries but g has " +
                                std::to_string(g.size()));
  }
  if (f.empty()) throw std::invalid_argument("tables must not be empty");

  InequalityReport report;
  report.table_max = static_cast<int>(f.size()) - 1;
  report.restricted = restrict_a_le_x;
  const int m = report.table_max;
  for (int a = 0; a <= m; ++a) {
    int x_begin = restrict_a_le_x ? a : 0;
    for (int x = x_begin; x <= m; ++x) {
      ++report.pairs_scanned;
      if (x < a) continue;  // f[x - a] does not exist, nothing to compare
      ++report.pairs_checked;
      double lhs = f[x] - f[a];
      double rhs = g[a] * f[x - a];
      if (lhs < rhs - kViolationTolerance) {
        report.violations.push_back({a, x, lhs, rhs});
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

GminTable gmin(std::span<const double> f) {
  if (f.size() < 2) throw std::invalid_argument("need a table over {0..M}, M >= 1");
  const int m = static_cast<int>(f.size()) - 1;
  for (int t = 1; t <= m; ++t) {
    if (!(f[t] > 0.0)) {
      throw std::invalid_argument("f must be positive on {1..M}; f[" +
                                  std::to_string(t) + "] = " +
                                  std::to_string(f[t]));
    }
  }
  GminTable table;
  table.values.resize(m);
  table.argmin_x.resize(m);
  for (int y = 0; y < m; ++y) {
    double best = (f[y + 1] - f[y]) / f[1];
    int best_x = y + 1;
    for (int x = y + 2; x <= m; ++x) {
      double ratio = (f[x] - f[y]) / f[x - y];
      if (ratio < best) {
        best = ratio;
        best_x = x;
      }
    }
    table.values[y] = best;
    table.argmin_x[y] = best_x;
  }
  return table;
}

EquationClassification check_equation(std::span<const double> f,
                                      std::span<const double> g, double tol) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("f has " + std::to_string(f.size()) +
                                " entries but g has " +
                                std::to_string(g.size()));
  }
  if (f.empty()) throw std::invalid_argument("tables must not be empty");
  const int m = static_cast<int>(f.size()) - 1;

  EquationClassification out;
  for (int a = 0; a <= m; ++a) {
    for (int x = a; x <= m; ++x) {
      double residual = std::abs(f[x] - f[a] - g[a] * f[x - a]);
      out.max_residual = std::max(out.max_residual, residual);
    }
  }

  double f_max = 0.0, g_max = 0.0, f_drift = 0.0, g_one = 0.0, f_linear = 0.0;
  for (int t = 0; t <= m; ++t) {
    f_max = std::max(f_max, std::abs(f[t]));
    g_max = std::max(g_max, std::abs(g[t]));
    f_drift = std::max(f_drift, std::abs(f[t] - f[0]));
    g_one = std::max(g_one, std::abs(g[t] - 1.0));
    if (m >= 1) f_linear = std::max(f_linear, std::abs(f[t] - f[1] * t));
  }

  if (out.max_residual <= tol) {
    if (f_max <= tol) {
      out.family = EquationFamily::FZero;
    } else if (g_max <= tol && f_drift <= tol) {
      out.family = EquationFamily::GZeroFConstant;
    } else if (g_one <= tol && f_linear <= tol) {
      out.family = EquationFamily::LinearFGOne;
    }
  }
  return out;
}

const char* equation_family_name(EquationFamily family) {
  switch (family) {
    case EquationFamily::GZeroFConstant:
      return "g-zero-f-constant";
    case EquationFamily::FZero:
      return "f-zero";
    case EquationFamily::LinearFGOne:
      return "linear-f-g-one";
    case EquationFamily::None:
      return "none";
  }
  return "none";
}

HypothesisReport hypothesis_check(const WinProbModel& model,
                                  const GameConfig& cfg) {
  HypothesisReport report;
  for (const State& s : enumerate_states(cfg)) {
    if (!classify_state(cfg, s).active()) continue;
    for (int j = 0; j < cfg.n_players; ++j) {
      FGSlice slice = slice_fg(model, cfg, s, j);
      HypothesisContext ctx;
      ctx.state = s;
      ctx.player = j;
      ctx.report = check_inequality(slice.f, slice.g, /*restrict_a_le_x=*/true);
      ++report.contexts_checked;
      if (!ctx.report.holds) ++report.contexts_failed;
      report.contexts.push_back(std::move(ctx));
    }
  }
  report.holds = report.contexts_failed == 0;
  return report;
}

}  // namespace redblack

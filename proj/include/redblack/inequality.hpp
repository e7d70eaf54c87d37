#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "redblack/prob_models.hpp"

// Checks for the functional inequality
//
//     f(x) - f(a) >= g(a) * f(x - a)        for stakes a <= fortunes x
//
// on tables f, g indexed by {0..M}. When the inequality holds for the f/g
// slice of every active state and player, playing boldly (staking one's whole
// fortune every round) is a Nash equilibrium of the game.

namespace redblack {

struct InequalityViolation {
  int a = 0;
  int x = 0;
  double lhs = 0.0;  // f[x] - f[a]
  double rhs = 0.0;  // g[a] * f[x - a]
};

struct InequalityReport {
  bool holds = true;
  std::vector<InequalityViolation> violations;  // ascending (a, x)
  int table_max = 0;            // M; tables have M + 1 entries
  bool restricted = true;       // scan limited to a <= x?
  std::int64_t pairs_scanned = 0;
  std::int64_t pairs_checked = 0;
};

// Scans stake/fortune pairs and records every pair whose left side falls
// more than 1e-12 below the right side. With restrict_a_le_x off the scan
// covers all of {0..M}^2; pairs with x < a put x - a outside the tables'
// domain, so no term exists to compare and they pass vacuously. Throws on
// mismatched table lengths.
InequalityReport check_inequality(std::span<const double> f,
                                  std::span<const double> g,
                                  bool restrict_a_le_x = true);

// The pointwise-largest g compatible with the inequality for a given f:
//   values[y] = min over x in {y+1..M} of (f[x] - f[y]) / f[x - y]
// Defined for y in {0..M-1}; requires f positive on {1..M} (f[0] is free,
// and with f[0] = 0 the y = 0 entry is exactly 1). argmin_x records a
// minimizing x per y, smallest first.
struct GminTable {
  std::vector<double> values;
  std::vector<int> argmin_x;
};

GminTable gmin(std::span<const double> f);

// Exact-solution families of f(x) - f(a) = g(a) * f(x - a):
// constant f with g = 0, arbitrary g with f = 0, and linear f with g = 1.
enum class EquationFamily { GZeroFConstant, FZero, LinearFGOne, None };

struct EquationClassification {
  double max_residual = 0.0;  // max |f[x] - f[a] - g[a] * f[x-a]| over a <= x
  EquationFamily family = EquationFamily::None;
};

// Classifies (f, g) against the exact-solution families. A family label is
// assigned only when the shape matches pointwise within tol and the residual
// stays within tol; otherwise None.
EquationClassification check_equation(std::span<const double> f,
                                      std::span<const double> g,
                                      double tol = 1e-9);

const char* equation_family_name(EquationFamily family);

// Inequality check of the f/g slice at every (active state, player) pair.
struct HypothesisContext {
  State state;
  int player = 0;
  InequalityReport report;
};

struct HypothesisReport {
  bool holds = true;  // all contexts pass
  int contexts_checked = 0;
  int contexts_failed = 0;
  std::vector<HypothesisContext> contexts;  // one per (state, player)
};

HypothesisReport hypothesis_check(const WinProbModel& model,
                                  const GameConfig& cfg);

}  // namespace redblack

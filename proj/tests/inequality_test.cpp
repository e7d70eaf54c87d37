#include "redblack/inequality.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "redblack/game.hpp"
#include "redblack/prob_models.hpp"
#include "test_util.hpp"

using namespace redblack;

namespace {

std::vector<double> exp_table(int m, double eps) {
  std::vector<double> f(m + 1);
  for (int t = 0; t <= m; ++t) f[t] = 1.0 - std::exp(-eps * t);
  return f;
}

std::vector<double> truncated_linear_table(int m, double eps, int cut) {
  std::vector<double> g(m + 1);
  for (int t = 0; t <= m; ++t) g[t] = t < cut ? 1.0 - eps * t : 0.0;
  return g;
}

// gmin() reports one entry per y in {0..M-1}; pad to a full table so it can
// be fed back through check_inequality (a = M only ever pairs with x = M,
// where the right side is g[M] * f[0], so the pad value never bites as long
// as f[0] = 0).
std::vector<double> padded(const GminTable& t) {
  std::vector<double> g = t.values;
  g.push_back(0.0);
  return g;
}

}  // namespace

static void test_check_inequality_rejects_bad_tables() {
  std::vector<double> f = {0.0, 0.5};
  std::vector<double> g = {0.0, 0.5, 1.0};
  CHECK_THROWS(check_inequality(f, g));
  CHECK_THROWS(check_inequality(std::vector<double>{}, std::vector<double>{}));
}

static void test_proportional_slice_violates() {
  // f(t) = t / (t + 4) with a flat g = 4/7 fails at (a, x) = (3, 4):
  // the left side is 1/2 - 3/7 = 1/14, the right side 4/7 * 1/5 = 4/35.
  std::vector<double> f(8), g(8, 4.0 / 7.0);
  f[0] = 0.0;
  for (int t = 1; t <= 7; ++t) f[t] = static_cast<double>(t) / (t + 4.0);

  auto report = check_inequality(f, g);
  CHECK(!report.holds);
  CHECK(report.table_max == 7);
  CHECK(report.restricted);
  bool found = false;
  int last_a = -1, last_x = -1;
  for (const auto& v : report.violations) {
    CHECK(0 <= v.a && v.a <= v.x && v.x <= 7);
    CHECK(v.lhs < v.rhs - 1e-12);
    CHECK(std::make_pair(v.a, v.x) > std::make_pair(last_a, last_x));
    last_a = v.a;
    last_x = v.x;
    if (v.a == 3 && v.x == 4) {
      found = true;
      CHECK_NEAR(v.lhs, 1.0 / 14.0, 1e-12);
      CHECK_NEAR(v.rhs, 4.0 / 35.0, 1e-12);
    }
  }
  CHECK(found);
}

static void test_exponential_pair_holds_restricted_and_not() {
  // f(t) = 1 - exp(-0.01 t), g(a) = 1 - 0.01 a cut off at a = 100. Since
  // exp(-y) >= 1 - y, the inequality holds on every pair; pairs with x < a
  // have nothing to compare and pass vacuously.
  const int m = 1000;
  auto f = exp_table(m, 0.01);
  auto g = truncated_linear_table(m, 0.01, 100);

  auto restricted = check_inequality(f, g, /*restrict_a_le_x=*/true);
  CHECK(restricted.holds);
  CHECK(restricted.violations.empty());
  CHECK(restricted.pairs_scanned == 501501);  // (M+1)(M+2)/2
  CHECK(restricted.pairs_checked == 501501);

  auto full = check_inequality(f, g, /*restrict_a_le_x=*/false);
  CHECK(full.holds);
  CHECK(!full.restricted);
  CHECK(full.pairs_scanned == 1002001);       // (M+1)^2
  CHECK(full.pairs_checked == 501501);
}

static void test_gmin_exponential_closed_form() {
  // For f(t) = 1 - exp(-eps t) the ratio (f(x) - f(y)) / f(x - y) is
  // exp(-eps y) for every x, so the minimum is exactly that.
  const int m = 1000;
  auto f = exp_table(m, 0.01);
  auto table = gmin(f);
  CHECK(table.values.size() == 1000u);
  for (int y = 0; y < m; ++y)
    CHECK_NEAR(table.values[y], std::exp(-0.01 * y), 1e-12);
  CHECK(table.values[0] == 1.0);  // f[0] = 0 forces the y = 0 entry to 1
}

static void test_gmin_rejects_non_positive_f() {
  CHECK_THROWS(gmin(std::vector<double>{0.0, 0.0, 0.5}));
  CHECK_THROWS(gmin(std::vector<double>{0.0, -0.2, 0.5}));
  CHECK_THROWS(gmin(std::vector<double>{0.5}));
}

static void test_gmin_is_maximal() {
  // Property: (f, gmin) satisfies the inequality; raising any single entry
  // of gmin breaks it at that entry; shrinking gmin keeps it valid.
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> step(0.01, 1.0);
  std::uniform_int_distribution<int> size(2, 20);

  for (int trial = 0; trial < 30; ++trial) {
    const int m = size(rng);
    std::vector<double> f(m + 1, 0.0);
    for (int t = 1; t <= m; ++t) f[t] = f[t - 1] + step(rng);

    auto table = gmin(f);
    auto g = padded(table);
    CHECK(check_inequality(f, g).holds);

    for (int y = 0; y < m; ++y) {
      auto bumped = g;
      bumped[y] += 1e-6;
      auto report = check_inequality(f, bumped);
      CHECK(!report.holds);
      bool at_witness = false;
      for (const auto& v : report.violations) {
        CHECK(v.a == y);  // only the bumped entry can break
        if (v.x == table.argmin_x[y]) at_witness = true;
      }
      CHECK(at_witness);
    }

    auto shrunk = g;
    for (double& v : shrunk) v *= 0.9;
    CHECK(check_inequality(f, shrunk).holds);
  }
}

static void test_check_equation_families() {
  // Flat f with vanishing g.
  {
    std::vector<double> f(6, 0.7), g(6, 0.0);
    auto cls = check_equation(f, g, 1e-12);
    CHECK(cls.family == EquationFamily::GZeroFConstant);
    CHECK(cls.max_residual <= 1e-12);
  }
  // Vanishing f with arbitrary g.
  {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> f(9, 0.0), g(9);
    for (double& v : g) v = u(rng);
    auto cls = check_equation(f, g, 1e-12);
    CHECK(cls.family == EquationFamily::FZero);
    CHECK(cls.max_residual == 0.0);
  }
  // Both f and g vanish: the f = 0 label wins.
  {
    std::vector<double> f(4, 0.0), g(4, 0.0);
    CHECK(check_equation(f, g, 1e-12).family == EquationFamily::FZero);
  }
  // Linear f with g pinned at 1.
  {
    std::vector<double> f = {0.0, 0.3, 0.6, 0.8999999999999999};
    for (int t = 0; t <= 3; ++t) f[t] = 0.3 * t;
    std::vector<double> g(4, 1.0);
    auto cls = check_equation(f, g, 1e-12);
    CHECK(cls.family == EquationFamily::LinearFGOne);
    CHECK(cls.max_residual <= 1e-12);

    // Equation-family tables satisfy the inequality with equality.
    auto report = check_inequality(f, g);
    CHECK(report.holds);
    for (int a = 0; a <= 3; ++a)
      for (int x = a; x <= 3; ++x)
        CHECK_NEAR(f[x] - f[a], g[a] * f[x - a], 1e-12);
  }
  // A pair solving nothing: the curves from the big inequality instance.
  {
    auto f = exp_table(1000, 0.01);
    auto g = truncated_linear_table(1000, 0.01, 100);
    auto cls = check_equation(f, g, 1e-9);
    CHECK(cls.family == EquationFamily::None);
    // Worst pair is a = 100, x = 1000, where g is already 0.
    CHECK_NEAR(cls.max_residual, f[1000] - f[100], 1e-15);
    CHECK(cls.max_residual > 0.3);
  }
}

static void test_equation_family_names() {
  CHECK(std::string(equation_family_name(EquationFamily::GZeroFConstant)) ==
        "g-zero-f-constant");
  CHECK(std::string(equation_family_name(EquationFamily::FZero)) == "f-zero");
  CHECK(std::string(equation_family_name(EquationFamily::LinearFGOne)) ==
        "linear-f-g-one");
  CHECK(std::string(equation_family_name(EquationFamily::None)) == "none");
}

static void test_hypothesis_constant_fails_everywhere() {
  GameConfig cfg = validate_config(2, {4, 3}, 5);
  auto model = make_constant(2, 0.5);
  auto report = hypothesis_check(model, cfg);
  CHECK(!report.holds);
  CHECK(report.contexts_checked == 18);  // 9 active states x 2 players
  CHECK(report.contexts_failed == 18);
  CHECK(report.contexts.size() == 18u);

  // Every slice is f = 1/2 above stake 0 with flat g = 1/2, so (1, 2) is a
  // violation in each: 0 on the left, 1/4 on the right.
  for (const auto& ctx : report.contexts) {
    bool found = false;
    for (const auto& v : ctx.report.violations) {
      if (v.a == 1 && v.x == 2) {
        found = true;
        CHECK_NEAR(v.lhs, 0.0, 1e-15);
        CHECK_NEAR(v.rhs, 0.25, 1e-15);
      }
    }
    CHECK(found);
  }
}

static void test_hypothesis_proportional_fails_at_known_context() {
  GameConfig cfg = validate_config(2, {4, 3}, 5);
  auto model = make_proportional(phi_linear(1.0), cfg.initial_fortunes);
  auto report = hypothesis_check(model, cfg);
  CHECK(!report.holds);

  bool found = false;
  for (const auto& ctx : report.contexts) {
    if (ctx.state != State({3, 4}) || ctx.player != 0) continue;
    for (const auto& v : ctx.report.violations) {
      if (v.a == 3 && v.x == 4) {
        found = true;
        CHECK_NEAR(v.lhs, 1.0 / 14.0, 1e-12);
        CHECK_NEAR(v.rhs, 4.0 / 35.0, 1e-12);
      }
    }
  }
  CHECK(found);
}

static void test_hypothesis_exponential_holds() {
  // Slices of the scaled-exponential family satisfy the inequality with lots
  // of slack at this scale: f(x) - f(a) = exp(-eps a) f(x - a) and the flat
  // g of any slice stays far below exp(-eps a).
  GameConfig cfg = validate_config(2, {4, 3}, 5);
  auto model = make_scaled_exponential(2, 0.01);
  auto report = hypothesis_check(model, cfg);
  CHECK(report.holds);
  CHECK(report.contexts_failed == 0);
  CHECK(report.contexts_checked == 18);
}

int main() {
  RUN(test_check_inequality_rejects_bad_tables);
  RUN(test_proportional_slice_violates);
  RUN(test_exponential_pair_holds_restricted_and_not);
  RUN(test_gmin_exponential_closed_form);
  RUN(test_gmin_rejects_non_positive_f);
  RUN(test_gmin_is_maximal);
  RUN(test_check_equation_families);
  RUN(test_equation_family_names);
  RUN(test_hypothesis_constant_fails_everywhere);
  RUN(test_hypothesis_proportional_fails_at_known_context);
  RUN(test_hypothesis_exponential_holds);
  return 0;
}

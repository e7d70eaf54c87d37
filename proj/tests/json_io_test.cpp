#include "redblack/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "test_util.hpp"

using namespace redblack;
using nlohmann::json;

namespace {

// Writes text to a scratch file and returns its path.
std::string scratch_file(const std::string& name, const std::string& text) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  return path;
}

}  // namespace

static void test_config_round_trip() {
  GameConfig cfg = validate_config(2, {3, 4}, 5);
  json j = io::to_json(cfg);
  CHECK(j["n"] == 2);
  CHECK(j["fortunes"] == json::array({3, 4}));
  CHECK(j["goal"] == 5);
  CHECK(j["total"] == 7);

  GameConfig back = io::config_from_json(j);
  CHECK(back.n_players == cfg.n_players);
  CHECK(back.initial_fortunes == cfg.initial_fortunes);
  CHECK(back.goal == cfg.goal);
}

static void test_parse_config_inline_and_file() {
  GameConfig cfg = io::parse_config(R"({"n":2,"fortunes":[3,4],"goal":5})");
  CHECK(cfg.total == 7);

  std::string path = scratch_file("rb_io_config.json",
                                  R"({"n":3,"fortunes":[1,1,2],"goal":3})");
  CHECK(io::parse_config(path).n_players == 3);
  CHECK(io::parse_config("@" + path).total == 4);

  CHECK_THROWS(io::parse_config(R"({"n":2,"fortunes":[3,4],"goal":8})"));
  CHECK_THROWS(io::parse_config(R"({"n":2,"fortunes":[3,4]})"));
  CHECK_THROWS(io::parse_config(R"({"n":2,)"));
  CHECK_THROWS(io::parse_config("/tmp/rb_io_no_such_file.json"));
}

static void test_parse_model_compact_forms() {
  GameConfig cfg = validate_config(2, {3, 4}, 5);

  auto prop = io::parse_model("proportional", cfg);
  CHECK(prop.descriptor()["family"] == "proportional");
  CHECK(prop.descriptor()["phi"]["shape"] == "linear");
  CHECK(prop.descriptor()["context"] == json::array({3, 4}));
  CHECK_NEAR(prop.win_probs(std::vector<int>{3, 4})[0], 3.0 / 7.0, 1e-15);

  auto prop_pow = io::parse_model("proportional:power:2", cfg);
  CHECK_NEAR(prop_pow.win_probs(std::vector<int>{3, 4})[0], 9.0 / 49.0, 1e-15);

  auto constant = io::parse_model("constant:0.25", cfg);
  CHECK(constant.win_probs(std::vector<int>{1, 1})[0] == 0.25);

  // Threshold player is 1-based on the way in.
  auto thresh = io::parse_model("threshold:2:3", cfg);
  auto probs = thresh.win_probs(std::vector<int>{1, 3});
  CHECK(probs[0] == 0.0);
  CHECK(probs[1] == 1.0);

  auto expo = io::parse_model("exponential:0.01", cfg);
  CHECK_NEAR(expo.win_probs(std::vector<int>{100, 1})[0],
             (1.0 - std::exp(-1.0)) / 2.0, 1e-15);

  CHECK_THROWS(io::parse_model("magic:1", cfg));
  CHECK_THROWS(io::parse_model("constant", cfg));
  CHECK_THROWS(io::parse_model("constant:lots", cfg));
  CHECK_THROWS(io::parse_model("threshold:3:3", cfg));  // player out of range
  CHECK_THROWS(io::parse_model("proportional:linear", cfg));
}

static void test_parse_model_json_forms() {
  GameConfig cfg = validate_config(2, {3, 4}, 5);

  auto a = io::parse_model(
      R"({"family":"proportional","phi":{"shape":"linear","param":0.5}})", cfg);
  CHECK_NEAR(a.win_probs(std::vector<int>{3, 4})[0], 0.5 * 3.0 / 7.0, 1e-15);

  // An explicit context overrides the config's fortunes.
  auto b = io::parse_model(
      R"({"family":"proportional","context":[1,6]})", cfg);
  CHECK_NEAR(b.win_probs(std::vector<int>{3, 4})[0], 3.0 / 9.0, 1e-15);

  std::string path = scratch_file("rb_io_model.json", R"({"family":"constant","c":0.5})");
  CHECK(io::parse_model(path, cfg).win_probs(std::vector<int>{1, 1})[0] == 0.5);
  CHECK(io::parse_model("@" + path, cfg).players() == 2);

  CHECK_THROWS(io::parse_model(R"({"c":0.5})", cfg));
  CHECK_THROWS(io::parse_model(R"({"family":"proportional","context":[1]})", cfg));
  CHECK_THROWS(io::parse_model(
      R"({"family":"proportional","phi":{"shape":"cubic","param":3}})", cfg));
}

static void test_parse_phi() {
  CHECK_NEAR(io::parse_phi("linear:0.5")(0.4), 0.2, 1e-15);
  CHECK_NEAR(io::parse_phi("power:2")(0.5), 0.25, 1e-15);
  CHECK_THROWS(io::parse_phi("linear"));
  CHECK_THROWS(io::parse_phi("spline:3"));
  CHECK_THROWS(io::parse_phi("linear:2"));  // slope above 1
}

static void test_parse_table_forms() {
  auto f = io::parse_table("exp:0.5", 3);
  CHECK(f.size() == 4u);
  CHECK(f[0] == 0.0);
  CHECK_NEAR(f[2], 1.0 - std::exp(-1.0), 1e-15);

  auto g = io::parse_table("truncated-linear:0.01:2", 3);
  CHECK(g[0] == 1.0);
  CHECK_NEAR(g[1], 0.99, 1e-15);
  CHECK(g[2] == 0.0);  // the cutoff itself is already clipped
  CHECK(g[3] == 0.0);

  auto lin = io::parse_table("linear:0.3", 3);
  CHECK_NEAR(lin[3], 0.9, 1e-15);

  auto c = io::parse_table("const:0.7", 2);
  CHECK(c == std::vector<double>({0.7, 0.7, 0.7}));

  auto arr = io::parse_table("[0, 0.5, 1.0]", 2);
  CHECK(arr == std::vector<double>({0.0, 0.5, 1.0}));

  std::string path = scratch_file("rb_io_table.json", "[0, 0.25, 0.5]");
  CHECK(io::parse_table("@" + path, 2)[1] == 0.25);

  CHECK_THROWS(io::parse_table("[0, 0.5]", 2));      // wrong length
  CHECK_THROWS(io::parse_table("wave:1", 3));
  CHECK_THROWS(io::parse_table("exp:fast", 3));
  CHECK_THROWS(io::parse_table("exp:0.5", 0));
}

static void test_parse_profile() {
  GameConfig cfg = validate_config(2, {3, 4}, 5);
  auto profile = io::parse_profile("bold,timid", cfg);
  CHECK(profile.size() == 2u);
  CHECK(profile[0].name == "bold");
  CHECK(profile[1].name == "timid");
  CHECK(profile[0].bet({3, 4}, 0) == 3);
  CHECK(profile[1].bet({3, 4}, 1) == 1);

  CHECK_THROWS(io::parse_profile("bold", cfg));
  CHECK_THROWS(io::parse_profile("bold,sneaky", cfg));
}

static void test_report_serialization_uses_one_based_players() {
  GameConfig cfg = validate_config(2, {4, 3}, 5);
  auto model = make_constant(2, 0.5);

  json cert = io::to_json(certify_bold_nash(cfg, model));
  CHECK(cert["is_nash"] == false);
  CHECK(cert["players"][0]["player"] == 1);
  CHECK(cert["players"][1]["player"] == 2);
  CHECK(cert["players"][0]["witness"]["state"] == json::array({4, 3}));
  CHECK(cert["players"][0]["witness"]["bet"] == 1);
  CHECK(!cert["players"][1].contains("witness"));

  json hyp = io::to_json(hypothesis_check(model, cfg));
  CHECK(hyp["holds"] == false);
  CHECK(hyp["contexts"][0]["player"] == 1);
  // Failing contexts embed the full violation report; passing ones stay slim.
  CHECK(hyp["contexts"][0].contains("report"));

  json br = io::to_json(best_response(cfg, model, 0, all_bold_profile(cfg)));
  CHECK(br["player"] == 1);
  CHECK_NEAR(br["value_at_initial"].get<double>(), 0.75, 1e-12);
  CHECK(br["bet_at_initial"] == 1);
}

int main() {
  RUN(test_config_round_trip);
  RUN(test_parse_config_inline_and_file);
  RUN(test_parse_model_compact_forms);
  RUN(test_parse_model_json_forms);
  RUN(test_parse_phi);
  RUN(test_parse_table_forms);
  RUN(test_parse_profile);
  RUN(test_report_serialization_uses_one_based_players);
  return 0;
}

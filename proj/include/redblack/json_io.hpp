#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "redblack/equilibrium.hpp"
#include "redblack/inequality.hpp"
#include "redblack/simulate.hpp"

// JSON (de)serialization and the small text grammars shared by the CLI and
// the tests. Player indices are 1-based on every external surface.

namespace redblack::io {

using nlohmann::json;

// {"n": 2, "fortunes": [3, 4], "goal": 5}
json to_json(const GameConfig& cfg);
GameConfig config_from_json(const json& j);

// Accepts inline JSON (first non-space byte '{') or a path to a JSON file.
GameConfig parse_config(const std::string& text);

// Model descriptors:
//   {"family":"proportional","phi":{"shape":"linear","param":1.0},"context":[3,4]}
//   {"family":"constant","c":0.5}
//   {"family":"threshold","player":1,"threshold":3}
//   {"family":"exponential","epsilon":0.01}
// `context` defaults to the config's initial fortunes.
WinProbModel model_from_json(const json& j, const GameConfig& cfg);

// Compact grammar (or inline JSON / @path / path to an existing file):
//   proportional[:linear:W | :power:P]   constant:C
//   threshold:PLAYER:T                   exponential:EPS
WinProbModel parse_model(const std::string& text, const GameConfig& cfg);

// phi grammar: "linear:W" | "power:P"
PhiFunction parse_phi(const std::string& text);

// Table over {0..M} from a closed form or an inline JSON array:
//   exp:EPS                  1 - e^(-EPS * t)
//   truncated-linear:EPS:CUT 1 - EPS * t while t < CUT, 0 afterwards
//   linear:SLOPE             SLOPE * t
//   const:C                  C
std::vector<double> parse_table(const std::string& text, int table_max);

// "bold,timid,..." -> one strategy per player.
std::vector<Strategy> parse_profile(const std::string& text,
                                    const GameConfig& cfg);

json to_json(const ModelValidationReport& r);
json to_json(const InequalityReport& r);
json to_json(const GminTable& t);
json to_json(const EquationClassification& c);
json to_json(const HypothesisReport& r);
json to_json(const ProfileValue& v);
json to_json(const BestResponse& b);
json to_json(const Certificate& c);
json to_json(const SimReport& s);
json to_json(const EmpiricalComparison& c);

}  // namespace redblack::io

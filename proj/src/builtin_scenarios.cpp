#include "gqfi/scenario.hpp"

#include <utility>

namespace gqfi {

namespace {

const std::vector<std::pair<std::string, std::string>>& builtins() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"beamsplitter_pure", R"json({
  "name": "beamsplitter_pure",
  "description": "Squeezed and anti-squeezed vacuum through a beam splitter; estimate the angle t.",
  "modes": 2,
  "initial": {"type": "vacuum"},
  "stages": [
    {"kind": "squeezer", "modes": [0], "value": {"param": "r"}},
    {"kind": "squeezer", "modes": [1], "value": {"param": "r", "scale": -1}},
    {"kind": "beam_splitter", "modes": [0, 1], "value": {"param": "t"}}
  ],
  "parameters": [
    {"name": "r", "grid": [1.0]},
    {"name": "t", "start": 0.0, "stop": 3.141592653589793, "count": 9}
  ],
  "estimate": ["t"]
})json"},
      {"thermal_contrast", R"json({
  "name": "thermal_contrast",
  "description": "Thermal inputs (v1, v2), opposite single-mode squeezing, beam splitter at t = 0.",
  "modes": 2,
  "initial": {"type": "thermal", "nu": [{"param": "v1"}, {"param": "v2"}]},
  "stages": [
    {"kind": "squeezer", "modes": [0], "value": {"param": "r"}},
    {"kind": "squeezer", "modes": [1], "value": {"param": "r", "scale": -1}},
    {"kind": "beam_splitter", "modes": [0, 1], "value": {"param": "t"}}
  ],
  "parameters": [
    {"name": "v1", "grid": [0.5, 0.75, 1.0, 1.5, 2.5]},
    {"name": "v2", "grid": [0.5, 0.75, 1.0, 1.5, 2.5]},
    {"name": "r", "grid": [0.0, 0.5, 1.0]},
    {"name": "t", "grid": [0.0]}
  ],
  "estimate": ["t"]
})json"},
      {"loss_sweep", R"json({
  "name": "loss_sweep",
  "description": "Squeezed vacuum through a pure-loss channel; estimate the transmissivity eta.",
  "modes": 1,
  "initial": {"type": "vacuum"},
  "stages": [
    {"kind": "squeezer", "modes": [0], "value": {"param": "r"}},
    {"kind": "loss", "value": {"param": "eta"}}
  ],
  "parameters": [
    {"name": "r", "grid": [0.25, 0.5, 1.0]},
    {"name": "eta", "start": 0.005, "stop": 0.995, "count": 199}
  ],
  "estimate": ["eta"]
})json"},
      {"amplifier_sweep", R"json({
  "name": "amplifier_sweep",
  "description": "Squeezed vacuum through a phase-insensitive amplifier; estimate the gain g.",
  "modes": 1,
  "initial": {"type": "vacuum"},
  "stages": [
    {"kind": "squeezer", "modes": [0], "value": {"param": "r"}},
    {"kind": "amplifier", "value": {"param": "g"}}
  ],
  "parameters": [
    {"name": "r", "grid": [0.25, 0.5, 1.0]},
    {"name": "g", "start": 1.005, "stop": 3.0, "count": 400}
  ],
  "estimate": ["g"]
})json"},
      {"thermometry", R"json({
  "name": "thermometry",
  "description": "Single thermal mode of frequency omega; estimate the temperature T.",
  "modes": 1,
  "initial": {"type": "thermal_bath", "omega": 1.0, "temperature": {"param": "T"}},
  "parameters": [
    {"name": "T", "start": 0.2, "stop": 5.0, "count": 25}
  ],
  "estimate": ["T"]
})json"},
      {"phase_loss", R"json({
  "name": "phase_loss",
  "description": "Squeezed vacuum, pure loss, then a phase rotation; joint estimation of eta and theta.",
  "modes": 1,
  "initial": {"type": "vacuum"},
  "stages": [
    {"kind": "squeezer", "modes": [0], "value": {"param": "r"}},
    {"kind": "loss", "value": {"param": "eta"}},
    {"kind": "phase_rotation", "modes": [0], "value": {"param": "theta"}}
  ],
  "parameters": [
    {"name": "r", "grid": [0.25, 0.5, 1.0]},
    {"name": "eta", "start": 0.05, "stop": 0.95, "count": 19},
    {"name": "theta", "grid": [0.0, 0.7]}
  ],
  "estimate": ["eta", "theta"],
  "sector_sign_center": {"eta": 0.5}
})json"},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : builtins()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string builtin_config_text(const std::string& name) {
  for (const auto& [key, text] : builtins()) {
    if (key == name) return text;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown builtin scenario '" + name + "'");
}

}  // namespace gqfi

#pragma once

// Built-in surface and horn-antenna parameter sets used throughout the
// simulations and measurements.

#include <string>
#include <vector>

#include "rispath/radiation.hpp"
#include "rispath/ris.hpp"

namespace rispath {

struct AntennaPreset {
  std::string name;
  double alpha = 0.0;
  double gain = 1.0;  // linear
  double frequency_hz = 0.0;
};

/// Preset names: "large-ris1", "large-ris2", "small-ris".
std::vector<std::string> ris_preset_names();

/// Preset names: "x-band-horn", "c-band-horn".
std::vector<std::string> antenna_preset_names();

/// Throws ValidationError for an unknown name.
RisConfig ris_preset(const std::string& name);
AntennaPreset antenna_preset(const std::string& name);

AntennaSpec antenna_from_preset(const AntennaPreset& p);

/// One line per preset, for CLI listings.
std::string describe_presets();

}  // namespace rispath

#include "rispath/presets.hpp"

#include <cstdio>

#include "rispath/errors.hpp"
#include "rispath/units.hpp"

namespace rispath {

std::vector<std::string> ris_preset_names() { return {"large-ris1", "large-ris2", "small-ris"}; }

std::vector<std::string> antenna_preset_names() { return {"x-band-horn", "c-band-horn"}; }

RisConfig ris_preset(const std::string& name) {
  // Wavelengths are the published rounded values, kept verbatim rather than
  // recomputed from the frequency.
  if (name == "large-ris1") return make_ris_config(100, 102, 0.01, 0.01, 0.9, 3.0, 10.5e9, 0.0286);
  if (name == "large-ris2") return make_ris_config(50, 34, 0.01, 0.01, 0.9, 3.0, 10.5e9, 0.0286);
  if (name == "small-ris") return make_ris_config(8, 32, 0.012, 0.012, 0.7, 3.0, 4.25e9, 0.07);
  throw ValidationError("unknown surface preset '" + name + "'");
}

AntennaPreset antenna_preset(const std::string& name) {
  if (name == "x-band-horn") return {name, 62.0, cosine_gain_closed_form(62.0), 10.5e9};
  if (name == "c-band-horn") return {name, 13.0, cosine_gain_closed_form(13.0), 4.25e9};
  throw ValidationError("unknown antenna preset '" + name + "'");
}

AntennaSpec antenna_from_preset(const AntennaPreset& p) { return make_antenna(p.alpha, p.gain); }

std::string describe_presets() {
  std::string out;
  char buf[192];
  for (const auto& name : ris_preset_names()) {
    const RisConfig c = ris_preset(name);
    std::snprintf(buf, sizeof(buf),
                  "%-12s N=%d M=%d dx=%g m dy=%g m A=%g alpha=%g f=%g GHz lambda=%g m\n",
                  name.c_str(), c.rows_n, c.cols_m, c.dx_m, c.dy_m, c.amplitude,
                  c.cell_pattern.exponent(), c.frequency_hz / 1e9, c.wavelength_m);
    out += buf;
  }
  for (const auto& name : antenna_preset_names()) {
    const AntennaPreset a = antenna_preset(name);
    std::snprintf(buf, sizeof(buf), "%-12s alpha=%g gain=%.1f dB f=%g GHz\n", a.name.c_str(),
                  a.alpha, linear_to_db(a.gain), a.frequency_hz / 1e9);
    out += buf;
  }
  return out;
}

}  // namespace rispath

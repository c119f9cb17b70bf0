#pragma once

#include <string>

namespace polyscat {

/// Physical constants used to reduce lab-frame inputs to dimensionless form.
/// Defaults are CODATA 2018 exact/recommended values.
struct PhysicalConstants {
    double hbar_js = 1.054571817e-34;          ///< reduced Planck constant [J s]
    double electron_mass_kg = 9.1093837015e-31; ///< electron rest mass [kg]
    double ev_joule = 1.602176634e-19;          ///< electron volt [J]
};

/// CODATA 2018 defaults.
PhysicalConstants default_constants();

/// Load overrides from a JSON file. Recognized keys: "hbar_js",
/// "electron_mass_kg", "ev_joule"; absent keys keep their defaults.
/// Throws std::runtime_error on unknown keys or non-positive values
/// so a typo cannot silently fall back to a default.
PhysicalConstants load_constants(const std::string& json_path);

} // namespace polyscat

#include "polyscat/constants.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace polyscat {

PhysicalConstants default_constants() { return PhysicalConstants{}; }

PhysicalConstants load_constants(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) {
        throw std::runtime_error("cannot open constants file: " + json_path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("constants file " + json_path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw std::runtime_error("constants file must hold a JSON object");
    }

    PhysicalConstants c;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) {
            throw std::runtime_error("constant '" + key + "' must be a number");
        }
        const double v = value.get<double>();
        if (!(v > 0)) {
            throw std::runtime_error("constant '" + key + "' must be positive");
        }
        if (key == "hbar_js") {
            c.hbar_js = v;
        } else if (key == "electron_mass_kg") {
            c.electron_mass_kg = v;
        } else if (key == "ev_joule") {
            c.ev_joule = v;
        } else {
            throw std::runtime_error("unknown constant '" + key + "'");
        }
    }
    return c;
}

} // namespace polyscat

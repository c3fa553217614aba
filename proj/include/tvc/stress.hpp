#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvc/math.hpp"
#include "tvc/text.hpp"

// Closed-form static checks for the gimbal joints: pin shear under the
// axial thrust load, its von Mises equivalent, safety factor against the
// material yield, and servo stall-torque margin. A surrogate for full FEA,
// not a replacement; no stress-concentration factors.

namespace tvc {

struct MaterialSpec {
    std::string name;
    double density_g_cm3 = 0.0;
    double yield_strength_mpa = 0.0;

    void validate() const {
        if (!(density_g_cm3 > 0.0))
            throw std::domain_error("material density must be > 0 g/cm3, got " +
                                    num_str(density_g_cm3));
        if (!(yield_strength_mpa > 0.0))
            throw std::domain_error("material yield strength must be > 0 MPa, got " +
                                    num_str(yield_strength_mpa));
    }
};

// Yield strengths are handbook-range presets for common printed plastics,
// not measured values; densities follow typical filament datasheets.
inline std::vector<MaterialSpec> material_presets() {
    return {{"ABS", 1.04, 40.0}, {"PLA", 1.245, 60.0}, {"PC", 1.20, 62.0}};
}

inline MaterialSpec find_material(const std::string& name) {
    for (const auto& m : material_presets())
        if (m.name == name) return m;
    throw std::out_of_range("unknown material preset '" + name +
                            "' (shipped presets: ABS, PLA, PC)");
}

struct PinLoadCase {
    double axial_load_n = 30.0;
    double pin_diameter_mm = 6.35;
    int shear_planes = 2;     // 1 or 2 (pin bridging both frame walls)
    int load_share_pins = 1;  // pins assumed to share the load equally

    void validate() const {
        if (!(axial_load_n > 0.0))
            throw std::domain_error("pin load must be > 0 N, got " + num_str(axial_load_n));
        if (!(pin_diameter_mm > 0.0))
            throw std::domain_error("pin diameter must be > 0 mm, got " +
                                    num_str(pin_diameter_mm));
        if (shear_planes != 1 && shear_planes != 2)
            throw std::domain_error("shear_planes must be 1 or 2, got " +
                                    std::to_string(shear_planes));
        if (load_share_pins < 1)
            throw std::domain_error("load_share_pins must be >= 1, got " +
                                    std::to_string(load_share_pins));
    }
};

struct PinStressReport {
    double shear_mpa = 0.0;
    double von_mises_mpa = 0.0;
    double safety_factor = 0.0;
};

inline PinStressReport pin_stress_report(const PinLoadCase& load, const MaterialSpec& material) {
    load.validate();
    material.validate();
    const double radius_m = 0.5 * load.pin_diameter_mm * 1e-3;
    const double shear_area_m2 = static_cast<double>(load.load_share_pins) *
                                 static_cast<double>(load.shear_planes) * kPi * radius_m *
                                 radius_m;
    PinStressReport r;
    r.shear_mpa = load.axial_load_n / shear_area_m2 * 1e-6;
    r.von_mises_mpa = std::sqrt(3.0) * r.shear_mpa;
    r.safety_factor = material.yield_strength_mpa / r.von_mises_mpa;
    return r;
}

// stall / demand; infinity when nothing is demanded. Margin 1 means the
// servo is exactly at stall: no headroom.
inline double torque_margin(double demand_nm, double servo_stall_nm) {
    if (demand_nm < 0.0)
        throw std::domain_error("torque demand must be >= 0 N*m, got " + num_str(demand_nm));
    if (!(servo_stall_nm > 0.0))
        throw std::domain_error("servo stall torque must be > 0 N*m, got " +
                                num_str(servo_stall_nm));
    if (demand_nm == 0.0) return std::numeric_limits<double>::infinity();
    return servo_stall_nm / demand_nm;
}

// Catalog stall torque of the 9 g micro-servo class used on small gimbals,
// at 4.8 V: 1.8 kg*cm.
inline constexpr double kMicroServoStallNm = 0.176;

}  // namespace tvc

#pragma once

#include <cmath>
#include <stdexcept>

#include "tvc/math.hpp"
#include "tvc/text.hpp"

// Gimbal linkage kinematics: servo shaft angle -> nozzle deflection through
// the geometric amplification ratio, clamped to the nozzle authority, plus
// the thrust direction and static servo torque implied by a deflection.
//
// The linkage is modeled as exactly linear (shaft / G per axis). Rotation
// order for the thrust direction is yaw after pitch; at the +-5 deg
// authority the order changes components by well under 0.01 deg.

namespace tvc {

struct GimbalGeometry {
    double amplification = 3.0;        // servo deg per nozzle deg, G >= 1
    double max_deflection_deg = 5.0;   // nozzle authority per axis
    double pivot_lever_m = 0.02;       // gimbal pivot to thrust application point
    double pivot_to_cg_m = 0.30;       // rocket CG to gimbal pivot
    double pin_diameter_mm = 6.35;     // snap-in hinge pin
    double inner_mount_diameter_mm = 35.0;
    double outer_frame_diameter_mm = 74.0;

    void validate() const {
        if (!(amplification >= 1.0))
            throw std::domain_error("gimbal amplification must be >= 1, got " +
                                    num_str(amplification));
        if (!(max_deflection_deg > 0.0))
            throw std::domain_error("gimbal max_deflection_deg must be > 0, got " +
                                    num_str(max_deflection_deg));
        if (!(pivot_lever_m > 0.0))
            throw std::domain_error("gimbal pivot_lever_m must be > 0, got " +
                                    num_str(pivot_lever_m));
        if (!(pivot_to_cg_m > 0.0))
            throw std::domain_error("gimbal pivot_to_cg_m must be > 0, got " +
                                    num_str(pivot_to_cg_m));
        if (!(pin_diameter_mm > 0.0))
            throw std::domain_error("gimbal pin_diameter_mm must be > 0, got " +
                                    num_str(pin_diameter_mm));
        if (!(inner_mount_diameter_mm > 0.0))
            throw std::domain_error("gimbal inner_mount_diameter_mm must be > 0, got " +
                                    num_str(inner_mount_diameter_mm));
        if (!(outer_frame_diameter_mm > 0.0))
            throw std::domain_error("gimbal outer_frame_diameter_mm must be > 0, got " +
                                    num_str(outer_frame_diameter_mm));
    }
};

struct NozzleDeflection {
    double pitch_deg = 0.0;
    double yaw_deg = 0.0;
    bool saturated_pitch = false;
    bool saturated_yaw = false;
};

inline NozzleDeflection servo_to_nozzle(double shaft_pitch_deg, double shaft_yaw_deg,
                                        const GimbalGeometry& geom) {
    geom.validate();
    NozzleDeflection d;
    const double p = shaft_pitch_deg / geom.amplification;
    const double y = shaft_yaw_deg / geom.amplification;
    d.saturated_pitch = std::abs(p) > geom.max_deflection_deg;
    d.saturated_yaw = std::abs(y) > geom.max_deflection_deg;
    d.pitch_deg = clamp_abs(p, geom.max_deflection_deg);
    d.yaw_deg = clamp_abs(y, geom.max_deflection_deg);
    return d;
}

struct ShaftAngles {
    double pitch_deg = 0.0;
    double yaw_deg = 0.0;
};

// Inverse of servo_to_nozzle inside the unclamped region.
inline ShaftAngles nozzle_to_servo(const NozzleDeflection& d, const GimbalGeometry& geom) {
    geom.validate();
    if (std::abs(d.pitch_deg) > geom.max_deflection_deg ||
        std::abs(d.yaw_deg) > geom.max_deflection_deg)
        throw std::out_of_range("nozzle deflection (" + num_str(d.pitch_deg) + ", " +
                                num_str(d.yaw_deg) + ") deg exceeds authority " +
                                num_str(geom.max_deflection_deg) + " deg");
    return {d.pitch_deg * geom.amplification, d.yaw_deg * geom.amplification};
}

// Thrust direction in the body frame for a pitch/yaw deflection: body +Z
// rotated by pitch then yaw, u = (sin dy cos dp, -sin dp, cos dy cos dp).
// |result| equals magnitude to 1e-12 relative.
inline Vec3 thrust_vector(const NozzleDeflection& d, double magnitude_n) {
    if (!(magnitude_n >= 0.0))
        throw std::domain_error("thrust magnitude must be >= 0 N, got " + num_str(magnitude_n));
    const double dp = deg_to_rad(d.pitch_deg);
    const double dy = deg_to_rad(d.yaw_deg);
    const double cp = std::cos(dp);
    return Vec3{std::sin(dy) * cp, -std::sin(dp), std::cos(dy) * cp} * magnitude_n;
}

// Static shaft torque needed to hold one axis at deflection delta:
// the thrust moment about the pivot, reflected through the linkage, plus
// friction. Linkage reflection divides by G (lever advantage).
inline double servo_torque_demand(double thrust_n, double deflection_deg,
                                  const GimbalGeometry& geom, double friction_torque_nm = 0.0) {
    geom.validate();
    if (!(thrust_n >= 0.0))
        throw std::domain_error("thrust must be >= 0 N, got " + num_str(thrust_n));
    return thrust_n * std::sin(deg_to_rad(deflection_deg)) * geom.pivot_lever_m /
               geom.amplification +
           friction_torque_nm;
}

}  // namespace tvc

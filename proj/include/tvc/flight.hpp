#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvc/control.hpp"
#include "tvc/errors.hpp"
#include "tvc/gimbal.hpp"
#include "tvc/math.hpp"
#include "tvc/propulsion.hpp"
#include "tvc/servo.hpp"
#include "tvc/text.hpp"

// 6-DOF rigid body with thrust applied at the gimbal pivot below the CG,
// uniform gravity, velocity-squared drag acting at the CG, and injected
// disturbances. Fixed-step RK4; quaternion renormalized every step.
//
// Drag at the CG means the bare airframe is attitude-neutral: without
// control or disturbance torque the tilt holds constant, so any observed
// stabilization or divergence is attributable to the nozzle and injected
// disturbances alone.

namespace tvc {

struct RigidBodyState {
    Vec3 position;               // m, world
    Vec3 velocity;               // m/s, world
    Quat attitude;               // body -> world, unit norm
    Vec3 angular_velocity;       // rad/s, body
};

struct RocketParams {
    double mass_kg = 1.5;                  // launch mass
    Vec3 inertia = {0.125, 0.125, 0.002};  // principal moments, body axes
    double pivot_to_cg_m = 0.30;           // thrust acts at -pivot_to_cg * z_body from CG
    double drag_coefficient = 0.75;
    double reference_area_m2 = 0.004;
    double gravity_m_s2 = 9.81;
    double air_density_kg_m3 = 1.225;
    bool linear_mass_burn = false;  // uses the curve's propellant mass when on

    void validate() const {
        if (!(mass_kg > 0.0))
            throw std::domain_error("rocket mass_kg must be > 0, got " + num_str(mass_kg));
        if (!(inertia.x > 0.0 && inertia.y > 0.0 && inertia.z > 0.0))
            throw std::domain_error("rocket inertia components must be > 0");
        if (!(pivot_to_cg_m > 0.0))
            throw std::domain_error("rocket pivot_to_cg_m must be > 0, got " +
                                    num_str(pivot_to_cg_m));
        if (drag_coefficient < 0.0)
            throw std::domain_error("rocket drag_coefficient must be >= 0, got " +
                                    num_str(drag_coefficient));
        if (reference_area_m2 < 0.0)
            throw std::domain_error("rocket reference_area_m2 must be >= 0, got " +
                                    num_str(reference_area_m2));
        if (gravity_m_s2 < 0.0)
            throw std::domain_error("rocket gravity_m_s2 must be >= 0, got " +
                                    num_str(gravity_m_s2));
        if (air_density_kg_m3 < 0.0)
            throw std::domain_error("rocket air_density_kg_m3 must be >= 0, got " +
                                    num_str(air_density_kg_m3));
    }
};

// Finite window of extra body torque and world force, active on
// [start, start + duration).
struct Disturbance {
    double start_s = 0.0;
    double duration_s = 0.0;
    Vec3 torque_nm;   // body frame
    Vec3 force_n;     // world frame

    void validate() const {
        if (duration_s < 0.0)
            throw std::domain_error("disturbance duration_s must be >= 0, got " +
                                    num_str(duration_s));
    }

    bool active_at(double t_s) const { return t_s >= start_s && t_s < start_s + duration_s; }
};

struct StateDerivative {
    Vec3 dposition;
    Vec3 dvelocity;
    Quat dattitude;
    Vec3 dangular_velocity;
};

inline StateDerivative derivatives(const RigidBodyState& state, const RocketParams& params,
                                   const Vec3& thrust_body, double mass_kg,
                                   const std::vector<Disturbance>& disturbances, double t_s) {
    Vec3 force_world = state.attitude.rotate(thrust_body);
    force_world.z -= mass_kg * params.gravity_m_s2;
    const double speed = state.velocity.norm();
    if (speed > 0.0 && params.drag_coefficient > 0.0) {
        const double q = 0.5 * params.air_density_kg_m3 * params.drag_coefficient *
                         params.reference_area_m2 * speed;
        force_world += state.velocity * (-q);
    }
    const Vec3 lever{0.0, 0.0, -params.pivot_to_cg_m};
    Vec3 torque_body = lever.cross(thrust_body);
    for (const auto& d : disturbances) {
        if (!d.active_at(t_s)) continue;
        force_world += d.force_n;
        torque_body += d.torque_nm;
    }

    const Vec3& w = state.angular_velocity;
    const Vec3& I = params.inertia;
    StateDerivative d;
    d.dposition = state.velocity;
    d.dvelocity = force_world / mass_kg;
    d.dattitude = state.attitude.derivative(w);
    d.dangular_velocity = {(torque_body.x - (I.z - I.y) * w.y * w.z) / I.x,
                           (torque_body.y - (I.x - I.z) * w.z * w.x) / I.y,
                           (torque_body.z - (I.y - I.x) * w.x * w.y) / I.z};
    return d;
}

namespace detail {

inline RigidBodyState advance(const RigidBodyState& s, const StateDerivative& d, double h) {
    RigidBodyState out;
    out.position = s.position + d.dposition * h;
    out.velocity = s.velocity + d.dvelocity * h;
    out.attitude = s.attitude + d.dattitude * h;
    out.angular_velocity = s.angular_velocity + d.dangular_velocity * h;
    return out;
}

}  // namespace detail

// Classical RK4 step with zero-order-hold thrust; disturbance activity is
// evaluated at each stage time. Attitude renormalized after the step.
inline RigidBodyState rk4_step(const RigidBodyState& state, const RocketParams& params,
                               const Vec3& thrust_body, double mass_kg,
                               const std::vector<Disturbance>& disturbances, double t_s,
                               double dt_s) {
    if (!(dt_s > 0.0))
        throw std::domain_error("rk4_step dt must be > 0 s, got " + num_str(dt_s));
    const auto k1 = derivatives(state, params, thrust_body, mass_kg, disturbances, t_s);
    const auto k2 = derivatives(detail::advance(state, k1, 0.5 * dt_s), params, thrust_body,
                                mass_kg, disturbances, t_s + 0.5 * dt_s);
    const auto k3 = derivatives(detail::advance(state, k2, 0.5 * dt_s), params, thrust_body,
                                mass_kg, disturbances, t_s + 0.5 * dt_s);
    const auto k4 = derivatives(detail::advance(state, k3, dt_s), params, thrust_body, mass_kg,
                                disturbances, t_s + dt_s);

    RigidBodyState out;
    const double w = dt_s / 6.0;
    out.position = state.position +
                   (k1.dposition + (k2.dposition + k3.dposition) * 2.0 + k4.dposition) * w;
    out.velocity = state.velocity +
                   (k1.dvelocity + (k2.dvelocity + k3.dvelocity) * 2.0 + k4.dvelocity) * w;
    out.attitude = (state.attitude +
                    (k1.dattitude + (k2.dattitude + k3.dattitude) * 2.0 + k4.dattitude) * w)
                       .normalized();
    out.angular_velocity = state.angular_velocity + (k1.dangular_velocity +
                                                     (k2.dangular_velocity +
                                                      k3.dangular_velocity) *
                                                         2.0 +
                                                     k4.dangular_velocity) *
                                                        w;
    return out;
}

enum class ControlMode { none, pid, profile };

struct FlightConfig {
    double t_end_s = 5.0;
    double dt_s = 1e-3;
    double control_period_s = 0.02;  // one 50 Hz PWM frame
    std::size_t output_every = 10;   // record decimation in integrator steps
    ControlMode mode = ControlMode::none;
    PidGains gains;            // used when mode == pid; setpoint is zero tilt
    CommandProfile profile;    // used when mode == profile (open-loop nozzle commands)

    void validate() const {
        if (!(t_end_s > 0.0))
            throw std::domain_error("t_end_s must be > 0, got " + num_str(t_end_s));
        if (!(dt_s > 0.0)) throw std::domain_error("dt_s must be > 0, got " + num_str(dt_s));
        if (!(control_period_s >= dt_s))
            throw std::domain_error("control_period_s must be >= dt_s");
        const double ratio = control_period_s / dt_s;
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw std::domain_error("control_period_s must be an integer multiple of dt_s");
        if (output_every == 0) throw std::domain_error("output_every must be >= 1");
        if (mode == ControlMode::pid) gains.validate();
    }
};

struct FlightRecord {
    double t_s = 0.0;
    RigidBodyState state;
    double servo_pitch_deg = 0.0;
    double servo_yaw_deg = 0.0;
    double nozzle_pitch_deg = 0.0;
    double nozzle_yaw_deg = 0.0;
    double thrust_n = 0.0;
};

// Full closed-loop run. Controller output is sampled every control period
// and held; servos relax toward it every dt; thrust magnitude is sampled at
// each step start. Bit-reproducible for identical inputs.
inline std::vector<FlightRecord> simulate(const RigidBodyState& initial,
                                          const RocketParams& params,
                                          const ServoParams& servo_params,
                                          const GimbalGeometry& geom, const ThrustCurve& curve,
                                          const std::vector<Disturbance>& disturbances,
                                          const FlightConfig& config) {
    params.validate();
    servo_params.validate();
    geom.validate();
    curve.validate();
    config.validate();
    for (const auto& d : disturbances) d.validate();
    if (config.mode == ControlMode::profile) config.profile.validate(geom.max_deflection_deg);

    const auto steps = static_cast<std::size_t>(std::llround(config.t_end_s / config.dt_s));
    const auto control_every =
        static_cast<std::size_t>(std::llround(config.control_period_s / config.dt_s));

    RigidBodyState state = initial;
    state.attitude = state.attitude.normalized();

    ServoState servo_pitch, servo_yaw;
    servo_pitch.trial_tau_ms = servo_params.time_constant_ms;
    servo_yaw.trial_tau_ms = servo_params.time_constant_ms;

    double integ_pitch = 0.0, integ_yaw = 0.0;
    double prev_err_pitch = 0.0, prev_err_yaw = 0.0;

    std::vector<FlightRecord> records;
    records.reserve(steps / config.output_every + 2);
    NozzleDeflection nozzle;
    double thrust_mag = 0.0;

    const auto finite = [](const RigidBodyState& s) {
        return std::isfinite(s.position.x) && std::isfinite(s.position.y) &&
               std::isfinite(s.position.z) && std::isfinite(s.velocity.x) &&
               std::isfinite(s.velocity.y) && std::isfinite(s.velocity.z) &&
               std::isfinite(s.attitude.w) && std::isfinite(s.attitude.x) &&
               std::isfinite(s.attitude.y) && std::isfinite(s.attitude.z) &&
               std::isfinite(s.angular_velocity.x) && std::isfinite(s.angular_velocity.y) &&
               std::isfinite(s.angular_velocity.z);
    };

    const auto record_at = [&](double t) {
        FlightRecord r;
        r.t_s = t;
        r.state = state;
        r.servo_pitch_deg = servo_pitch.shaft_angle_deg;
        r.servo_yaw_deg = servo_yaw.shaft_angle_deg;
        r.nozzle_pitch_deg = nozzle.pitch_deg;
        r.nozzle_yaw_deg = nozzle.yaw_deg;
        r.thrust_n = thrust_mag;
        records.push_back(r);
    };

    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * config.dt_s;

        if (k % control_every == 0) {
            double cmd_pitch = 0.0, cmd_yaw = 0.0;
            if (config.mode == ControlMode::pid) {
                const TiltAngles tilt = body_tilt(state.attitude);
                const auto rp = pid_step(config.gains, tilt.pitch_deg, prev_err_pitch,
                                         integ_pitch, config.control_period_s);
                const auto ry = pid_step(config.gains, tilt.yaw_deg, prev_err_yaw, integ_yaw,
                                         config.control_period_s);
                prev_err_pitch = tilt.pitch_deg;
                prev_err_yaw = tilt.yaw_deg;
                integ_pitch = rp.integrator;
                integ_yaw = ry.integrator;
                cmd_pitch = rp.output_deg;
                cmd_yaw = ry.output_deg;
            } else if (config.mode == ControlMode::profile) {
                const CommandStep c = config.profile.at(t);
                cmd_pitch = c.pitch_deg;
                cmd_yaw = c.yaw_deg;
            }
            NozzleDeflection want;
            want.pitch_deg = clamp_abs(cmd_pitch, geom.max_deflection_deg);
            want.yaw_deg = clamp_abs(cmd_yaw, geom.max_deflection_deg);
            const ShaftAngles shafts = nozzle_to_servo(want, geom);
            servo_pitch.commanded_angle_deg = shafts.pitch_deg;
            servo_yaw.commanded_angle_deg = shafts.yaw_deg;
        }

        nozzle = servo_to_nozzle(servo_pitch.shaft_angle_deg, servo_yaw.shaft_angle_deg, geom);
        thrust_mag = thrust_at(curve, t);
        const Vec3 thrust_body = thrust_vector(nozzle, thrust_mag);
        const double mass = mass_at(params.mass_kg, curve, t, params.linear_mass_burn);

        if (k % config.output_every == 0) record_at(t);

        servo_pitch = servo_step(servo_pitch, servo_params, config.dt_s);
        servo_yaw = servo_step(servo_yaw, servo_params, config.dt_s);
        state = rk4_step(state, params, thrust_body, mass, disturbances, t, config.dt_s);
        if (!finite(state))
            throw SimulationError("state became non-finite", k + 1);
    }

    nozzle = servo_to_nozzle(servo_pitch.shaft_angle_deg, servo_yaw.shaft_angle_deg, geom);
    thrust_mag = thrust_at(curve, static_cast<double>(steps) * config.dt_s);
    record_at(static_cast<double>(steps) * config.dt_s);
    return records;
}

}  // namespace tvc

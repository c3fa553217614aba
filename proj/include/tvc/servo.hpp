#pragma once

#include <cmath>
#include <stdexcept>

#include "tvc/math.hpp"
#include "tvc/rng.hpp"
#include "tvc/text.hpp"

// Micro-servo channel model: first-order lag with rate limit and travel
// clamp, PWM pulse mapping, and the tau <-> 95% rise time identities.
//
// Unit conventions: angles in degrees, time constants in milliseconds
// (the units a bench report uses), integration steps in seconds.

namespace tvc {

inline constexpr double kLn20 = 2.99573227355399099;  // ln 20; t95 = tau*ln 20

struct ServoParams {
    double time_constant_ms = 44.5 / kLn20;  // tau of the lag
    double rate_limit_deg_s = 2400.0;        // slew clamp; sized not to bind on bench steps
    double max_travel_deg = 90.0;            // shaft-frame travel clamp
    double steady_bias_mean_deg = 0.02;      // per-trial steady-state offset
    double steady_bias_sigma_deg = 0.1135;
    double tau_jitter_sigma_ms = 2.3 / kLn20;  // rise-time spread mapped back to tau

    void validate() const {
        if (!(time_constant_ms > 0.0))
            throw std::domain_error("servo time_constant_ms must be > 0, got " +
                                    num_str(time_constant_ms));
        if (!(rate_limit_deg_s > 0.0))
            throw std::domain_error("servo rate_limit_deg_s must be > 0, got " +
                                    num_str(rate_limit_deg_s));
        if (!(max_travel_deg > 0.0))
            throw std::domain_error("servo max_travel_deg must be > 0, got " +
                                    num_str(max_travel_deg));
        if (steady_bias_sigma_deg < 0.0)
            throw std::domain_error("servo steady_bias_sigma_deg must be >= 0, got " +
                                    num_str(steady_bias_sigma_deg));
        if (tau_jitter_sigma_ms < 0.0)
            throw std::domain_error("servo tau_jitter_sigma_ms must be >= 0, got " +
                                    num_str(tau_jitter_sigma_ms));
    }
};

// One servo channel. trial_bias/trial_tau are frozen per trial so repeated
// steps stay deterministic; |shaft_angle| <= max_travel after every step.
struct ServoState {
    double shaft_angle_deg = 0.0;
    double commanded_angle_deg = 0.0;
    double trial_bias_deg = 0.0;
    double trial_tau_ms = 44.5 / kLn20;
};

struct PwmConvention {
    double center_pulse_us = 1500.0;
    double slope_us_per_deg = 10.0;
    double min_pulse_us = 500.0;
    double max_pulse_us = 2500.0;
    double quantum_us = 1.0;

    void validate() const {
        if (!(slope_us_per_deg > 0.0))
            throw std::domain_error("pwm slope_us_per_deg must be > 0, got " +
                                    num_str(slope_us_per_deg));
        if (!(quantum_us > 0.0))
            throw std::domain_error("pwm quantum_us must be > 0, got " + num_str(quantum_us));
        if (!(min_pulse_us < center_pulse_us && center_pulse_us < max_pulse_us))
            throw std::domain_error("pwm pulses must satisfy min < center < max, got " +
                                    num_str(min_pulse_us) + " / " + num_str(center_pulse_us) +
                                    " / " + num_str(max_pulse_us));
    }
};

struct PwmPulse {
    double pulse_us = 0.0;
    bool saturated = false;  // the linear map left [min, max] before rounding
};

inline PwmPulse pwm_encode(double angle_deg, const PwmConvention& conv = {}) {
    conv.validate();
    const double raw = conv.center_pulse_us + conv.slope_us_per_deg * angle_deg;
    PwmPulse out;
    out.saturated = raw < conv.min_pulse_us || raw > conv.max_pulse_us;
    double clamped = raw < conv.min_pulse_us ? conv.min_pulse_us
                     : raw > conv.max_pulse_us ? conv.max_pulse_us
                                               : raw;
    double quantized = std::round(clamped / conv.quantum_us) * conv.quantum_us;
    if (quantized < conv.min_pulse_us) quantized = conv.min_pulse_us;
    if (quantized > conv.max_pulse_us) quantized = conv.max_pulse_us;
    out.pulse_us = quantized;
    return out;
}

inline double pwm_decode(double pulse_us, const PwmConvention& conv = {}) {
    conv.validate();
    if (pulse_us < conv.min_pulse_us || pulse_us > conv.max_pulse_us)
        throw std::out_of_range("pwm pulse " + num_str(pulse_us) + " us outside [" +
                                num_str(conv.min_pulse_us) + ", " + num_str(conv.max_pulse_us) +
                                "] us");
    return (pulse_us - conv.center_pulse_us) / conv.slope_us_per_deg;
}

// Advance one step of dt seconds. Exact-exponential relaxation toward the
// biased target (unconditionally stable), then slew clamp, then travel clamp.
inline ServoState servo_step(const ServoState& state, const ServoParams& params, double dt_s) {
    if (!(dt_s > 0.0))
        throw std::domain_error("servo_step dt must be > 0 s, got " + num_str(dt_s));
    const double target = state.commanded_angle_deg + state.trial_bias_deg;
    const double tau_s = state.trial_tau_ms * 1e-3;
    const double decay = std::exp(-dt_s / tau_s);
    double next = target + (state.shaft_angle_deg - target) * decay;
    const double max_delta = params.rate_limit_deg_s * dt_s;
    const double delta = clamp_abs(next - state.shaft_angle_deg, max_delta);
    next = clamp_abs(state.shaft_angle_deg + delta, params.max_travel_deg);
    ServoState out = state;
    out.shaft_angle_deg = next;
    return out;
}

inline double calibrate_time_constant(double t95_ms) {
    if (!(t95_ms > 0.0))
        throw std::domain_error("t95 must be > 0 ms, got " + num_str(t95_ms));
    return t95_ms / kLn20;
}

inline double analytic_rise_time(double tau_ms) {
    if (!(tau_ms > 0.0))
        throw std::domain_error("tau must be > 0 ms, got " + num_str(tau_ms));
    return tau_ms * kLn20;
}

// Freeze one trial's servo realization: tau jitter (clamped away from zero)
// and steady-state bias, drawn in that order from the trial's substream.
inline ServoState draw_trial_servo(const ServoParams& params, TrialRng& rng) {
    ServoState s;
    s.trial_tau_ms = rng.normal(params.time_constant_ms, params.tau_jitter_sigma_ms);
    if (s.trial_tau_ms < 1.0) s.trial_tau_ms = 1.0;
    s.trial_bias_deg = rng.normal(params.steady_bias_mean_deg, params.steady_bias_sigma_deg);
    return s;
}

}  // namespace tvc

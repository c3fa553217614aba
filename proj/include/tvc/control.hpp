#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvc/math.hpp"
#include "tvc/text.hpp"

// Per-axis PID producing nozzle deflection commands, and open-loop step
// profiles for benchtop runs. The PID is a pure step function; callers own
// the integrator and previous-error state.

namespace tvc {

struct PidGains {
    double kp = 4.0;   // deg nozzle per deg error
    double ki = 0.5;   // 1/s
    double kd = 0.8;   // s
    double integrator_limit_deg = 2.0;
    double output_limit_deg = 5.0;  // nozzle authority

    void validate() const {
        if (!(output_limit_deg > 0.0))
            throw std::domain_error("pid output_limit_deg must be > 0, got " +
                                    num_str(output_limit_deg));
        if (integrator_limit_deg < 0.0)
            throw std::domain_error("pid integrator_limit_deg must be >= 0, got " +
                                    num_str(integrator_limit_deg));
    }
};

struct PidResult {
    double output_deg = 0.0;
    double integrator = 0.0;  // deg*s, already clamped
};

// One PID update. Integrator clamps before use (anti-windup); output clamps
// to the authority. Derivative acts on the error difference.
inline PidResult pid_step(const PidGains& gains, double error_deg, double prev_error_deg,
                          double integrator, double dt_s) {
    gains.validate();
    if (!(dt_s > 0.0))
        throw std::domain_error("pid_step dt must be > 0 s, got " + num_str(dt_s));
    PidResult r;
    r.integrator = clamp_abs(integrator + error_deg * dt_s, gains.integrator_limit_deg);
    const double raw = gains.kp * error_deg + gains.ki * r.integrator +
                       gains.kd * (error_deg - prev_error_deg) / dt_s;
    r.output_deg = clamp_abs(raw, gains.output_limit_deg);
    return r;
}

struct CommandStep {
    double time_s = 0.0;
    double pitch_deg = 0.0;
    double yaw_deg = 0.0;
};

// Piecewise-constant command schedule, each entry held until the next.
struct CommandProfile {
    std::vector<CommandStep> steps;  // times strictly increasing

    void validate(double max_deflection_deg) const {
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (i > 0 && !(steps[i].time_s > steps[i - 1].time_s))
                throw std::domain_error("profile times not strictly increasing at step " +
                                        std::to_string(i));
            if (std::abs(steps[i].pitch_deg) > max_deflection_deg ||
                std::abs(steps[i].yaw_deg) > max_deflection_deg)
                throw std::out_of_range("profile step " + std::to_string(i) +
                                        " commands beyond authority " +
                                        num_str(max_deflection_deg) + " deg");
        }
    }

    // Command in effect at time t; neutral before the first step.
    CommandStep at(double t_s) const {
        CommandStep current;
        current.time_s = t_s;
        for (const auto& s : steps) {
            if (s.time_s > t_s) break;
            current.pitch_deg = s.pitch_deg;
            current.yaw_deg = s.yaw_deg;
        }
        return current;
    }
};

// Alternating +amplitude/-amplitude pitch steps, one per half period,
// starting positive: the benchtop trial pattern.
inline CommandProfile step_profile(double amplitude_deg, double period_s, std::size_t cycles,
                                   double max_deflection_deg = 5.0) {
    if (std::abs(amplitude_deg) > max_deflection_deg)
        throw std::out_of_range("step amplitude " + num_str(amplitude_deg) +
                                " deg exceeds authority " + num_str(max_deflection_deg) + " deg");
    if (!(period_s > 0.0))
        throw std::domain_error("step period must be > 0 s, got " + num_str(period_s));
    CommandProfile p;
    p.steps.reserve(cycles);
    for (std::size_t i = 0; i < cycles; ++i) {
        CommandStep s;
        s.time_s = static_cast<double>(i) * 0.5 * period_s;
        s.pitch_deg = (i % 2 == 0) ? amplitude_deg : -amplitude_deg;
        s.yaw_deg = 0.0;
        p.steps.push_back(s);
    }
    return p;
}

}  // namespace tvc

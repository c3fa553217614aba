#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tvc/gimbal.hpp"
#include "tvc/rng.hpp"
#include "tvc/servo.hpp"
#include "tvc/text.hpp"

// Benchtop protocol: alternating-sign nozzle step commands, camera-style
// frame sampling with bounded measurement error, 95%-of-plateau response
// timing with debounce, and batch statistics.
//
// Measurement model: the camera's angle error (uniform half-width, then rounding
// to the reporting grid) contaminates the deflection readout, so steady
// deflection comes from averaging noisy frames over the trial's tail.
// Response timing is threshold detection on the sampled kinematic trace
// referenced to its own plateau, so an amplitude offset does not leak into
// the timing statistic.

namespace tvc {

struct SamplerSpec {
    double frame_rate_hz = 120.0;
    double angle_accuracy_deg = 0.5;      // uniform half-width of frame error
    double reporting_resolution_deg = 0.1;  // measured values land on this grid
    bool interpolate_subframe = true;

    void validate() const {
        if (!(frame_rate_hz > 0.0))
            throw std::domain_error("sampler frame_rate_hz must be > 0, got " +
                                    num_str(frame_rate_hz));
        if (angle_accuracy_deg < 0.0)
            throw std::domain_error("sampler angle_accuracy_deg must be >= 0, got " +
                                    num_str(angle_accuracy_deg));
        if (reporting_resolution_deg < 0.0)
            throw std::domain_error("sampler reporting_resolution_deg must be >= 0, got " +
                                    num_str(reporting_resolution_deg));
    }
};

struct FramePoint {
    double time_s = 0.0;
    double angle_deg = 0.0;
};

struct TrialRecord {
    std::size_t trial_index = 0;      // 1-based, as bench logs number them
    double commanded_deg = 0.0;       // nozzle frame
    double measured_steady_deg = 0.0;
    std::optional<double> response_time_ms;
    bool failed = false;
    std::vector<FramePoint> frames;   // noisy reported frames, time-ordered
};

struct TrialStats {
    double mean_response_ms = 0.0;
    double std_response_ms = 0.0;     // sample, n-1
    double mean_abs_error_deg = 0.0;
    double std_signed_error_deg = 0.0;  // sample, n-1
    std::size_t failure_count = 0;
    std::size_t trials = 0;
    std::size_t timed_trials = 0;
};

struct BenchConfig {
    double amplitude_deg = 5.0;     // nozzle step amplitude, alternating sign
    double duration_s = 0.5;        // per-trial horizon, from rest
    double steady_window_s = 0.2;   // tail window averaged for steady deflection
    double dt_s = 1e-3;             // servo integration step

    void validate() const {
        if (!(amplitude_deg >= 0.0))
            throw std::domain_error("bench amplitude_deg must be >= 0, got " +
                                    num_str(amplitude_deg));
        if (!(duration_s > 0.0))
            throw std::domain_error("bench duration_s must be > 0, got " + num_str(duration_s));
        if (!(steady_window_s > 0.0 && steady_window_s <= duration_s))
            throw std::domain_error("bench steady_window_s must be in (0, duration_s]");
        if (!(dt_s > 0.0))
            throw std::domain_error("bench dt_s must be > 0, got " + num_str(dt_s));
    }
};

// First time the trace reaches 95% of reference and stays beyond it for two
// consecutive frames. Sub-frame linear interpolation is exact for the first
// crossing because the frame before it is strictly inside the threshold.
// Returns nothing when the threshold is never held (distinct from failure).
inline std::optional<double> measure_response_time(const std::vector<FramePoint>& frames,
                                                   double reference_deg,
                                                   bool interpolate_subframe = true) {
    if (frames.size() < 2)
        throw std::invalid_argument("response timing needs at least 2 frames, got " +
                                    std::to_string(frames.size()));
    if (std::abs(reference_deg) < 1e-12) return std::nullopt;
    const double sign = reference_deg > 0.0 ? 1.0 : -1.0;
    const double threshold = 0.95 * std::abs(reference_deg);
    const auto beyond = [&](std::size_t i) { return sign * frames[i].angle_deg >= threshold; };

    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
        if (!beyond(k) || !beyond(k + 1)) continue;
        if (!interpolate_subframe || k == 0) return frames[k].time_s * 1e3;
        const double m0 = sign * frames[k - 1].angle_deg;
        const double m1 = sign * frames[k].angle_deg;
        double frac = (threshold - m0) / (m1 - m0);
        if (!(frac >= 0.0)) frac = 0.0;
        if (!(frac <= 1.0)) frac = 1.0;
        const double t =
            frames[k - 1].time_s + frac * (frames[k].time_s - frames[k - 1].time_s);
        return t * 1e3;
    }
    return std::nullopt;
}

inline bool detect_failure(const TrialRecord& record, double threshold_deg = 1.0) {
    return std::abs(record.measured_steady_deg - record.commanded_deg) > threshold_deg;
}

namespace detail {

inline double snap_to_grid(double value, double resolution) {
    if (resolution <= 0.0) return value;
    return std::round(value / resolution) * resolution;
}

// One trial: fresh servo from rest, step to +-amplitude (odd trials
// positive), kinematic frames at the camera rate, then the reported frames
// with that trial's measurement error. Substream index = trial number, so
// results do not depend on scheduling.
inline TrialRecord run_single_trial(std::size_t trial_index, const ServoParams& servo_params,
                                    const GimbalGeometry& geom, const SamplerSpec& sampler,
                                    const BenchConfig& bench, std::uint64_t seed) {
    TrialRng rng = TrialRng::substream(seed, trial_index);

    TrialRecord rec;
    rec.trial_index = trial_index;
    const double sign = (trial_index % 2 == 1) ? 1.0 : -1.0;
    rec.commanded_deg = sign * bench.amplitude_deg;

    ServoState servo = draw_trial_servo(servo_params, rng);
    servo.commanded_angle_deg = rec.commanded_deg * geom.amplification;

    const double frame_period = 1.0 / sampler.frame_rate_hz;
    const auto frame_count =
        static_cast<std::size_t>(std::floor(bench.duration_s / frame_period + 1e-9)) + 1;

    std::vector<FramePoint> clean;
    clean.reserve(frame_count);

    double t_grid = 0.0;
    std::size_t next_frame = 0;
    while (next_frame < frame_count) {
        const double t_frame = static_cast<double>(next_frame) * frame_period;
        while (t_grid + bench.dt_s <= t_frame + 1e-12) {
            servo = servo_step(servo, servo_params, bench.dt_s);
            t_grid += bench.dt_s;
        }
        ServoState at_frame = servo;
        if (t_frame > t_grid + 1e-12)
            at_frame = servo_step(servo, servo_params, t_frame - t_grid);
        const NozzleDeflection d = servo_to_nozzle(at_frame.shaft_angle_deg, 0.0, geom);
        clean.push_back({t_frame, d.pitch_deg});
        ++next_frame;
    }

    rec.frames.reserve(clean.size());
    for (const auto& f : clean) {
        const double noisy = f.angle_deg + rng.uniform_symmetric(sampler.angle_accuracy_deg);
        rec.frames.push_back({f.time_s, snap_to_grid(noisy, sampler.reporting_resolution_deg)});
    }

    const double steady_start = bench.duration_s - bench.steady_window_s;
    double acc = 0.0;
    std::size_t n_steady = 0;
    for (const auto& f : rec.frames) {
        if (f.time_s + 1e-12 < steady_start) continue;
        acc += f.angle_deg;
        ++n_steady;
    }
    rec.measured_steady_deg =
        n_steady == 0 ? 0.0
                      : snap_to_grid(acc / static_cast<double>(n_steady),
                                     sampler.reporting_resolution_deg);

    rec.response_time_ms =
        measure_response_time(clean, clean.back().angle_deg, sampler.interpolate_subframe);
    rec.failed = detect_failure(rec);
    return rec;
}

}  // namespace detail

inline std::vector<TrialRecord> run_trial_batch(std::size_t n, const ServoParams& servo_params,
                                                const GimbalGeometry& geom,
                                                const SamplerSpec& sampler, std::uint64_t seed,
                                                const BenchConfig& bench = {},
                                                std::size_t workers = 1) {
    if (n < 1) throw std::invalid_argument("trial count must be >= 1");
    servo_params.validate();
    geom.validate();
    sampler.validate();
    bench.validate();

    std::vector<TrialRecord> records(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            records[i] =
                detail::run_single_trial(i + 1, servo_params, geom, sampler, bench, seed);
        return records;
    }

    std::atomic<std::size_t> next{0};
    const std::size_t pool = workers < n ? workers : n;
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t w = 0; w < pool; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                records[i] =
                    detail::run_single_trial(i + 1, servo_params, geom, sampler, bench, seed);
            }
        });
    }
    for (auto& t : threads) t.join();
    return records;
}

inline double mean_of(const std::vector<double>& xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return xs.empty() ? 0.0 : acc / static_cast<double>(xs.size());
}

inline double sample_std_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

inline TrialStats aggregate_stats(const std::vector<TrialRecord>& records) {
    std::vector<double> responses;
    std::vector<double> signed_errors;
    std::vector<double> abs_errors;
    std::size_t failures = 0;
    for (const auto& r : records) {
        if (r.response_time_ms) responses.push_back(*r.response_time_ms);
        const double err = r.measured_steady_deg - r.commanded_deg;
        signed_errors.push_back(err);
        abs_errors.push_back(std::abs(err));
        if (r.failed) ++failures;
    }
    if (responses.size() < 2)
        throw std::invalid_argument("need at least 2 timed trials for statistics, got " +
                                    std::to_string(responses.size()));
    TrialStats s;
    s.mean_response_ms = mean_of(responses);
    s.std_response_ms = sample_std_of(responses);
    s.mean_abs_error_deg = mean_of(abs_errors);
    s.std_signed_error_deg = sample_std_of(signed_errors);
    s.failure_count = failures;
    s.trials = records.size();
    s.timed_trials = responses.size();
    return s;
}

// Servo parameters implied by a trial log: tau and its spread from the
// 95% rise-time identity, steady bias from the signed deflection errors.
struct CalibrationResult {
    double time_constant_ms = 0.0;
    double tau_jitter_sigma_ms = 0.0;
    double bias_mean_deg = 0.0;
    double bias_sigma_deg = 0.0;
};

inline CalibrationResult calibrate_from_stats(const TrialStats& stats) {
    CalibrationResult c;
    c.time_constant_ms = calibrate_time_constant(stats.mean_response_ms);
    c.tau_jitter_sigma_ms = stats.std_response_ms / kLn20;
    c.bias_mean_deg = 0.0;
    c.bias_sigma_deg = stats.std_signed_error_deg;
    return c;
}

inline CalibrationResult calibrate_from_records(const std::vector<TrialRecord>& records) {
    CalibrationResult c = calibrate_from_stats(aggregate_stats(records));
    std::vector<double> signed_errors;
    for (const auto& r : records)
        signed_errors.push_back(r.measured_steady_deg - r.commanded_deg);
    c.bias_mean_deg = mean_of(signed_errors);
    return c;
}

}  // namespace tvc

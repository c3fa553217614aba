#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvc/errors.hpp"
#include "tvc/text.hpp"

// Thrust magnitude vs. time: either a synthetic constant plateau or a curve
// read from RASP .eng text. Curves are immutable once constructed; lookups
// interpolate linearly and report zero after the last sample.

namespace tvc {

struct ThrustSample {
    double time_s = 0.0;
    double thrust_n = 0.0;
};

struct ThrustCurve {
    std::string name;
    double diameter_mm = 0.0;
    double length_mm = 0.0;
    std::string delays = "0";
    double propellant_mass_kg = 0.0;
    double total_mass_kg = 0.0;
    std::string manufacturer;
    std::vector<ThrustSample> samples;  // times strictly increasing, thrusts >= 0

    void validate() const {
        if (samples.empty()) throw std::domain_error("thrust curve has no samples");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (samples[i].thrust_n < 0.0)
                throw std::domain_error("thrust curve sample " + std::to_string(i) +
                                        " has negative thrust " + num_str(samples[i].thrust_n));
            if (i > 0 && !(samples[i].time_s > samples[i - 1].time_s))
                throw std::domain_error("thrust curve times not strictly increasing at sample " +
                                        std::to_string(i));
        }
    }

    double burn_time_s() const { return samples.empty() ? 0.0 : samples.back().time_s; }
};

inline ThrustCurve constant_curve(double thrust_n, double burn_time_s) {
    if (!(burn_time_s > 0.0))
        throw std::domain_error("burn time must be > 0 s, got " + num_str(burn_time_s));
    if (thrust_n < 0.0)
        throw std::domain_error("thrust must be >= 0 N, got " + num_str(thrust_n));
    ThrustCurve c;
    c.name = "constant";
    c.samples = {{0.0, thrust_n}, {burn_time_s, thrust_n}};
    return c;
}

// RASP .eng reader. ';' lines are comments; the first payload line is
// `name diameter(mm) length(mm) delays prop_mass(kg) total_mass(kg) maker`;
// the rest are `time thrust` pairs ending at thrust 0. A (0,0) origin is
// prepended when the first pair starts after t=0, matching common readers.
inline ThrustCurve parse_eng(std::string_view text) {
    ThrustCurve curve;
    bool have_header = false;
    bool have_terminal_zero = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == ';') {
            if (pos > text.size()) break;
            continue;
        }
        auto fields = split_ws(line);
        if (!have_header) {
            if (fields.size() != 7)
                throw ParseError("engine header needs 7 fields "
                                 "(name diameter length delays propellant_mass total_mass "
                                 "manufacturer), got " +
                                     std::to_string(fields.size()),
                                 line_no);
            curve.name = std::string(fields[0]);
            if (!parse_double(fields[1], curve.diameter_mm) || curve.diameter_mm <= 0.0)
                throw ParseError("bad diameter '" + std::string(fields[1]) + "'", line_no);
            if (!parse_double(fields[2], curve.length_mm) || curve.length_mm <= 0.0)
                throw ParseError("bad length '" + std::string(fields[2]) + "'", line_no);
            curve.delays = std::string(fields[3]);
            if (!parse_double(fields[4], curve.propellant_mass_kg) ||
                curve.propellant_mass_kg < 0.0)
                throw ParseError("bad propellant mass '" + std::string(fields[4]) + "'", line_no);
            if (!parse_double(fields[5], curve.total_mass_kg) ||
                curve.total_mass_kg < curve.propellant_mass_kg)
                throw ParseError("bad total mass '" + std::string(fields[5]) + "'", line_no);
            curve.manufacturer = std::string(fields[6]);
            have_header = true;
        } else {
            if (have_terminal_zero)
                throw ParseError("sample after terminal zero-thrust point", line_no);
            if (fields.size() != 2)
                throw ParseError("expected `time thrust` pair, got " +
                                     std::to_string(fields.size()) + " fields",
                                 line_no);
            ThrustSample s;
            if (!parse_double(fields[0], s.time_s) || s.time_s < 0.0)
                throw ParseError("bad sample time '" + std::string(fields[0]) + "'", line_no);
            if (!parse_double(fields[1], s.thrust_n))
                throw ParseError("bad thrust '" + std::string(fields[1]) + "'", line_no);
            if (s.thrust_n < 0.0)
                throw ParseError("negative thrust " + num_str(s.thrust_n), line_no);
            if (!curve.samples.empty() && !(s.time_s > curve.samples.back().time_s))
                throw ParseError("sample times must be strictly increasing; " +
                                     num_str(s.time_s) + " s follows " +
                                     num_str(curve.samples.back().time_s) + " s",
                                 line_no);
            if (curve.samples.empty() && s.time_s > 0.0)
                curve.samples.push_back({0.0, 0.0});  // implicit origin
            curve.samples.push_back(s);
            if (s.thrust_n == 0.0 && !curve.samples.empty() && curve.samples.size() > 1)
                have_terminal_zero = true;
        }
        if (pos > text.size()) break;
    }
    if (!have_header) throw ParseError("no engine header found", line_no);
    if (curve.samples.empty()) throw ParseError("engine file has no thrust samples", line_no);
    if (!have_terminal_zero)
        throw ParseError("engine file does not end at zero thrust", line_no);
    curve.validate();
    return curve;
}

// Byte-stable .eng writer: single spaces, shortest decimal forms. Inverse
// of parse_eng for curves whose first sample is the implicit origin.
inline std::string serialize_eng(const ThrustCurve& curve) {
    curve.validate();
    std::string out;
    out += curve.name + " " + num_str(curve.diameter_mm) + " " + num_str(curve.length_mm) + " " +
           curve.delays + " " + num_str(curve.propellant_mass_kg) + " " +
           num_str(curve.total_mass_kg) + " " + curve.manufacturer + "\n";
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
        if (i == 0 && curve.samples[0].time_s == 0.0 && curve.samples[0].thrust_n == 0.0 &&
            curve.samples.size() > 1)
            continue;  // the implicit origin is not written back
        out += num_str(curve.samples[i].time_s) + " " + num_str(curve.samples[i].thrust_n) + "\n";
    }
    return out;
}

inline double thrust_at(const ThrustCurve& curve, double t_s) {
    if (!(t_s >= 0.0)) throw std::domain_error("time must be >= 0 s, got " + num_str(t_s));
    const auto& s = curve.samples;
    if (s.empty() || t_s > s.back().time_s) return 0.0;
    if (t_s <= s.front().time_s) return s.front().thrust_n;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (t_s <= s[i].time_s) {
            const double t0 = s[i - 1].time_s, t1 = s[i].time_s;
            const double f0 = s[i - 1].thrust_n, f1 = s[i].thrust_n;
            return f0 + (f1 - f0) * (t_s - t0) / (t1 - t0);
        }
    }
    return 0.0;
}

inline double total_impulse(const ThrustCurve& curve) {
    const auto& s = curve.samples;
    double impulse = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
        impulse += 0.5 * (s[i].thrust_n + s[i - 1].thrust_n) * (s[i].time_s - s[i - 1].time_s);
    return impulse;
}

// Vehicle mass at time t when the curve carries propellant mass and linear
// burn is enabled: mass decreases linearly over [0, burn_time].
inline double mass_at(double dry_plus_propellant_kg, const ThrustCurve& curve, double t_s,
                      bool linear_burn) {
    if (!linear_burn || curve.propellant_mass_kg <= 0.0 || curve.burn_time_s() <= 0.0)
        return dry_plus_propellant_kg;
    const double frac = t_s >= curve.burn_time_s() ? 1.0 : t_s / curve.burn_time_s();
    return dry_plus_propellant_kg - curve.propellant_mass_kg * frac;
}

}  // namespace tvc

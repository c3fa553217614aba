#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvc/bench.hpp"
#include "tvc/errors.hpp"
#include "tvc/flight.hpp"
#include "tvc/text.hpp"

// CSV emission and ingestion. All numbers go through locale-free fixed
// formatting so identical runs produce identical bytes.
//
// Trial log schema:   trial,commanded_deg,measured_deg,response_ms,failed
//                     (response_ms empty when the threshold was never held;
//                      '#' lines carry the stats footer and are skipped on read)
// Flight log schema:  t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,wx,wy,wz,
//                     servo_pitch,servo_yaw,nozzle_pitch,nozzle_yaw,thrust

namespace tvc {

inline constexpr const char* kTrialCsvHeader =
    "trial,commanded_deg,measured_deg,response_ms,failed";
inline constexpr const char* kFlightCsvHeader =
    "t,px,py,pz,vx,vy,vz,qw,qx,qy,qz,wx,wy,wz,servo_pitch,servo_yaw,nozzle_pitch,nozzle_yaw,"
    "thrust";

inline std::string write_trial_csv(const std::vector<TrialRecord>& records,
                                   const TrialStats* stats = nullptr) {
    std::string out = std::string(kTrialCsvHeader) + "\n";
    for (const auto& r : records) {
        out += num_str(static_cast<std::uint64_t>(r.trial_index)) + ",";
        out += fixed_str(r.commanded_deg, 4) + ",";
        out += fixed_str(r.measured_steady_deg, 4) + ",";
        if (r.response_time_ms) out += fixed_str(*r.response_time_ms, 3);
        out += ",";
        out += r.failed ? "1" : "0";
        out += "\n";
    }
    if (stats) {
        out += "# trials=" + num_str(static_cast<std::uint64_t>(stats->trials)) +
               " timed=" + num_str(static_cast<std::uint64_t>(stats->timed_trials)) +
               " failures=" + num_str(static_cast<std::uint64_t>(stats->failure_count)) + "\n";
        out += "# mean_response_ms=" + fixed_str(stats->mean_response_ms, 3) + "\n";
        out += "# std_response_ms=" + fixed_str(stats->std_response_ms, 3) + "\n";
        out += "# mean_abs_error_deg=" + fixed_str(stats->mean_abs_error_deg, 4) + "\n";
        out += "# std_signed_error_deg=" + fixed_str(stats->std_signed_error_deg, 4) + "\n";
    }
    return out;
}

// Reads a trial log (frames are not part of the schema and stay empty).
inline std::vector<TrialRecord> parse_trial_csv(std::string_view text) {
    std::vector<TrialRecord> records;
    bool have_header = false;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        const bool last = eol == text.size();
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') {
            if (last) break;
            continue;
        }
        if (!have_header) {
            if (line != kTrialCsvHeader)
                throw ParseError("expected trial CSV header '" + std::string(kTrialCsvHeader) +
                                     "', got '" + std::string(line) + "'",
                                 line_no);
            have_header = true;
            if (last) break;
            continue;
        }
        const auto fields = split_char(line, ',');
        if (fields.size() != 5)
            throw ParseError("expected 5 CSV fields, got " + std::to_string(fields.size()),
                             line_no);
        TrialRecord r;
        std::uint64_t idx = 0;
        if (!parse_u64(trim(fields[0]), idx))
            throw ParseError("bad trial index '" + std::string(fields[0]) + "'", line_no);
        r.trial_index = idx;
        if (!parse_double(trim(fields[1]), r.commanded_deg))
            throw ParseError("bad commanded_deg '" + std::string(fields[1]) + "'", line_no);
        if (!parse_double(trim(fields[2]), r.measured_steady_deg))
            throw ParseError("bad measured_deg '" + std::string(fields[2]) + "'", line_no);
        const std::string_view resp = trim(fields[3]);
        if (!resp.empty()) {
            double ms = 0.0;
            if (!parse_double(resp, ms))
                throw ParseError("bad response_ms '" + std::string(fields[3]) + "'", line_no);
            r.response_time_ms = ms;
        }
        const std::string_view failed = trim(fields[4]);
        if (failed == "1") r.failed = true;
        else if (failed == "0") r.failed = false;
        else
            throw ParseError("bad failed flag '" + std::string(fields[4]) + "' (use 0 or 1)",
                             line_no);
        records.push_back(std::move(r));
        if (last) break;
    }
    if (!have_header) throw ParseError("empty trial CSV", 1);
    return records;
}

inline std::string write_flight_csv(const std::vector<FlightRecord>& records) {
    std::string out = std::string(kFlightCsvHeader) + "\n";
    for (const auto& r : records) {
        out += fixed_str(r.t_s, 4) + ",";
        out += fixed_str(r.state.position.x, 6) + "," + fixed_str(r.state.position.y, 6) + "," +
               fixed_str(r.state.position.z, 6) + ",";
        out += fixed_str(r.state.velocity.x, 6) + "," + fixed_str(r.state.velocity.y, 6) + "," +
               fixed_str(r.state.velocity.z, 6) + ",";
        out += fixed_str(r.state.attitude.w, 9) + "," + fixed_str(r.state.attitude.x, 9) + "," +
               fixed_str(r.state.attitude.y, 9) + "," + fixed_str(r.state.attitude.z, 9) + ",";
        out += fixed_str(r.state.angular_velocity.x, 6) + "," +
               fixed_str(r.state.angular_velocity.y, 6) + "," +
               fixed_str(r.state.angular_velocity.z, 6) + ",";
        out += fixed_str(r.servo_pitch_deg, 4) + "," + fixed_str(r.servo_yaw_deg, 4) + ",";
        out += fixed_str(r.nozzle_pitch_deg, 4) + "," + fixed_str(r.nozzle_yaw_deg, 4) + ",";
        out += fixed_str(r.thrust_n, 4) + "\n";
    }
    return out;
}

}  // namespace tvc

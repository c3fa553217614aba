#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvc {

// Text-input failure (engine files, scenario configs). line is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// File could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(std::string message) : std::runtime_error(std::move(message)) {}
};

// Numerical failure mid-run (non-finite state). step is the integrator step
// index at which the state stopped being finite.
class SimulationError : public std::runtime_error {
public:
    SimulationError(std::string message, std::size_t step)
        : std::runtime_error("step " + std::to_string(step) + ": " + message), step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

}  // namespace tvc

#pragma once

#include <stdexcept>
#include <string>

namespace phx {

/// Invalid parameter set or config file content.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument to an operation (bad dt, empty input, ...).
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A trajectory or tangent matrix became non-finite / degenerate.
struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Not enough data to produce a meaningful estimate.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed file on disk (snapshot, config).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Calibration run produced unusable results (e.g. non-diffusive MSD).
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace phx

#ifndef NTLF_ERRORS_HPP
#define NTLF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ntlf {

/// Requested impedance lies outside what the strip-width validity window
/// can realize. Carries the achievable interval for diagnostics.
class UnreachableImpedanceError : public std::runtime_error {
public:
    UnreachableImpedanceError(double target, double z_min, double z_max)
        : std::runtime_error("target impedance " + std::to_string(target) +
                             " ohm outside achievable range [" + std::to_string(z_min) +
                             ", " + std::to_string(z_max) + "] ohm"),
          target(target), z_min(z_min), z_max(z_max) {}
    double target;
    double z_min;
    double z_max;
};

/// ABCD -> S conversion hit a zero denominator (not reachable for passive
/// lossless lines with positive reference impedance).
class SingularNetworkError : public std::runtime_error {
public:
    explicit SingularNetworkError(const std::string& what) : std::runtime_error(what) {}
};

/// A frequency grid has no sample in a band the evaluation requires.
class InsufficientGridError : public std::runtime_error {
public:
    explicit InsufficientGridError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration document failed to parse or violated an invariant.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ntlf

#endif

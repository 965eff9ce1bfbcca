#ifndef RDSM_ERRORS_HPP
#define RDSM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdsm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// Geometry with a pair distance below the degeneracy threshold; q and its
/// derivatives blow up there, so this is an error rather than a clamp.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// Geodesic integration left the valid region. Carries the failing step.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& msg, int step)
        : Error(msg + " (step " + std::to_string(step) + ")"), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

/// Shooting for the logarithm map did not reach the endpoint tolerance.
/// Carries the best endpoint rmsd achieved.
class ShootingError : public Error {
public:
    ShootingError(const std::string& msg, double best_residual)
        : Error(msg + " (best endpoint rmsd " + std::to_string(best_residual) + " A)"),
          best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

class CheckpointError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

} // namespace rdsm

#endif

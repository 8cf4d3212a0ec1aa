#ifndef INDICATRIX_ERRORS_HPP
#define INDICATRIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace indicatrix {

// Numerical routine could not reach the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// A shape was handed to an engine that does not support it.
class EngineMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A declared invariant failed at runtime (non-monotone map, bad profile, ...).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration (schema violation, unreadable file, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace indicatrix

#endif

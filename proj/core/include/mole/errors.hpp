#pragma once

#include <stdexcept>
#include <string>

namespace mole {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Schema file could not be parsed or violates a structural rule. The
/// message names the offending attribute when one is known.
class SchemaError : public Error {
public:
    SchemaError(const std::string& attribute, const std::string& what)
        : Error(attribute.empty() ? what : "attribute '" + attribute + "': " + what),
          attribute_(attribute) {}

    const std::string& attribute() const { return attribute_; }

private:
    std::string attribute_;
};

/// Raw model output could not be repaired into a JSON object.
class RepairError : public Error {
public:
    using Error::Error;
};

/// All completion attempts failed. Carries the last failure reason and the
/// number of attempts that were made.
class GatewayError : public Error {
public:
    GatewayError(const std::string& what, int attempts)
        : Error(what), attempts_(attempts) {}

    int attempts() const { return attempts_; }

private:
    int attempts_ = 0;
};

/// Filesystem-level failure (missing file, unreadable directory, ...).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace mole

#pragma once

#include <stdexcept>
#include <string>

namespace ctsim {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario file cannot be parsed or fails validation. Messages are anchored
/// to the offending file location or JSON path.
struct ConfigError : Error {
    using Error::Error;
};

/// Filesystem failure while reading inputs or emitting outputs.
struct IoError : Error {
    using Error::Error;
};

/// Mutation attempted with a token outside the configured authority set.
struct AuthError : Error {
    using Error::Error;
};

/// Operation precondition not met (e.g. tracing an unflagged device).
struct PreconditionError : Error {
    using Error::Error;
};

/// Internal consistency check failed; indicates a wiring bug, not bad input.
struct InvariantError : Error {
    using Error::Error;
};

} // namespace ctsim

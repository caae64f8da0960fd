#pragma once

#include <stdexcept>
#include <string>

namespace skindet {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Caller passed arguments that do not fit together (model/threshold mismatch, bad flag values).
struct UsageError : Error {
    using Error::Error;
};

/// A file could not be opened, read or written.
struct IoError : Error {
    using Error::Error;
};

/// Well-formed input that violates a rule: bad thresholds, grid caps, manifest rows.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace skindet

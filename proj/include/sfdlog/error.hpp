#pragma once

#include <stdexcept>
#include <string>

namespace sfdlog {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input or an unreadable artifact.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A file could not be written or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Structural obstruction: a selection condition or cyclicity check failed.
class ObstructionError : public Error {
public:
    using Error::Error;
};

/// A rank condition needed by the linear algebra did not hold.
class RankError : public Error {
public:
    using Error::Error;
};

/// Search or retry budget exhausted.
class ExhaustedError : public Error {
public:
    using Error::Error;
};

} // namespace sfdlog

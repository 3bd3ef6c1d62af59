#pragma once

#include <stdexcept>
#include <string>

namespace simdist {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A compression backend failed or produced unusable output.
class CompressorError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid file content (matrix, snapshot, tree formats).
class FormatError : public Error {
public:
    using Error::Error;
};

/// A precondition on an operation's arguments was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace simdist

#pragma once

#include <stdexcept>
#include <string>

namespace satpass {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problems with user-supplied configuration or input files. The CLI maps
/// these to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed content in a structured input (TLE set, stations CSV).
/// Messages carry the offending line or row number.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace satpass

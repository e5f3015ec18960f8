#pragma once

#include <stdexcept>
#include <string>

namespace prid {

// Base for all library errors. Subclasses map to CLI exit codes:
// ConfigError -> 1, DataError -> 2, IoError -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Mask label outside the schema's class range.
class SchemaViolationError : public DataError {
public:
    using DataError::DataError;
};

// Image/mask geometry disagreement.
class DimensionMismatchError : public DataError {
public:
    using DataError::DataError;
};

// Filename does not follow the Market1501 convention.
class FilenameParseError : public DataError {
public:
    explicit FilenameParseError(const std::string& name)
        : DataError("unparseable filename: \"" + name + "\""), raw_name(name) {}
    std::string raw_name;
};

// Every pixel of the merged mask is DISCARD.
class NoForegroundError : public DataError {
public:
    using DataError::DataError;
};

// FeatureVectors produced under different extraction configs.
class DigestMismatchError : public DataError {
public:
    using DataError::DataError;
};

// Wire decode failures, one kind per distinct framing fault.
class WireError : public DataError {
public:
    enum class Kind { BadMagic, UnsupportedVersion, Truncated, LengthMismatch, FieldOverflow };

    WireError(Kind k, const std::string& msg) : DataError(msg), kind(k) {}
    Kind kind;
};

}  // namespace prid

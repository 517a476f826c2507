#pragma once

#include <stdexcept>
#include <string>

namespace rancca {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file: ragged rows, non-numeric cells, missing header.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Timestamps not strictly increasing (duplicates included).
class OrderError : public Error {
public:
    using Error::Error;
};

/// Timestamp intersection of the frames is empty.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// A column has zero variance and cannot be standardized or correlated.
class DegenerateColumnError : public Error {
public:
    using Error::Error;
};

/// Unknown or duplicate KPI / cell name.
class NameError : public Error {
public:
    using Error::Error;
};

/// Cross-variable pairing needs at least two cells.
class SingleFrameError : public Error {
public:
    using Error::Error;
};

/// Fewer rows than columns in one of the blocks.
class UnderdeterminedError : public Error {
public:
    using Error::Error;
};

/// A within-block covariance matrix is numerically singular at ridge = 0.
class SingularCovarianceError : public Error {
public:
    using Error::Error;
};

/// Matrix dimensions do not match the operation's contract.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Canonical pair index out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Filesystem read/write failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Invalid simulation or CLI configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace rancca

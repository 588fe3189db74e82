// Exception types shared across the library. Each carries the exit-code
// category the CLI maps it to: data errors (bad files, bad inputs) exit 2,
// numerical failures exit 3.

#pragma once

#include <stdexcept>
#include <string>

namespace vqt {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const { return 2; }
};

class DataError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

struct DimensionMismatch : DataError { using DataError::DataError; };
struct InvalidWeights : DataError { using DataError::DataError; };
struct InvalidFlux : DataError { using DataError::DataError; };
struct EmptyGroup : DataError { using DataError::DataError; };
struct MissingSetting : DataError { using DataError::DataError; };
struct EmptyDistribution : DataError { using DataError::DataError; };
struct MissingModel : DataError { using DataError::DataError; };
struct LayoutMismatch : DataError { using DataError::DataError; };
struct IndexOutOfRange : DataError { using DataError::DataError; };
struct TooManyQubits : DataError { using DataError::DataError; };
struct IoError : DataError { using DataError::DataError; };
struct ConfigError : DataError { using DataError::DataError; };

struct NotHermitian : NumericError { using NumericError::NumericError; };
struct NoConvergence : NumericError { using NumericError::NumericError; };
struct NotPsd : NumericError { using NumericError::NumericError; };
struct ZeroMatrix : NumericError { using NumericError::NumericError; };
struct RankDeficient : NumericError { using NumericError::NumericError; };

// Parse failures report the offending line.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace vqt

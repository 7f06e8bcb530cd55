#pragma once

#include <stdexcept>
#include <string>

namespace ifra {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files, schema mismatches, violated preconditions on data.
class DataError : public Error {
public:
    using Error::Error;
};

// A computation could not produce a finite, meaningful result.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace ifra

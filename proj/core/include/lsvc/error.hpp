#pragma once

#include <stdexcept>
#include <string>

namespace lsvc {

// Malformed input: bad dimensions, size mismatches, unreadable files,
// inconsistent geometry handed to a codec stage.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bitstream or entropy payload that cannot be parsed.
class StreamError : public DataError {
 public:
  using DataError::DataError;
};

// Internal consistency check failed. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lsvc

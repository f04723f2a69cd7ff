#pragma once

#include <stdexcept>
#include <string>

namespace edm {

// Problems with input data: missing files, malformed CSV, schema or range violations.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied parameter lies outside an operation's precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace edm

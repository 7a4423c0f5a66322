#pragma once

#include <stdexcept>

namespace dvp {

//! Invalid or unreadable configuration (CLI exit code 2).
struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

//! File could not be read or written (CLI exit code 3).
struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

//! An estimator or quadrature produced an unusable result (CLI exit code 4).
struct NumericalError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

} // namespace dvp

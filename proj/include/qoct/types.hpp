#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qoct {

using cplx = std::complex<double>;
using Eigen::ArrayXcd;
using Eigen::ArrayXd;

inline constexpr double speed_of_light = 299792458.0;  // m/s, vacuum

/// Violated engine precondition or physical-model contract.
struct contract_error : std::runtime_error {
  explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent scenario configuration.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while reading inputs or writing outputs.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qoct

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace blr {

// Base class for all toolkit errors. Numerical failures derive from this so
// the CLI can map them to a dedicated exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

class DegenerateDensity : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class NegativeMse : public Error {
 public:
  using Error::Error;
};

class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

class BadInterval : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NonpositiveError : public Error {
 public:
  using Error::Error;
};

class CovarianceNotPD : public Error {
 public:
  using Error::Error;
};

class PointNotInEnsemble : public Error {
 public:
  using Error::Error;
};

}  // namespace blr

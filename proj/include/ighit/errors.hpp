#pragma once

#include <stdexcept>
#include <string>

namespace ighit {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Numerical inverse Laplace transform gave term-count dependent answers.
class NumericalInstability : public Error {
 public:
  using Error::Error;
};

/// A rejection sampler ran past its trial cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ighit

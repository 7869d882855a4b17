#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace suncs {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Basis enumeration would exceed the memory guard.
class SizeOverflowError : public Error {
 public:
  using Error::Error;
};

// A diagonal function was evaluated outside its declared domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class BasisMismatchError : public Error {
 public:
  using Error::Error;
};

// No non-negative integer occupations realise the requested charges.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Coherent-state parameters violate the manifold constraints.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class UnsupportedRepError : public Error {
 public:
  using Error::Error;
};

}  // namespace suncs

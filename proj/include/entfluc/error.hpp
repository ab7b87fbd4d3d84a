#pragma once

#include <stdexcept>
#include <string>

namespace entfluc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested symmetry sector contains no configurations.
class EmptySectorError : public Error {
 public:
  using Error::Error;
};

// A Hamiltonian term maps a sector state outside of its sector.
class SymmetryViolationError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Observable does not commute with the density matrix.
class NotConservedError : public Error {
 public:
  NotConservedError(const std::string& what, double commutator_norm)
      : Error(what), commutator_norm_(commutator_norm) {}
  double commutator_norm() const { return commutator_norm_; }

 private:
  double commutator_norm_;
};

class DegenerateFermiLevelError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace entfluc

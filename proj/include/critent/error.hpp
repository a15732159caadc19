#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace critent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A density-matrix invariant (trace, hermiticity, positivity, dims) failed.
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : Error(invariant + " violated: " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Grid doubling hit its cap before successive estimates agreed.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> last,
                   std::complex<double> previous, std::size_t grid_points)
      : Error(what), last_(last), previous_(previous), grid_points_(grid_points) {}

  std::complex<double> last() const noexcept { return last_; }
  std::complex<double> previous() const noexcept { return previous_; }
  std::size_t grid_points() const noexcept { return grid_points_; }

 private:
  std::complex<double> last_;
  std::complex<double> previous_;
  std::size_t grid_points_;
};

/// Correlation inputs that cannot come from any physical state.
class ModelConsistencyError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace critent

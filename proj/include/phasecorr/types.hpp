#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace phasecorr {

using Complex = std::complex<double>;

/// Logarithm base used by entropy-type quantities.
enum class LogBase { Two, E };

/// Raised when an input violates a precondition (bad weights, wrong mode count, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The odd cat normalization 1/sqrt(2(1-Gamma)) is singular as gamma -> 0.
class DegenerateCatError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operator has weight outside span{|gamma>,|-gamma>} on some mode.
class SupportLeakageError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical failure: indefinite Gram matrix, non-Hermitian residue, invalid covariance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace phasecorr

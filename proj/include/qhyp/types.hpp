#ifndef QHYP_TYPES_HPP
#define QHYP_TYPES_HPP

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace qhyp {

template <class Real>
using Complex = std::complex<Real>;

enum class ErrorCode {
  NonGenericParameter,
  InvalidDegree,
  ReductionMismatch,
  ReductionTooDeep,
  OverflowRisk,
  ZeroLeadingCoefficient,
  NoConvergence,
  DegreeMismatch,
  DegenerateZeros,
  IndexCollision,
  EigenNoConvergence,
  LengthMismatch,
  RepeatedEigenvalue,
  CollisionDetected,
  StepUnderflow,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Integer power by repeated multiplication. Works for any field type with a
/// multiplicative identity constructible from 1 (complex, rational). Negative
/// exponents multiply the reciprocal.
template <class T>
T ipow(const T& x, int k) {
  T result(1);
  if (k >= 0) {
    for (int i = 0; i < k; ++i) result *= x;
  } else {
    const T inv = T(1) / x;
    for (int i = 0; i < -k; ++i) result *= inv;
  }
  return result;
}

template <class T>
constexpr T sign_pow(int k) {
  return (k % 2 == 0) ? T(1) : T(-1);
}

/// Ratio of the working precision to binary64; used to scale tolerances that
/// are stated for double.
template <class Real>
constexpr Real precision_ratio() {
  return std::numeric_limits<Real>::epsilon() / Real(std::numeric_limits<double>::epsilon());
}

}  // namespace qhyp

#endif  // QHYP_TYPES_HPP

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cahs {

using cplx = std::complex<double>;

/// A complex function of one complex variable.
using Evaluator = std::function<cplx(cplx)>;

inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  DegenerateTransform,
  PoleHit,
  BudgetExceeded,
  DivergenceSuspected,
  ArityMismatch,
  NotHyperbolic,
  DuplicateGenerator,
  NotUnimodular,
  ProbeNearZero,
  NearCriticalPoint,
  PoleInTerm,
  InvalidArgument,
  NotInImage,
  AmbiguousRoot,
  NonPositive,
  UnresolvedSingularity,
  AZero,
  IllConditioned,
  NotHermitian,
  PickIndefinite,
  RankCollapse,
  Infeasible,
  ResidualTooLarge,
  LftPole,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace cahs

#pragma once

#include <string_view>

#include "cahs/common.hpp"

namespace cahs {

enum class MoebiusClass { Identity, Hyperbolic, Parabolic, Elliptic };

std::string_view to_string(MoebiusClass c);

/// Disk automorphism z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
///
/// The matrix sign is quotiented out: Re(a) > 0, or Re(a) == 0 and Im(a) > 0.
class MoebiusTransform {
 public:
  /// Identity.
  MoebiusTransform() = default;

  /// Rescales (a, b) to unit determinant and canonicalizes the sign.
  /// Throws DegenerateTransform when |a|^2 - |b|^2 <= 1e-14.
  static MoebiusTransform make(cplx a, cplx b);
  static MoebiusTransform identity() { return {}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }

  cplx apply(cplx z) const;
  cplx derivative(cplx z) const;
  MoebiusTransform compose(const MoebiusTransform& inner) const;
  MoebiusTransform inverse() const;
  MoebiusClass classify() const;

  cplx operator()(cplx z) const { return apply(z); }

  /// Entrywise comparison of the canonical representatives.
  bool approx_equal(const MoebiusTransform& other, double tol = 1e-10) const;

 private:
  MoebiusTransform(cplx a, cplx b) : a_(a), b_(b) {}
  cplx denominator(cplx z) const;

  cplx a_{1.0, 0.0};
  cplx b_{0.0, 0.0};
};

}  // namespace cahs

#include "cahs/moebius.hpp"

#include <cmath>

namespace cahs {

namespace {

constexpr double kDegenerateTol = 1e-14;
constexpr double kPoleTol = 1e-14;
constexpr double kTraceTol = 1e-12;

void canonicalize(cplx& a, cplx& b) {
  if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) {
    a = -a;
    b = -b;
  }
}

}  // namespace

std::string_view to_string(MoebiusClass c) {
  switch (c) {
    case MoebiusClass::Identity: return "identity";
    case MoebiusClass::Hyperbolic: return "hyperbolic";
    case MoebiusClass::Parabolic: return "parabolic";
    case MoebiusClass::Elliptic: return "elliptic";
  }
  return "unknown";
}

MoebiusTransform MoebiusTransform::make(cplx a, cplx b) {
  const double det = std::norm(a) - std::norm(b);
  if (!(det > kDegenerateTol)) {
    throw Error(ErrorKind::DegenerateTransform, "|a|^2 - |b|^2 must be positive");
  }
  const double scale = 1.0 / std::sqrt(det);
  a *= scale;
  b *= scale;
  canonicalize(a, b);
  return {a, b};
}

cplx MoebiusTransform::denominator(cplx z) const {
  const cplx d = std::conj(b_) * z + std::conj(a_);
  if (std::abs(d) < kPoleTol) throw Error(ErrorKind::PoleHit, "Moebius denominator vanishes");
  return d;
}

cplx MoebiusTransform::apply(cplx z) const { return (a_ * z + b_) / denominator(z); }

cplx MoebiusTransform::derivative(cplx z) const {
  const cplx d = denominator(z);
  return 1.0 / (d * d);
}

MoebiusTransform MoebiusTransform::compose(const MoebiusTransform& inner) const {
  // [[a, b], [conj b, conj a]] * [[c, d], [conj d, conj c]]
  const cplx c = inner.a_;
  const cplx d = inner.b_;
  cplx na = a_ * c + b_ * std::conj(d);
  cplx nb = a_ * d + b_ * std::conj(c);
  // Renormalize to suppress drift along long words.
  const double det = std::norm(na) - std::norm(nb);
  const double scale = 1.0 / std::sqrt(det);
  na *= scale;
  nb *= scale;
  canonicalize(na, nb);
  return {na, nb};
}

MoebiusTransform MoebiusTransform::inverse() const {
  cplx na = std::conj(a_);
  cplx nb = -b_;
  canonicalize(na, nb);
  return {na, nb};
}

MoebiusClass MoebiusTransform::classify() const {
  if (std::abs(a_ - 1.0) <= kTraceTol && std::abs(b_) <= kTraceTol) return MoebiusClass::Identity;
  const double trace = std::abs(2.0 * a_.real());
  if (trace > 2.0 + kTraceTol) return MoebiusClass::Hyperbolic;
  if (std::abs(trace - 2.0) <= kTraceTol) return MoebiusClass::Parabolic;
  return MoebiusClass::Elliptic;
}

bool MoebiusTransform::approx_equal(const MoebiusTransform& other, double tol) const {
  return std::abs(a_ - other.a_) <= tol && std::abs(b_ - other.b_) <= tol;
}

}  // namespace cahs

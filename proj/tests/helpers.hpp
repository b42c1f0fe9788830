#pragma once

#include <cmath>
#include <complex>

#include <doctest.h>

#include "cahs/common.hpp"
#include "cahs/moebius.hpp"
#include "cahs/sampling.hpp"

namespace testing {

using cahs::cplx;

inline bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

inline cahs::MoebiusTransform random_transform(cahs::Rng& rng) {
  const double t = rng.uniform(0.1, 2.0);
  const double phi = rng.uniform(0.0, 6.283185307179586);
  const double psi = rng.uniform(0.0, 6.283185307179586);
  return cahs::MoebiusTransform::make(std::polar(std::cosh(t), phi), std::polar(std::sinh(t), psi));
}

}  // namespace testing

#define CHECK_THROWS_KIND(expr, k)                         \
  do {                                                     \
    bool thrown_ = false;                                  \
    try {                                                  \
      (void)(expr);                                        \
    } catch (const cahs::Error& e_) {                      \
      thrown_ = true;                                      \
      CHECK_MESSAGE(e_.kind() == (k), e_.what());          \
    }                                                      \
    CHECK_MESSAGE(thrown_, "expected " #k);                \
  } while (0)

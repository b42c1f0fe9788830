#include "cahs/moebius.hpp"

#include <numbers>

#include "helpers.hpp"

using cahs::cplx;
using cahs::ErrorKind;
using cahs::MoebiusClass;
using cahs::MoebiusTransform;
using testing::near;

namespace {
const double kTanh1 = 0.761594155955765;
const double kSech2_1 = 0.419974341614026;
const MoebiusTransform g = MoebiusTransform::make(std::cosh(1.0), std::sinh(1.0));
}  // namespace

TEST_CASE("normal form") {
  CHECK(MoebiusTransform::make(1.0, 0.0).approx_equal(MoebiusTransform::identity()));
  CHECK(near(g(0.0), kTanh1, 1e-14));
  CHECK(MoebiusTransform::make(2.0 * std::cosh(1.0), 2.0 * std::sinh(1.0)).approx_equal(g));
  // sign of the matrix is quotiented out
  CHECK(MoebiusTransform::make(-std::cosh(1.0), -std::sinh(1.0)).approx_equal(g));
  CHECK(g.a().real() > 0.0);
  CHECK_THROWS_KIND(MoebiusTransform::make(1.0, 1.0), ErrorKind::DegenerateTransform);
  CHECK_THROWS_KIND(MoebiusTransform::make(0.5, 1.0), ErrorKind::DegenerateTransform);
}

TEST_CASE("apply and derivative") {
  CHECK(near(MoebiusTransform::identity()(cplx{0.3, 0.4}), cplx{0.3, 0.4}, 0.0));
  CHECK(near(g(1.0), 1.0, 1e-15));
  CHECK(near(MoebiusTransform::identity().derivative(cplx{0.2, -0.7}), 1.0, 0.0));
  CHECK(near(g.derivative(0.0), kSech2_1, 1e-14));
  CHECK(std::abs(g.inverse().derivative(0.9)) == doctest::Approx(4.24425).epsilon(1e-5));

  cahs::Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto p = testing::random_transform(rng);
    const auto q = testing::random_transform(rng);
    const cplx z = rng.in_disk(0.95);
    const cplx chain = p.derivative(q(z)) * q.derivative(z);
    CHECK(std::abs(p.compose(q).derivative(z) - chain) <= 1e-12 * std::max(1.0, std::abs(chain)));
    CHECK(near(p.inverse()(p(z)), z, 1e-12));
    CHECK(near(p.compose(q)(z), p(q(z)), 1e-12));
    // the disk is preserved
    CHECK(std::abs(p(z)) < 1.0);
  }
}

TEST_CASE("pole of the action") {
  // conj(b) z + conj(a) = 0 at z = -conj(a)/conj(b), outside the closed disk
  const cplx pole = -std::conj(g.a()) / std::conj(g.b());
  CHECK_THROWS_KIND(g(pole), ErrorKind::PoleHit);
}

TEST_CASE("group law") {
  CHECK(g.compose(g.inverse()).approx_equal(MoebiusTransform::identity()));
  CHECK(MoebiusTransform::identity().compose(g).approx_equal(g));
  CHECK(g.compose(g).approx_equal(MoebiusTransform::make(std::cosh(2.0), std::sinh(2.0))));
  CHECK(g.inverse().approx_equal(MoebiusTransform::make(std::cosh(1.0), -std::sinh(1.0))));
  CHECK(MoebiusTransform::identity().inverse().approx_equal(MoebiusTransform::identity()));
}

TEST_CASE("classification") {
  CHECK(MoebiusTransform::identity().classify() == MoebiusClass::Identity);
  CHECK(g.classify() == MoebiusClass::Hyperbolic);
  CHECK(2.0 * g.a().real() == doctest::Approx(3.0862).epsilon(1e-4));
  CHECK(MoebiusTransform::make(std::polar(1.0, std::numbers::pi / 4), 0.0).classify() == MoebiusClass::Elliptic);
  // a = 1 + it, b = it: unit determinant and trace exactly 2
  CHECK(MoebiusTransform::make(cplx{1.0, 0.5}, cplx{0.0, 0.5}).classify() == MoebiusClass::Parabolic);
  CHECK(to_string(MoebiusClass::Hyperbolic) == "hyperbolic");
}

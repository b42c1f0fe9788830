#include "cahs/fuchsian.hpp"

#include <numbers>
#include <sstream>

#include "helpers.hpp"

using namespace cahs;
using testing::near;

namespace {

const double pi = std::numbers::pi;

GroupPresentation cyclic() { return GroupPresentation::cyclic(MoebiusTransform::make(std::cosh(1.0), std::sinh(1.0))); }

GroupPresentation two_generators() {
  return GroupPresentation({MoebiusTransform::make(std::cosh(1.5), std::sinh(1.5)),
                            MoebiusTransform::make(std::cosh(1.5), cplx{0.0, std::sinh(1.5)})});
}

}  // namespace

TEST_CASE("presentation validation") {
  CHECK_THROWS_KIND(GroupPresentation({MoebiusTransform::make(std::polar(1.0, pi / 4), 0.0)}),
                    ErrorKind::NotHyperbolic);
  const auto g = MoebiusTransform::make(std::cosh(1.0), std::sinh(1.0));
  CHECK_THROWS_KIND(GroupPresentation({g, g}), ErrorKind::DuplicateGenerator);
  CHECK_THROWS_KIND(GroupPresentation({g, g.inverse()}), ErrorKind::DuplicateGenerator);
  CHECK(GroupPresentation::trivial().rank() == 0);
}

TEST_CASE("orbit sizes") {
  CHECK(orbit_size(1, 3) == 7);
  CHECK(orbit_size(2, 2) == 17);
  CHECK(orbit_size(3, 0) == 1);
  CHECK(orbit_enumerate(cyclic(), 3).elements.size() == 7);
  CHECK(orbit_enumerate(two_generators(), 2).elements.size() == 17);
  CHECK(orbit_enumerate(two_generators(), 0).elements.size() == 1);
  CHECK(orbit_enumerate(GroupPresentation::trivial(), 5).elements.size() == 1);
  CHECK_THROWS_KIND(orbit_enumerate(two_generators(), 6, 100), ErrorKind::BudgetExceeded);
}

TEST_CASE("orbit order and words") {
  const auto orbit = orbit_enumerate(two_generators(), 2);
  CHECK(orbit.elements[0].is_identity());
  CHECK(orbit.elements[1].to_string() == "g1");
  CHECK(orbit.elements[2].to_string() == "g1^-1");
  CHECK(orbit.elements[3].to_string() == "g2");
  CHECK(orbit.elements[0].to_string() == "e");
  // every element is reduced and its transform is the product of its letters
  for (const auto& w : orbit.elements) {
    for (std::size_t k = 1; k < w.letters.size(); ++k) CHECK_FALSE(w.letters[k].cancels(w.letters[k - 1]));
    CHECK(make_word(two_generators(), w.letters).transform.approx_equal(w.transform));
  }
  const auto g = two_generators();
  const Word a = make_word(g, {{0, 1}, {1, -1}});
  const Word b = make_word(g, {{1, 1}, {0, 1}});
  CHECK(concat(g, a, b).to_string() == "g1*g1");
  CHECK(concat(g, a, b).transform.approx_equal(a.transform.compose(b.transform)));
  CHECK_THROWS_KIND(make_word(g, {{0, 1}, {0, -1}}), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(make_word(g, {{2, 1}}), ErrorKind::ArityMismatch);
}

TEST_CASE("orbit csv") {
  std::ostringstream os;
  write_orbit_csv(os, orbit_enumerate(cyclic(), 10));
  std::size_t lines = 0;
  for (const char c : os.str()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 22);  // header + 21 cyclic words
  CHECK(os.str().rfind("word,re_g0,im_g0,abs_dg0\ne,0,0,1\n", 0) == 0);
}

TEST_CASE("convergence type") {
  const auto trivial = convergence_type_estimate(GroupPresentation::trivial(), 0.5, 4);
  CHECK(trivial.partial_sum == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(trivial.tail_estimate == 0.0);

  const auto est = convergence_type_estimate(cyclic(), 0.0, 10);
  // sum_{k=-10..10} sech^2 k
  CHECK(est.partial_sum == doctest::Approx(2.00408431901696).epsilon(1e-13));
  CHECK(est.tail_estimate <= 1e-7);
  CHECK(est.tail_estimate > 0.0);

  // the orbit sum is invariant under moving z along its orbit, up to truncation
  const cplx z{0.1, 0.2};
  const cplx gz = MoebiusTransform::make(std::cosh(1.0), std::sinh(1.0))(z);
  const auto a = convergence_type_estimate(cyclic(), z, 12);
  const auto b = convergence_type_estimate(cyclic(), gz, 12);
  CHECK(std::abs(a.partial_sum - b.partial_sum) <= 1e-8);

  // short translation lengths in rank 2: shells grow
  const GroupPresentation dense({MoebiusTransform::make(std::cosh(0.3), std::sinh(0.3)),
                                 MoebiusTransform::make(std::cosh(0.3), cplx{0.0, std::sinh(0.3)})});
  CHECK_THROWS_KIND(convergence_type_estimate(dense, 0.0, 5), ErrorKind::DivergenceSuspected);
}

TEST_CASE("shell tail") {
  CHECK(shell_tail({1.0, 0.5}) == doctest::Approx(0.5));
  CHECK(shell_tail({1.0, 1.0}) == doctest::Approx(99.0));  // ratio capped at 0.99
  CHECK(shell_tail({1.0, 0.0}) == 0.0);
}

TEST_CASE("characters") {
  const auto g = cyclic();
  const Character chi({cplx{0.0, 1.0}});
  CHECK(near(char_eval(chi, Word{}), 1.0, 0.0));
  CHECK(near(char_eval(chi, make_word(g, {{0, 1}, {0, 1}, {0, 1}})), cplx{0.0, -1.0}, 1e-15));

  const auto two = two_generators();
  const auto chi2 = Character::from_angles({pi / 3, pi / 7});
  const Word w = make_word(two, {{0, 1}, {1, -1}, {0, 1}});
  CHECK(near(char_eval(chi2, w), std::polar(1.0, 2 * pi / 3 - pi / 7), 1e-14));

  Rng rng(11);
  const auto x = Character::from_angles({rng.uniform(0, 6), rng.uniform(0, 6)});
  const auto one = char_mul(x, char_conj(x));
  for (const auto& v : one.values()) CHECK(near(v, 1.0, 1e-15));
  for (std::size_t k = 0; k < 2; ++k) CHECK(near(char_conj(char_conj(x)).values()[k], x.values()[k], 0.0));
  const auto prod = char_mul(Character({cplx{0.0, 1.0}}), Character::from_angles({pi / 4}));
  CHECK(near(prod.values()[0], std::polar(1.0, 3 * pi / 4), 1e-15));

  CHECK_THROWS_KIND(Character({cplx{2.0, 0.0}}), ErrorKind::NotUnimodular);
  CHECK_THROWS_KIND(char_mul(chi, chi2), ErrorKind::ArityMismatch);
  CHECK_THROWS_KIND(char_eval(chi, w), ErrorKind::ArityMismatch);
}

TEST_CASE("normal fundamental domain") {
  const auto t = in_normal_fundamental_domain(GroupPresentation::trivial(), cplx{0.3, 0.3}, 4);
  CHECK(t.inside);
  CHECK(t.margin == 1.0);

  const auto c0 = in_normal_fundamental_domain(cyclic(), 0.0, 6);
  CHECK(c0.inside);
  CHECK(c0.margin == doctest::Approx(0.580025658385974).epsilon(1e-12));

  const auto c9 = in_normal_fundamental_domain(cyclic(), 0.9, 3);
  CHECK_FALSE(c9.inside);
  CHECK(c9.margin < 0.0);
  CHECK_THROWS_KIND(in_normal_fundamental_domain(cyclic(), 1.0, 3), ErrorKind::InvalidArgument);
}

#include <atomic>
#include <cstdlib>

#include "cahs/fixture.hpp"
#include "cahs/io.hpp"
#include "cahs/parse.hpp"
#include "cahs/sampling.hpp"
#include "helpers.hpp"

using namespace cahs;
using testing::near;

TEST_CASE("doubles and json") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(-0.0) == "0");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::format_double(1e-300) == "1e-300");

  const nlohmann::json j{{"b", 0.25}, {"a", io::to_json(cplx{1.0, -0.5})}, {"n", 3}};
  CHECK(io::dump(j, -1) == R"({"a":[1,-0.5],"b":0.25,"n":3})");
  CHECK(io::dump(nlohmann::json::parse(io::dump(j))) == io::dump(j));
  CHECK(near(io::complex_from_json(nlohmann::json::array({0.5, 2.0})), cplx{0.5, 2.0}, 0.0));
  CHECK(near(io::complex_from_json(nlohmann::json(1.5)), 1.5, 0.0));
  CHECK_THROWS_KIND(io::complex_from_json(nlohmann::json::array({1.0})), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(io::complex_from_json(nlohmann::json::array({"x", 1.0})), ErrorKind::InvalidArgument);

  Eigen::MatrixXcd m(2, 3);
  m << 1.0, cplx{0.0, 2.0}, 3.0, 4.0, 5.0, cplx{6.0, -1.0};
  CHECK(io::matrix_from_json(io::matrix_to_json(m), 2, 3) == m);
  CHECK_THROWS_KIND(io::matrix_from_json(io::matrix_to_json(m), 3, 3), ErrorKind::InvalidArgument);
}

TEST_CASE("rng streams") {
  Rng a(5);
  Rng b(5);
  for (int k = 0; k < 10; ++k) CHECK(a.next() == b.next());
  CHECK(Rng::stream(5, 0).next() != Rng::stream(5, 1).next());
  CHECK(Rng::stream(5, 1).next() == Rng::stream(5, 1).next());
  Rng c(6);
  for (int k = 0; k < 1000; ++k) {
    const double u = c.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(std::abs(c.in_disk(0.3)) <= 0.3);
  }
}

TEST_CASE("sampling grids") {
  const SamplingGrid d = disk_grid(60, 11);
  CHECK(d.points.size() == 60);
  CHECK(d.region == Region::Disk);
  for (const cplx p : d.points) CHECK(std::abs(p) <= 0.95);
  CHECK(disk_grid(60, 11).points == d.points);
  CHECK_NOTHROW(validate(d));

  SamplingGrid dup = d;
  dup.points.push_back(d.points.front());
  CHECK_THROWS_KIND(validate(dup), ErrorKind::InvalidArgument);
  SamplingGrid out = d;
  out.points.push_back(1.5);
  CHECK_THROWS_KIND(validate(out), ErrorKind::InvalidArgument);

  const CoveringMap cov = joukowski_fixture();
  for (const cplx p : omega_plus_grid(cov, 40, 12).points) CHECK(in_omega_plus(cov, p));

  const CertifiedSample s = certified_sample(cov, GroupPresentation::trivial(), 4, 25, 13, 0.3);
  REQUIRE(s.points.points.size() == 25);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(std::abs(s.lambdas.points[i]) <= 0.3);
    CHECK(near(sigma_eval(cov, s.points.points[i]), s.lambdas.points[i], 1e-10));
  }
}

TEST_CASE("parallel_for covers every index") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("parse scalars and groups") {
  CHECK(near(parse::scalar("1.5"), 1.5, 0.0));
  CHECK(near(parse::scalar("cosh1"), std::cosh(1.0), 1e-15));
  CHECK(near(parse::scalar("sinh0.5i"), cplx{0.0, std::sinh(0.5)}, 1e-15));
  CHECK(near(parse::scalar("0.3-2i"), cplx{0.3, -2.0}, 1e-15));
  CHECK_THROWS_KIND(parse::scalar("abc"), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(parse::scalar(""), ErrorKind::InvalidArgument);

  CHECK(parse::generators("").rank() == 0);
  const auto g = parse::generators("cosh1,sinh1;cosh1.5,sinh1.5i");
  CHECK(g.rank() == 2);
  CHECK_THROWS_KIND(parse::generators("cosh1"), ErrorKind::InvalidArgument);

  const auto a = parse::angles("0.5, 1,2");
  REQUIRE(a.size() == 3);
  CHECK(a[1] == 1.0);
}

TEST_CASE("parse polynomials") {
  CHECK(parse::polynomial("z") == std::vector<cplx>{0.0, 1.0});
  CHECK(parse::polynomial("2z") == std::vector<cplx>{0.0, 2.0});
  const auto p = parse::polynomial("0.5*z^2 + 0.1");
  REQUIRE(p.size() == 3);
  CHECK(near(p[0], 0.1, 0.0));
  CHECK(near(p[2], 0.5, 0.0));
  const Evaluator e = parse::polynomial_evaluator(p);
  CHECK(near(e(cplx{0.0, 1.0}), -0.4, 1e-15));
  CHECK_THROWS_KIND(parse::polynomial("z^"), ErrorKind::InvalidArgument);
  CHECK_THROWS_KIND(parse::polynomial("w"), ErrorKind::InvalidArgument);
}

TEST_CASE("fixture suite") {
  const FixtureReport r = run_fixture_suite();
  CHECK(r.pass);
  CHECK(r.first_failure.empty());
  CHECK(r.checks.size() == 8);
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    CHECK(c.metric <= c.threshold);
  }
  CHECK(io::dump(to_json(r)) == io::dump(to_json(run_fixture_suite())));

  FixtureOptions printed;
  printed.normalization = RewriteNormalization::Printed2;
  const FixtureReport p = run_fixture_suite(printed);
  CHECK_FALSE(p.pass);
  CHECK(p.first_failure == "rewrite_consistency");
  const auto j = to_json(p);
  CHECK(j.at("normalization") == "2");
  CHECK(j.at("suite") == "joukowski-szego");
}

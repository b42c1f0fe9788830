#include "cahs/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cahs/io.hpp"

namespace cahs {

namespace {

constexpr std::size_t kDepth = 8;

double worst(double acc, double x) { return std::max(acc, std::isfinite(x) ? x : std::numeric_limits<double>::infinity()); }

Check finish(Check c) {
  c.pass = c.metric <= c.threshold;
  return c;
}

Check failed(Check c, const Error& e) {
  c.pass = false;
  c.metric = std::numeric_limits<double>::infinity();
  c.note = e.what();
  return c;
}

// Random quadratic evaluator p(z) = c0 + c1 z + c2 z^2; c0 real positive when asked.
Evaluator random_quadratic(Rng& rng, bool positive_at_0) {
  const cplx c0 = positive_at_0 ? cplx{rng.uniform(0.5, 1.5), 0.0} : cplx{rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5)};
  const cplx c1 = 0.5 * rng.normal();
  const cplx c2 = 0.5 * rng.normal();
  return [=](cplx z) { return c0 + z * (c1 + z * c2); };
}

cplx random_point(Rng& rng) {
  for (;;) {
    const cplx z = rng.in_disk(0.9);
    if (std::abs(z) >= 0.1) return z;
  }
}

}  // namespace

Fixture make_fixture() {
  GroupPresentation group = GroupPresentation::trivial();
  CoveringMap cov = joukowski_fixture();
  HardyKernel kernel(spectral_oracle_trivial(), GreenFunction(group, 0), cov);
  return {std::move(group), std::move(cov), std::move(kernel)};
}

nlohmann::json to_json(const Check& c) {
  nlohmann::json j{{"name", c.name}, {"pass", c.pass}, {"metric", c.metric}, {"threshold", c.threshold}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Check check_kernel_collapse(const Fixture& f) {
  Check c{"kernel_collapse", false, 0.0, 1e-10, {}};
  std::vector<cplx> pts;
  for (std::size_t k = 0; k < 20; ++k) {
    const double r = 0.05 + 0.85 * static_cast<double>(k) / 19.0;
    const double t = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) * std::numbers::phi;
    pts.push_back(std::polar(r, t));
  }
  try {
    for (const cplx z : pts) {
      for (const cplx w : pts) {
        const cplx szego = 1.0 / (1.0 - z * std::conj(w));
        c.metric = worst(c.metric, std::abs(kernel_structure(f.kernel, z, w) - szego));
      }
    }
  } catch (const Error& e) {
    return failed(c, e);
  }
  return finish(c);
}

Check check_fixture_values(const Fixture& f) {
  Check c{"fixture_values", false, 0.0, 1e-10, {}};
  try {
    const cplx z0{0.0, -0.5};
    const auto [a, b] = ab_functions(f.kernel, z0);
    c.metric = worst(c.metric, std::abs(a - cplx{0.0, 1.5}));
    c.metric = worst(c.metric, std::abs(b - cplx{0.0, 0.5}));
    c.metric = worst(c.metric, std::abs(s_alpha_eval(f.kernel, z0) - 1.0 / 3.0));
    c.metric = worst(c.metric, std::abs(f.cov.zmap(0.5) - 1.25));
    c.metric = worst(c.metric, std::abs(f.cov.zmap(z0) - cplx{0.0, 0.75}));
    c.metric = worst(c.metric, std::abs(sigma_eval(f.cov, z0) - 1.0 / 7.0));
    c.metric = worst(c.metric, std::abs(varsigma_eval(f.cov, f.group, 1.0 / 7.0, kDepth) - z0));
    const MultiplierCandidate shift{Character::trivial(0), [](cplx z) { return z; }, "z"};
    c.metric = worst(c.metric, std::abs(t_function(shift, f.kernel, f.kernel, z0) - z0));
  } catch (const Error& e) {
    return failed(c, e);
  }
  return finish(c);
}

RewriteStats rewrite_stats(const Fixture& f, RewriteNormalization norm, std::size_t injected, std::uint64_t seed) {
  std::vector<HardyKernel> kernels{f.kernel};
  for (std::size_t k = 0; k < injected; ++k) {
    Rng rng = Rng::stream(seed, 200 + k);
    SpectralData spec;
    spec.kappa_alpha = random_quadratic(rng, true);
    spec.kappa_alpha_mu = random_quadratic(rng, false);
    spec.c_alpha = rng.uniform(0.2, 2.0);
    spec.alpha = Character::trivial(0);
    spec.label = "injected-" + std::to_string(k);
    kernels.emplace_back(spec, GreenFunction(f.group, 0), f.cov);
  }
  RewriteStats st{0.0, std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    Rng rng = Rng::stream(seed, 300 + k);
    for (int p = 0; p < 100; ++p) {
      const cplx z = random_point(rng);
      const cplx w = random_point(rng);
      const cplx s = kernel_structure(kernels[k], z, w);
      const cplx r = kernel_rewritten(kernels[k], z, w, norm);
      st.max_abs_diff = worst(st.max_abs_diff, std::abs(r - s));
      if (std::abs(s) > 1e-6) {
        const double q = std::abs(r / s);
        st.ratio_lo = std::min(st.ratio_lo, q);
        st.ratio_hi = std::max(st.ratio_hi, q);
      }
    }
  }
  return st;
}

Check check_rewrite(const Fixture& f, RewriteNormalization norm, std::size_t injected, std::uint64_t seed) {
  Check c{"rewrite_consistency", false, 0.0, 1e-9, {}};
  try {
    const RewriteStats st = rewrite_stats(f, norm, injected, seed);
    c.metric = st.max_abs_diff;
    c.note = "rewritten/structure ratio in [" + io::format_double(st.ratio_lo) + ", " + io::format_double(st.ratio_hi) + "]";
  } catch (const Error& e) {
    return failed(c, e);
  }
  return finish(c);
}

Check check_varsigma(const Fixture& f, std::size_t count, std::uint64_t seed) {
  Check c{"varsigma_inversion", false, 0.0, 1e-10, {}};
  try {
    const CertifiedSample s = certified_sample(f.cov, f.group, kDepth, count, Rng::stream(seed, 400).next(), 0.95);
    for (std::size_t i = 0; i < s.points.points.size(); ++i) {
      c.metric = worst(c.metric, std::abs(sigma_eval(f.cov, s.points.points[i]) - s.lambdas.points[i]));
    }
  } catch (const Error& e) {
    return failed(c, e);
  }
  return finish(c);
}

Check check_schur_extension(const Fixture& f, std::uint64_t seed) {
  Check c{"schur_extension", false, 0.0, 1e-6, {}};
  try {
    const CertifiedSample nodes = certified_sample(f.cov, f.group, kDepth, 40, Rng::stream(seed, 500).next(), 0.3);
    const CertifiedSample held = certified_sample(f.cov, f.group, kDepth, 100, Rng::stream(seed, 501).next(), 0.3);
    std::vector<std::pair<cplx, cplx>> samples;
    for (std::size_t i = 0; i < nodes.points.points.size(); ++i) {
      samples.emplace_back(nodes.lambdas.points[i], s_alpha_eval(f.kernel, nodes.points.points[i]));
    }
    const SchurEvaluator ext = extend_schur_from_samples(samples);
    for (std::size_t i = 0; i < held.points.points.size(); ++i) {
      c.metric = worst(c.metric, std::abs(ext(held.lambdas.points[i]) - s_alpha_eval(f.kernel, held.points.points[i])));
    }
    const double at_seventh = std::abs(ext(1.0 / 7.0) - 1.0 / 3.0);
    c.note = "|S(1/7) - 1/3| = " + io::format_double(at_seventh);
    if (!(at_seventh <= 1e-8)) c.metric = std::numeric_limits<double>::infinity();
  } catch (const Error& e) {
    return failed(c, e);
  }
  return finish(c);
}

Check check_multiplier_detection(const Fixture& f, std::uint64_t seed) {
  Check c{"multiplier_detection", false, 0.0, 1e-10, {}};
  try {
    const MultiplierCandidate shift{Character::trivial(0), [](cplx z) { return z; }, "z"};
    const MultiplierCandidate doubled{Character::trivial(0), [](cplx z) { return 2.0 * z; }, "2z"};
    std::vector<SamplingGrid> grids;
    for (std::uint64_t g = 0; g < 3; ++g) grids.push_back(disk_grid(50, Rng::stream(seed, 600 + g).next()));
    const PsdReport ok = is_schur_multiplier(shift, f.kernel, f.kernel, grids, 1e-8);
    SamplingGrid probe = disk_grid(49, Rng::stream(seed, 610).next());
    probe.points.push_back(0.9);
    const PsdReport bad = is_schur_multiplier(doubled, f.kernel, f.kernel, {probe}, 1e-8);
    const double diag = multiplier_kernel(doubled, f.kernel, f.kernel, 0.9, 0.9).real();
    c.metric = std::max(0.0, -ok.min_eig);
    c.note = "2z: min_eig " + io::format_double(bad.min_eig) + ", K(0.9,0.9) " + io::format_double(diag);
    const bool rejected = bad.min_eig <= -1.0 && std::abs(diag - (1.0 - 4.0 * 0.81) / 0.19) <= 1e-6;
    if (!rejected) c.metric = std::numeric_limits<double>::infinity();
  } catch (const Error& e) {
    return failed(c, e);
  }
  return finish(c);
}

Check check_roundtrip(const Fixture& f, const MultiplierCandidate& s, std::uint64_t seed) {
  Check c{"roundtrip_" + s.label, false, 0.0, 1e-5, {}};
  RoundtripOptions opts;
  opts.seed = seed;
  const RoundtripReport rep = roundtrip_check(s, f.kernel, f.kernel, opts);
  c.metric = std::max(rep.s_residual, rep.s_alpha_residual);
  if (!rep.pass) {
    c.metric = std::numeric_limits<double>::infinity();
    c.note = "failed at " + rep.failed_stage;
  }
  return finish(c);
}

nlohmann::json to_json(const FixtureReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"suite", "joukowski-szego"},
          {"seed", r.seed},
          {"normalization", r.normalization == RewriteNormalization::Sqrt2 ? "sqrt2" : "2"},
          {"pass", r.pass},
          {"first_failure", r.first_failure},
          {"checks", checks}};
}

FixtureReport run_fixture_suite(const FixtureOptions& opts) {
  FixtureReport rep;
  rep.seed = opts.seed;
  rep.normalization = opts.normalization;
  const Fixture f = make_fixture();
  rep.checks.push_back(check_kernel_collapse(f));
  rep.checks.push_back(check_fixture_values(f));
  rep.checks.push_back(check_rewrite(f, opts.normalization, 5, opts.seed));
  rep.checks.push_back(check_varsigma(f, 200, opts.seed));
  rep.checks.push_back(check_schur_extension(f, opts.seed));
  rep.checks.push_back(check_multiplier_detection(f, opts.seed));
  rep.checks.push_back(check_roundtrip(f, {Character::trivial(0), [](cplx z) { return z; }, "z"}, opts.seed));
  rep.checks.push_back(check_roundtrip(f, {Character::trivial(0), [](cplx) { return cplx{0.3, 0.0}; }, "0.3"}, opts.seed));
  rep.pass = true;
  for (const auto& c : rep.checks) {
    if (!c.pass && rep.pass) {
      rep.pass = false;
      rep.first_failure = c.name;
    }
  }
  return rep;
}

}  // namespace cahs

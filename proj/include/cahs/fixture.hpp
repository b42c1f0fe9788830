#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cahs/kernels.hpp"
#include "cahs/multiplier.hpp"
#include "cahs/sampling.hpp"

namespace cahs {

/// Trivial group, Joukowski covering map and Szego spectral data.
struct Fixture {
  GroupPresentation group;
  CoveringMap cov;
  HardyKernel kernel;
};

Fixture make_fixture();

struct Check {
  std::string name;
  bool pass = false;
  double metric = 0.0;
  double threshold = 0.0;
  std::string note;
};

nlohmann::json to_json(const Check& c);

Check check_kernel_collapse(const Fixture& f);
Check check_fixture_values(const Fixture& f);

struct RewriteStats {
  double max_abs_diff = 0.0;
  double ratio_lo = 0.0;  // range of |rewritten / structure|
  double ratio_hi = 0.0;
};

/// 100 random pairs per kernel, on the fixture and on `injected` random spectral data sets.
RewriteStats rewrite_stats(const Fixture& f, RewriteNormalization norm, std::size_t injected, std::uint64_t seed);

/// Metric is the largest |rewritten - structure|; the note carries the ratio range.
Check check_rewrite(const Fixture& f, RewriteNormalization norm, std::size_t injected, std::uint64_t seed);
Check check_varsigma(const Fixture& f, std::size_t count, std::uint64_t seed);
Check check_schur_extension(const Fixture& f, std::uint64_t seed);
Check check_multiplier_detection(const Fixture& f, std::uint64_t seed);
Check check_roundtrip(const Fixture& f, const MultiplierCandidate& s, std::uint64_t seed);

struct FixtureOptions {
  RewriteNormalization normalization = RewriteNormalization::Sqrt2;
  std::uint64_t seed = kDefaultSeed;
};

struct FixtureReport {
  std::vector<Check> checks;
  bool pass = false;
  std::string first_failure;
  std::uint64_t seed = kDefaultSeed;
  RewriteNormalization normalization = RewriteNormalization::Sqrt2;
};

nlohmann::json to_json(const FixtureReport& r);

FixtureReport run_fixture_suite(const FixtureOptions& opts = {});

}  // namespace cahs

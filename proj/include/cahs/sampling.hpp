#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cahs/common.hpp"
#include "cahs/covering.hpp"
#include "cahs/fuchsian.hpp"

namespace cahs {

inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

/// splitmix64 stream. Streams for distinct counters are independent, so adding a
/// grid never perturbs the points of earlier grids.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  static Rng stream(std::uint64_t seed, std::uint64_t counter);

  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in the disk of the given radius.
  cplx in_disk(double radius);
  /// Standard complex normal.
  cplx normal();

 private:
  std::uint64_t state_;
};

enum class Region { Disk, OmegaPlus, OmegaPlusAndF, Delta };

struct SamplingGrid {
  std::vector<cplx> points;
  std::uint64_t seed = kDefaultSeed;
  Region region = Region::Disk;
};

/// Throws InvalidArgument if points coincide (separation < 1e-8) or leave the disk.
void validate(const SamplingGrid& grid);

SamplingGrid disk_grid(std::size_t n, std::uint64_t seed, double radius = 0.95);
SamplingGrid omega_plus_grid(const CoveringMap& cov, std::size_t n, std::uint64_t seed, double radius = 0.95);

/// Points z certified in Omega_+ and the fundamental domain, paired with lambda = sigma(z).
struct CertifiedSample {
  SamplingGrid lambdas;  // region Delta
  SamplingGrid points;   // region OmegaPlusAndF
};

/// Draws lambda uniformly in |lambda| <= lambda_radius and inverts sigma.
CertifiedSample certified_sample(const CoveringMap& cov, const GroupPresentation& group,
                                 std::size_t max_length, std::size_t n, std::uint64_t seed,
                                 double lambda_radius);

/// Runs body(i) for i in [0, n) on the thread count given by CAHS_THREADS (default 1).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cahs

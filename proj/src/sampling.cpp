#include "cahs/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

namespace cahs {

namespace {

constexpr double kMinSeparation = 1e-8;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool far_from_all(const std::vector<cplx>& pts, cplx z) {
  for (const cplx p : pts) {
    if (std::abs(p - z) < kMinSeparation) return false;
  }
  return true;
}

std::size_t thread_count() {
  const char* env = std::getenv("CAHS_THREADS");
  if (env == nullptr) return 1;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<std::size_t>(v) : 1;
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t counter) {
  return Rng(mix(seed ^ mix(counter + 0x9E3779B97F4A7C15ULL)));
}

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

cplx Rng::in_disk(double radius) {
  for (;;) {
    const cplx z{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    if (std::norm(z) < 1.0) return radius * z;
  }
}

cplx Rng::normal() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u = 1.0 - uniform();
  const double v = uniform();
  const double r = std::sqrt(-std::log(u));
  return std::polar(r, 2.0 * std::numbers::pi * v);
}

void validate(const SamplingGrid& grid) {
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (!(std::abs(grid.points[i]) < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "grid point outside the disk");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(grid.points[i] - grid.points[j]) < kMinSeparation) {
        throw Error(ErrorKind::InvalidArgument, "grid points closer than 1e-8");
      }
    }
  }
}

SamplingGrid disk_grid(std::size_t n, std::uint64_t seed, double radius) {
  Rng rng(seed);
  SamplingGrid g{{}, seed, Region::Disk};
  while (g.points.size() < n) {
    const cplx z = rng.in_disk(radius);
    if (far_from_all(g.points, z)) g.points.push_back(z);
  }
  return g;
}

SamplingGrid omega_plus_grid(const CoveringMap& cov, std::size_t n, std::uint64_t seed, double radius) {
  Rng rng(seed);
  SamplingGrid g{{}, seed, Region::OmegaPlus};
  std::size_t attempts = 0;
  while (g.points.size() < n) {
    if (++attempts > 1000 * (n + 1)) throw Error(ErrorKind::InvalidArgument, "Omega_+ sampling stalled");
    const cplx z = rng.in_disk(radius);
    if (std::abs(z) < 1e-6) continue;
    if (in_omega_plus(cov, z) && far_from_all(g.points, z)) g.points.push_back(z);
  }
  return g;
}

CertifiedSample certified_sample(const CoveringMap& cov, const GroupPresentation& group,
                                 std::size_t max_length, std::size_t n, std::uint64_t seed,
                                 double lambda_radius) {
  Rng rng(seed);
  CertifiedSample out;
  out.lambdas = SamplingGrid{{}, seed, Region::Delta};
  out.points = SamplingGrid{{}, seed, Region::OmegaPlusAndF};
  std::size_t attempts = 0;
  while (out.points.points.size() < n) {
    if (++attempts > 100 * (n + 1)) throw Error(ErrorKind::NotInImage, "too few certified preimages");
    const cplx lambda = rng.in_disk(lambda_radius);
    if (!far_from_all(out.lambdas.points, lambda)) continue;
    try {
      const cplx z = varsigma_eval(cov, group, lambda, max_length);
      out.lambdas.points.push_back(lambda);
      out.points.points.push_back(z);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInImage) throw;
    }
  }
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min(thread_count(), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += threads) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cahs

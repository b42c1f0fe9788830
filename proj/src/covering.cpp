#include "cahs/covering.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace cahs {

namespace {

constexpr double kPoleTol = 1e-300;

}  // namespace

void validate(const CoveringMap& cov) {
  if (!cov.zmap || !cov.zmap_deriv) throw Error(ErrorKind::InvalidArgument, "covering map evaluators missing");
  if (!(cov.zb_at_0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "(zmap b)(0) must be positive");
  if (cov.pole_at_zero && std::abs(cov.residue_at_0) == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "a pole at 0 needs a nonzero residue");
  }
}

CoveringMap joukowski_fixture() {
  CoveringMap cov;
  cov.zmap = [](cplx z) { return 0.5 * (z + 1.0 / z); };
  cov.zmap_deriv = [](cplx z) { return 0.5 * (1.0 - 1.0 / (z * z)); };
  cov.zb_at_0 = 0.5;
  cov.residue_at_0 = 0.5;
  cov.pole_at_zero = true;
  // Omega_+ is the lower half disk for this map.
  cov.seeds = SeedBox{-1.0, 1.0, -1.0, 0.0};
  cov.label = "joukowski-arc";
  return cov;
}

bool in_omega_plus(const CoveringMap& cov, cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the disk");
  if (cov.pole_at_zero && std::abs(z) < kPoleTol) throw Error(ErrorKind::PoleHit, "zmap has a pole at 0");
  return cov.zmap(z).imag() > 0.0;
}

cplx sigma_eval(const CoveringMap& cov, cplx z) {
  if (cov.pole_at_zero && std::abs(z) < kPoleTol) return -1.0;
  const cplx t = cov.zmap(z);
  if (!is_finite(t)) return -1.0;
  return (1.0 + kI * t) / (1.0 - kI * t);
}

cplx varsigma_eval(const CoveringMap& cov, const GroupPresentation& group, cplx lambda,
                   std::size_t max_length, const VarsigmaOptions& opts) {
  if (!(std::abs(lambda) < 1.0)) throw Error(ErrorKind::NotInImage, "lambda must lie in the open disk");
  if (std::abs(1.0 + lambda) < 1e-14) throw Error(ErrorKind::NotInImage, "lambda = -1 is the image of the pole");
  // sigma(z) = lambda  <=>  zmap(z) = target
  const cplx target = -kI * (lambda - 1.0) / (lambda + 1.0);
  const auto orbit = orbit_enumerate(group, group.rank() == 0 ? 0 : max_length);

  const auto residual = [&](cplx z) { return cov.zmap(z) - target; };
  const auto certified = [&](cplx z) {
    if (!is_finite(z) || !(std::abs(z) < 1.0)) return false;
    if (cov.pole_at_zero && std::abs(z) < 1e-12) return false;
    if (!(cov.zmap(z).imag() > 0.0)) return false;
    if (!in_normal_fundamental_domain(orbit, z).inside) return false;
    return std::abs(sigma_eval(cov, z) - lambda) <= opts.residual_tol;
  };

  std::optional<cplx> root;
  const double dx = (cov.seeds.re_max - cov.seeds.re_min) / static_cast<double>(opts.grid);
  const double dy = (cov.seeds.im_max - cov.seeds.im_min) / static_cast<double>(opts.grid);
  for (std::size_t j = 0; j < opts.grid; ++j) {
    for (std::size_t i = 0; i < opts.grid; ++i) {
      cplx z{cov.seeds.re_min + (static_cast<double>(i) + 0.5) * dx,
             cov.seeds.im_min + (static_cast<double>(j) + 0.5) * dy};
      if (!(std::abs(z) < 1.0)) continue;
      cplx f = residual(z);
      for (std::size_t it = 0; it < opts.max_iterations && is_finite(f); ++it) {
        const cplx df = cov.zmap_deriv(z);
        if (!is_finite(df) || std::abs(df) == 0.0) break;
        cplx step = -f / df;
        cplx next = z + step;
        cplx fn = residual(next);
        for (int halvings = 0; halvings < 40 && !(std::abs(fn) <= std::abs(f)); ++halvings) {
          step *= 0.5;
          next = z + step;
          fn = residual(next);
        }
        z = next;
        f = fn;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
      }
      if (!certified(z)) continue;
      if (!root) {
        root = z;
      } else if (std::abs(*root - z) > opts.ambiguity_tol) {
        throw Error(ErrorKind::AmbiguousRoot, "two certified preimages of lambda");
      }
    }
  }
  if (!root) throw Error(ErrorKind::NotInImage, "no seed converged to a certified preimage");
  return *root;
}

}  // namespace cahs

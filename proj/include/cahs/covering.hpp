#pragma once

#include <string>

#include "cahs/common.hpp"
#include "cahs/fuchsian.hpp"

namespace cahs {

/// Axis-aligned box used to seed the local inversion of sigma.
struct SeedBox {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
};

/// Evaluator of the universal covering map together with its normalization data.
struct CoveringMap {
  Evaluator zmap;
  Evaluator zmap_deriv;
  /// |(zmap * b)(0)|, the positive normalized value.
  double zb_at_0 = 0.0;
  /// Residue of zmap at its simple pole at 0. Fixes the phase of b through (zmap b)(0) > 0.
  cplx residue_at_0{0.0, 0.0};
  bool pole_at_zero = true;
  SeedBox seeds;
  std::string label;
};

/// Throws InvalidArgument when zb_at_0 is not positive or an evaluator is missing.
void validate(const CoveringMap& cov);

/// zmap(z) = (z + 1/z)/2 for the trivial group, E = [-1, 1].
CoveringMap joukowski_fixture();

/// Im zmap(z) > 0. Throws PoleHit at the pole.
bool in_omega_plus(const CoveringMap& cov, cplx z);

/// (1 + i zmap)/(1 - i zmap); -1 at the pole of zmap.
cplx sigma_eval(const CoveringMap& cov, cplx z);

struct VarsigmaOptions {
  std::size_t grid = 17;
  std::size_t max_iterations = 80;
  double residual_tol = 1e-10;
  double ambiguity_tol = 1e-8;
};

/// The preimage of lambda under sigma inside Omega_+ and the normal fundamental domain,
/// certified at word depth max_length. Throws NotInImage or AmbiguousRoot.
cplx varsigma_eval(const CoveringMap& cov, const GroupPresentation& group, cplx lambda,
                   std::size_t max_length, const VarsigmaOptions& opts = {});

}  // namespace cahs

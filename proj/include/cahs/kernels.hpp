#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cahs/common.hpp"
#include "cahs/covering.hpp"
#include "cahs/fuchsian.hpp"
#include "cahs/green.hpp"

namespace cahs {

/// The evaluators k^alpha(., 0) and k^{alpha mu}(., 0) plus the constant c(alpha).
struct SpectralData {
  Evaluator kappa_alpha;
  Evaluator kappa_alpha_mu;
  double c_alpha = 0.0;
  Character alpha;
  std::string label;
};

/// Throws NonPositive when c(alpha) <= 0 or k^alpha(0,0) is not real positive.
void validate(const SpectralData& spec);

/// (zmap b)(0) / k^{alpha mu}(0, 0). Throws NonPositive.
double c_alpha_compute(const CoveringMap& cov, double kappa_alpha_mu_at_0);

/// Szego data of the trivial group: k = 1, c = 1/2.
SpectralData spectral_oracle_trivial();

enum class RewriteNormalization {
  Sqrt2,    // sqrt(2) A / (1 - i zmap), consistent with the structure formula
  Printed2  // 2 A / (1 - i zmap); kept to demonstrate the factor-2 mismatch
};

/// Kernel machinery for one character: the structure formula, A/B, S_alpha and the
/// de Branges-Rovnyak rewriting. The phase of b is fixed so that (zmap b)(0) > 0.
class HardyKernel {
 public:
  HardyKernel(SpectralData spec, GreenFunction green, CoveringMap cov);

  const SpectralData& spectral() const { return spec_; }
  const GreenFunction& green() const { return green_; }
  const CoveringMap& covering() const { return cov_; }
  /// Unimodular constant multiplying b.
  cplx green_phase() const { return phase_; }

  /// b with the normalized phase.
  cplx b(cplx z) const { return phase_ * green_.eval(z); }
  /// k^{alpha mu}(z, 0) / b(z).
  cplx ratio(cplx z) const;

  cplx structure(cplx z, cplx w) const;
  cplx rewritten(cplx z, cplx w, RewriteNormalization norm = RewriteNormalization::Sqrt2) const;

  /// (A, B); throws PoleHit where the ratio has a pole (e.g. z = 0).
  std::pair<cplx, cplx> ab(cplx z) const;
  /// B/A; throws AZero.
  cplx s_alpha(cplx z) const;
  /// sqrt(2) A(z) / (1 - i zmap(z)), extended across removable points.
  cplx weight(cplx z, RewriteNormalization norm = RewriteNormalization::Sqrt2) const;

 private:
  cplx structure_raw(cplx z, cplx w) const;
  cplx rewritten_raw(cplx z, cplx w, double scale) const;
  cplx weight_raw(cplx z, double scale) const;

  SpectralData spec_;
  GreenFunction green_;
  CoveringMap cov_;
  cplx phase_{1.0, 0.0};
};

cplx kernel_structure(const HardyKernel& k, cplx z, cplx w);
cplx kernel_rewritten(const HardyKernel& k, cplx z, cplx w,
                      RewriteNormalization norm = RewriteNormalization::Sqrt2);
std::pair<cplx, cplx> ab_functions(const HardyKernel& k, cplx z);
cplx s_alpha_eval(const HardyKernel& k, cplx z);

/// Richardson extrapolation of f(z + eps d) to eps = 0 along d = (1+i)/sqrt(2), eps = 1e-4 * 2^-k,
/// k = 0..3, eliminating the linear and quadratic terms; the two estimates must agree to 1e-6.
/// Throws UnresolvedSingularity.
cplx removable_limit(const std::function<cplx(cplx)>& f_of_shift);

struct ProjectedSpectralData {
  SpectralData data;
  double condition_alpha = 0.0;
  double condition_alpha_mu = 0.0;
  Character mu;
};

struct ProjectionOptions {
  std::size_t basis_order = 8;
  std::size_t quadrature = 1024;
  std::size_t max_length = 8;
  double max_condition = 1e10;
};

/// Experimental: orthogonal projection of the Szego kernel at 0 onto Poincare images of
/// monomials. Throws IllConditioned when a Gram matrix condition number exceeds the cap.
ProjectedSpectralData spectral_oracle_projection(const GroupPresentation& group, const Character& alpha,
                                                 const CoveringMap& cov,
                                                 const std::optional<Evaluator>& theta,
                                                 const ProjectionOptions& opts = {});

/// CSV rows (re z, im z, re w, im w, re k, im k) over the product of the point lists.
void write_kernel_csv(std::ostream& out, const HardyKernel& k, const std::vector<cplx>& zs,
                      const std::vector<cplx>& ws);

}  // namespace cahs

#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "cahs/common.hpp"
#include "cahs/fuchsian.hpp"

namespace cahs {

/// Truncated Green's function b_xi: the Blaschke product over the orbit of xi.
///
/// Factors are (a - z)/(1 - conj(a) z) * |a|/a for a = g(xi); a factor with a == 0 is -z.
class GreenFunction {
 public:
  GreenFunction(GroupPresentation group, std::size_t max_length, cplx base_point = 0.0,
                std::optional<Evaluator> theta = std::nullopt);

  const GroupPresentation& group() const { return group_; }
  const OrbitTruncation& truncation() const { return orbit_; }
  cplx base_point() const { return base_; }
  /// Orbit points g_w(xi) in enumeration order.
  const std::vector<cplx>& zeros() const { return zeros_; }
  double tail_bound() const { return tail_bound_; }
  bool has_theta() const { return theta_.has_value(); }
  /// Inner factor of b'; constant 1 when none was injected.
  cplx theta(cplx z) const { return theta_ ? (*theta_)(z) : cplx{1.0, 0.0}; }

  cplx eval(cplx z) const;
  /// Exact derivative of the truncated product.
  cplx derivative(cplx z) const;
  /// b(z)/z with the zero-at-origin factor removed; requires base point 0.
  cplx eval_over_z(cplx z) const;

 private:
  cplx factor(std::size_t k, cplx z) const;
  cplx factor_derivative(std::size_t k, cplx z) const;

  GroupPresentation group_;
  OrbitTruncation orbit_;
  cplx base_;
  std::optional<Evaluator> theta_;
  std::vector<cplx> zeros_;
  std::vector<cplx> phases_;
  std::size_t origin_factor_;  // index of the zero at 0, or npos
  double tail_bound_ = 0.0;
};

inline cplx green_eval(const GreenFunction& g, cplx z) { return g.eval(z); }
inline cplx green_derivative(const GreenFunction& g, cplx z) { return g.derivative(z); }

struct CharacterEstimate {
  cplx value{1.0, 0.0};
  double max_deviation = 0.0;
  std::size_t probes_used = 0;
};

/// Average of b(g_w(z))/b(z) over the probes, projected to the unit circle.
CharacterEstimate green_character(const GreenFunction& g, const Word& w, const std::vector<cplx>& probes);

/// n equispaced probes on the circle of the given radius, offset by half a step.
std::vector<cplx> circle_probes(std::size_t n, double radius);

/// Poincare series projection of h, weighted by conj(alpha) and the inner factor of g.
/// The Green function must be built at base point 0.
cplx poincare_project(const GreenFunction& g, const Character& alpha, const Evaluator& h, cplx z);

/// poincare_project applied to h(z) = z^m for m = 0..count-1, sharing the per-point work.
std::vector<cplx> poincare_project_monomials(const GreenFunction& g, const Character& alpha, cplx z,
                                             std::size_t count);

inline constexpr double kBoundaryRadius = 1.0 - 1e-6;

/// Root mean square of f over Q equispaced points at radius 1 - 1e-6.
double boundary_norm_h2(const Evaluator& f, std::size_t samples);

/// CSV rows (z, b(z), b'(z)) with complex values in paired columns.
void write_green_csv(std::ostream& out, const GreenFunction& g, const std::vector<cplx>& points);

}  // namespace cahs

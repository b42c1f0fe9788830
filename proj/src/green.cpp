#include "cahs/green.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cahs/io.hpp"

namespace cahs {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kZeroPointTol = 1e-14;
constexpr double kProbeFloor = 1e-6;
constexpr double kCriticalTol = 1e-10;
constexpr double kNearOrigin = 1e-8;

}  // namespace

GreenFunction::GreenFunction(GroupPresentation group, std::size_t max_length, cplx base_point,
                             std::optional<Evaluator> theta)
    : group_(std::move(group)),
      orbit_(orbit_enumerate(group_, group_.rank() == 0 ? 0 : max_length)),
      base_(base_point),
      theta_(std::move(theta)),
      origin_factor_(kNone) {
  if (!(std::abs(base_) < 1.0)) throw Error(ErrorKind::InvalidArgument, "base point must lie in the disk");
  zeros_.reserve(orbit_.elements.size());
  phases_.reserve(orbit_.elements.size());
  std::vector<double> shells(orbit_.max_word_length + 1, 0.0);
  for (const auto& w : orbit_.elements) {
    const cplx a = w.transform.apply(base_);
    zeros_.push_back(a);
    if (std::abs(a) < kZeroPointTol) {
      phases_.push_back(1.0);
      origin_factor_ = zeros_.size() - 1;
    } else {
      phases_.push_back(std::abs(a) / a);
    }
    shells[w.length()] += 1.0 - std::abs(a);
  }
  tail_bound_ = group_.rank() == 0 ? 0.0 : shell_tail(shells);
}

cplx GreenFunction::factor(std::size_t k, cplx z) const {
  if (k == origin_factor_) return -z;
  const cplx a = zeros_[k];
  return (a - z) / (1.0 - std::conj(a) * z) * phases_[k];
}

cplx GreenFunction::factor_derivative(std::size_t k, cplx z) const {
  if (k == origin_factor_) return -1.0;
  const cplx a = zeros_[k];
  const cplx d = 1.0 - std::conj(a) * z;
  return phases_[k] * (std::norm(a) - 1.0) / (d * d);
}

cplx GreenFunction::eval(cplx z) const {
  cplx p{1.0, 0.0};
  for (std::size_t k = 0; k < zeros_.size(); ++k) p *= factor(k, z);
  return p;
}

cplx GreenFunction::eval_over_z(cplx z) const {
  if (origin_factor_ == kNone) {
    throw Error(ErrorKind::InvalidArgument, "b(z)/z requires the base point 0");
  }
  cplx p{-1.0, 0.0};
  for (std::size_t k = 0; k < zeros_.size(); ++k) {
    if (k != origin_factor_) p *= factor(k, z);
  }
  return p;
}

cplx GreenFunction::derivative(cplx z) const {
  // Product rule with prefix/suffix products; exact at zeros of individual factors.
  const std::size_t n = zeros_.size();
  std::vector<cplx> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = factor(k, z);
  std::vector<cplx> suffix(n + 1, cplx{1.0, 0.0});
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * values[k];
  cplx prefix{1.0, 0.0};
  cplx total{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    total += prefix * factor_derivative(k, z) * suffix[k + 1];
    prefix *= values[k];
  }
  return total;
}

std::vector<cplx> circle_probes(std::size_t n, double radius) {
  std::vector<cplx> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(std::polar(radius, 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
                                         static_cast<double>(n)));
  }
  return out;
}

CharacterEstimate green_character(const GreenFunction& g, const Word& w, const std::vector<cplx>& probes) {
  std::vector<cplx> ratios;
  for (const cplx z : probes) {
    const cplx bz = g.eval(z);
    if (std::abs(bz) <= kProbeFloor) continue;
    ratios.push_back(g.eval(w.transform.apply(z)) / bz);
  }
  if (ratios.empty()) throw Error(ErrorKind::ProbeNearZero, "every probe sits near a zero of b");
  cplx mean{0.0, 0.0};
  for (const cplx r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  CharacterEstimate out;
  out.value = mean / std::abs(mean);
  out.probes_used = ratios.size();
  for (const cplx r : ratios) out.max_deviation = std::max(out.max_deviation, std::abs(r - out.value));
  return out;
}

cplx poincare_project(const GreenFunction& g, const Character& alpha, const Evaluator& h, cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the disk");
  if (std::abs(g.base_point()) != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "the Poincare projection uses the Green function at 0");
  }
  if (alpha.arity() != g.group().rank()) throw Error(ErrorKind::ArityMismatch, "character arity");
  const cplx db = g.derivative(z);
  if (std::abs(db) <= kCriticalTol) throw Error(ErrorKind::NearCriticalPoint, "|b'(z)| <= 1e-10");

  const bool near_origin = std::abs(z) <= kNearOrigin;
  const cplx bz = near_origin ? cplx{0.0, 0.0} : g.eval(z);
  cplx sum{0.0, 0.0};
  cplx identity_term{0.0, 0.0};
  for (const auto& w : g.truncation().elements) {
    if (w.is_identity()) {
      // theta h / z combined with the prefactor through b(z)/z.
      identity_term = g.eval_over_z(z) / db * g.theta(z) * h(z);
      continue;
    }
    const cplx gz = w.transform.apply(z);
    if (std::abs(gz) < kZeroPointTol) {
      throw Error(ErrorKind::PoleInTerm, "g(z) = 0 for a non-identity word " + w.to_string());
    }
    const cplx weight = std::conj(char_eval(alpha, w));
    sum += weight * g.theta(gz) * h(gz) * w.transform.derivative(z) / gz;
  }
  if (near_origin) {
    // b(z) -> 0 while the remaining terms stay bounded.
    return identity_term + g.eval_over_z(z) * z / db * sum;
  }
  return identity_term + bz / db * sum;
}

std::vector<cplx> poincare_project_monomials(const GreenFunction& g, const Character& alpha, cplx z,
                                             std::size_t count) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the disk");
  if (alpha.arity() != g.group().rank()) throw Error(ErrorKind::ArityMismatch, "character arity");
  const cplx db = g.derivative(z);
  if (std::abs(db) <= kCriticalTol) throw Error(ErrorKind::NearCriticalPoint, "|b'(z)| <= 1e-10");
  const cplx b_over_z = g.eval_over_z(z);
  const cplx prefactor = b_over_z * z / db;

  std::vector<cplx> out(count, cplx{0.0, 0.0});
  for (const auto& w : g.truncation().elements) {
    if (w.is_identity()) {
      cplx term = b_over_z / db * g.theta(z);
      for (std::size_t m = 0; m < count; ++m, term *= z) out[m] += term;
      continue;
    }
    const cplx gz = w.transform.apply(z);
    if (std::abs(gz) < kZeroPointTol) {
      throw Error(ErrorKind::PoleInTerm, "g(z) = 0 for a non-identity word " + w.to_string());
    }
    cplx term = prefactor * std::conj(char_eval(alpha, w)) * g.theta(gz) * w.transform.derivative(z) / gz;
    for (std::size_t m = 0; m < count; ++m, term *= gz) out[m] += term;
  }
  return out;
}

double boundary_norm_h2(const Evaluator& f, std::size_t samples) {
  if (samples < 64 || (samples & (samples - 1)) != 0) {
    throw Error(ErrorKind::InvalidArgument, "sample count must be a power of two >= 64");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
    acc += std::norm(f(std::polar(kBoundaryRadius, t)));
  }
  return std::sqrt(acc / static_cast<double>(samples));
}

void write_green_csv(std::ostream& out, const GreenFunction& g, const std::vector<cplx>& points) {
  out << "re_z,im_z,re_b,im_b,re_db,im_db\n";
  for (const cplx z : points) {
    const cplx b = g.eval(z);
    const cplx db = g.derivative(z);
    out << io::format_double(z.real()) << ',' << io::format_double(z.imag()) << ','
        << io::format_double(b.real()) << ',' << io::format_double(b.imag()) << ','
        << io::format_double(db.real()) << ',' << io::format_double(db.imag()) << '\n';
  }
}

}  // namespace cahs

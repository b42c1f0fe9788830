#include "cahs/kernels.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "cahs/io.hpp"

namespace cahs {

namespace {

constexpr double kSingularTol = 1e-9;
constexpr double kAZeroTol = 1e-12;
constexpr double kRichardsonAgreement = 1e-6;

double scale_of(RewriteNormalization norm) {
  return norm == RewriteNormalization::Sqrt2 ? std::numbers::sqrt2 : 2.0;
}

}  // namespace

void validate(const SpectralData& spec) {
  if (!spec.kappa_alpha || !spec.kappa_alpha_mu) {
    throw Error(ErrorKind::InvalidArgument, "spectral evaluators missing");
  }
  if (!(spec.c_alpha > 0.0)) throw Error(ErrorKind::NonPositive, "c(alpha) must be positive");
  const cplx k00 = spec.kappa_alpha(0.0);
  if (!(k00.real() > 0.0) || std::abs(k00.imag()) > 1e-10 * std::max(1.0, k00.real())) {
    throw Error(ErrorKind::NonPositive, "k^alpha(0,0) must be real and positive");
  }
}

double c_alpha_compute(const CoveringMap& cov, double kappa_alpha_mu_at_0) {
  if (!(kappa_alpha_mu_at_0 > 0.0)) throw Error(ErrorKind::NonPositive, "k^{alpha mu}(0,0) must be positive");
  return cov.zb_at_0 / kappa_alpha_mu_at_0;
}

SpectralData spectral_oracle_trivial() {
  SpectralData s;
  s.kappa_alpha = [](cplx) { return cplx{1.0, 0.0}; };
  s.kappa_alpha_mu = [](cplx) { return cplx{1.0, 0.0}; };
  s.c_alpha = 0.5;
  s.alpha = Character::trivial(0);
  s.label = "szego-fixture";
  return s;
}

cplx removable_limit(const std::function<cplx(cplx)>& f_of_shift) {
  const cplx dir = cplx{1.0, 1.0} / std::numbers::sqrt2;
  const double eps = 1e-4;
  cplx f[4];
  for (int k = 0; k < 4; ++k) f[k] = f_of_shift(std::ldexp(eps, -k) * dir);
  // Second-order Richardson on (eps, eps/2, eps/4) and on (eps/2, eps/4, eps/8).
  const cplx r1 = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  const cplx r2 = (8.0 * f[3] - 6.0 * f[2] + f[1]) / 3.0;
  if (!is_finite(r1) || !is_finite(r2) || std::abs(r1 - r2) > kRichardsonAgreement) {
    throw Error(ErrorKind::UnresolvedSingularity, "extrapolated values disagree");
  }
  return r1;
}

HardyKernel::HardyKernel(SpectralData spec, GreenFunction green, CoveringMap cov)
    : spec_(std::move(spec)), green_(std::move(green)), cov_(std::move(cov)) {
  validate(spec_);
  validate(cov_);
  if (std::abs(green_.base_point()) != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "kernels use the Green function with pole at 0");
  }
  if (!cov_.pole_at_zero) {
    throw Error(ErrorKind::InvalidArgument, "(zmap b)(0) > 0 needs zmap to have a pole at 0");
  }
  // (zmap b)(0) = residue * b'(0); rotate b so that this limit is real positive.
  const cplx raw = cov_.residue_at_0 * green_.derivative(0.0);
  if (std::abs(raw) == 0.0) throw Error(ErrorKind::NonPositive, "(zmap b)(0) vanishes");
  phase_ = std::conj(raw) / std::abs(raw);
}

cplx HardyKernel::ratio(cplx z) const { return spec_.kappa_alpha_mu(z) / b(z); }

cplx HardyKernel::structure_raw(cplx z, cplx w) const {
  const cplx num = ratio(z) * std::conj(spec_.kappa_alpha(w)) - std::conj(ratio(w)) * spec_.kappa_alpha(z);
  const cplx den = cov_.zmap(z) - std::conj(cov_.zmap(w));
  if (!is_finite(den) || std::abs(den) < kSingularTol) return {NAN, NAN};
  return spec_.c_alpha * num / den;
}

cplx HardyKernel::structure(cplx z, cplx w) const {
  const cplx raw = structure_raw(z, w);
  if (is_finite(raw)) return raw;
  return removable_limit([&](cplx d) { return structure_raw(z + d, w + d); });
}

std::pair<cplx, cplx> HardyKernel::ab(cplx z) const {
  const cplx r = ratio(z);
  if (!is_finite(r)) throw Error(ErrorKind::PoleHit, "k^{alpha mu}(z,0)/b(z) has a pole here");
  const cplx k = spec_.kappa_alpha(z);
  const double s = std::sqrt(spec_.c_alpha / 2.0);
  return {s * (r + kI * k), s * (r - kI * k)};
}

cplx HardyKernel::s_alpha(cplx z) const {
  const auto [a, b] = ab(z);
  if (std::abs(a) <= kAZeroTol) throw Error(ErrorKind::AZero, "|A(z)| <= 1e-12");
  return b / a;
}

cplx HardyKernel::weight_raw(cplx z, double scale) const {
  const cplx r = ratio(z);
  const cplx t = cov_.zmap(z);
  if (!is_finite(r) || !is_finite(t)) return {NAN, NAN};
  const cplx a = std::sqrt(spec_.c_alpha / 2.0) * (r + kI * spec_.kappa_alpha(z));
  return scale * a / (1.0 - kI * t);
}

cplx HardyKernel::weight(cplx z, RewriteNormalization norm) const {
  const double scale = scale_of(norm);
  const cplx raw = weight_raw(z, scale);
  if (is_finite(raw)) return raw;
  return removable_limit([&](cplx d) { return weight_raw(z + d, scale); });
}

cplx HardyKernel::rewritten_raw(cplx z, cplx w, double scale) const {
  const cplx rz = ratio(z);
  const cplx rw = ratio(w);
  const cplx tz = cov_.zmap(z);
  const cplx tw = cov_.zmap(w);
  if (!is_finite(rz) || !is_finite(rw) || !is_finite(tz) || !is_finite(tw)) return {NAN, NAN};
  const double s = std::sqrt(spec_.c_alpha / 2.0);
  const cplx az = s * (rz + kI * spec_.kappa_alpha(z));
  const cplx bz = s * (rz - kI * spec_.kappa_alpha(z));
  const cplx aw = s * (rw + kI * spec_.kappa_alpha(w));
  const cplx bw = s * (rw - kI * spec_.kappa_alpha(w));
  if (std::abs(az) <= kAZeroTol || std::abs(aw) <= kAZeroTol) return {NAN, NAN};
  const cplx sz = bz / az;
  const cplx sw = bw / aw;
  const cplx sigz = (1.0 + kI * tz) / (1.0 - kI * tz);
  const cplx sigw = (1.0 + kI * tw) / (1.0 - kI * tw);
  const cplx den = 1.0 - sigz * std::conj(sigw);
  if (std::abs(den) < kSingularTol) return {NAN, NAN};
  const cplx left = scale * az / (1.0 - kI * tz);
  const cplx right = scale * std::conj(aw) / (1.0 + kI * std::conj(tw));
  return left * (1.0 - sz * std::conj(sw)) / den * right;
}

cplx HardyKernel::rewritten(cplx z, cplx w, RewriteNormalization norm) const {
  const double scale = scale_of(norm);
  const cplx raw = rewritten_raw(z, w, scale);
  if (is_finite(raw)) return raw;
  return removable_limit([&](cplx d) { return rewritten_raw(z + d, w + d, scale); });
}

cplx kernel_structure(const HardyKernel& k, cplx z, cplx w) { return k.structure(z, w); }

cplx kernel_rewritten(const HardyKernel& k, cplx z, cplx w, RewriteNormalization norm) {
  return k.rewritten(z, w, norm);
}

std::pair<cplx, cplx> ab_functions(const HardyKernel& k, cplx z) { return k.ab(z); }

cplx s_alpha_eval(const HardyKernel& k, cplx z) { return k.s_alpha(z); }

namespace {

struct ProjectedKernel {
  Eigen::VectorXcd coeffs;
  double condition = 0.0;
};

ProjectedKernel project_szego_at_origin(const GreenFunction& g, const Character& chi,
                                        const ProjectionOptions& opts) {
  const auto m = static_cast<Eigen::Index>(opts.basis_order);
  const auto q = static_cast<Eigen::Index>(opts.quadrature);
  Eigen::MatrixXcd samples(q, m);
  for (Eigen::Index j = 0; j < q; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
    const auto row = poincare_project_monomials(g, chi, std::polar(kBoundaryRadius, t), opts.basis_order);
    for (Eigen::Index k = 0; k < m; ++k) samples(j, k) = row[static_cast<std::size_t>(k)];
  }
  // gram(n, k) = <f_k, f_n> on the circle.
  const Eigen::MatrixXcd gram = samples.adjoint() * samples / static_cast<double>(q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  ProjectedKernel out;
  out.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(out.condition <= opts.max_condition)) {
    throw Error(ErrorKind::IllConditioned, "basis Gram condition number " + io::format_double(out.condition));
  }
  // <k_0, f_n> = conj(f_n(0)).
  const auto at0 = poincare_project_monomials(g, chi, 0.0, opts.basis_order);
  Eigen::VectorXcd rhs(m);
  for (Eigen::Index k = 0; k < m; ++k) rhs(k) = std::conj(at0[static_cast<std::size_t>(k)]);
  out.coeffs = gram.ldlt().solve(rhs);
  return out;
}

Evaluator make_projected_evaluator(const GreenFunction& g, const Character& chi, Eigen::VectorXcd coeffs) {
  return [g, chi, coeffs = std::move(coeffs)](cplx z) {
    const auto values = poincare_project_monomials(g, chi, z, static_cast<std::size_t>(coeffs.size()));
    cplx acc{0.0, 0.0};
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) acc += coeffs(k) * values[static_cast<std::size_t>(k)];
    return acc;
  };
}

}  // namespace

ProjectedSpectralData spectral_oracle_projection(const GroupPresentation& group, const Character& alpha,
                                                 const CoveringMap& cov,
                                                 const std::optional<Evaluator>& theta,
                                                 const ProjectionOptions& opts) {
  if (alpha.arity() != group.rank()) throw Error(ErrorKind::ArityMismatch, "character arity");
  if (opts.basis_order == 0 || opts.quadrature < 64) {
    throw Error(ErrorKind::InvalidArgument, "basis order must be positive and quadrature >= 64");
  }
  GreenFunction g(group, opts.max_length, 0.0, theta);

  // Character of b, estimated per generator.
  std::vector<cplx> mu_values;
  const auto probes = circle_probes(8, 0.3);
  for (std::size_t k = 0; k < group.rank(); ++k) {
    mu_values.push_back(green_character(g, make_word(group, {{k, +1}}), probes).value);
  }
  ProjectedSpectralData out;
  out.mu = Character(std::move(mu_values));
  const Character alpha_mu = char_mul(alpha, out.mu);

  auto pa = project_szego_at_origin(g, alpha, opts);
  auto pm = project_szego_at_origin(g, alpha_mu, opts);
  out.condition_alpha = pa.condition;
  out.condition_alpha_mu = pm.condition;

  out.data.kappa_alpha = make_projected_evaluator(g, alpha, std::move(pa.coeffs));
  out.data.kappa_alpha_mu = make_projected_evaluator(g, alpha_mu, std::move(pm.coeffs));
  out.data.alpha = alpha;
  out.data.label = "projection-experimental";
  const cplx kmu00 = out.data.kappa_alpha_mu(0.0);
  out.data.c_alpha = c_alpha_compute(cov, kmu00.real());
  validate(out.data);
  return out;
}

void write_kernel_csv(std::ostream& out, const HardyKernel& k, const std::vector<cplx>& zs,
                      const std::vector<cplx>& ws) {
  out << "re_z,im_z,re_w,im_w,re_k,im_k\n";
  for (const cplx z : zs) {
    for (const cplx w : ws) {
      const cplx v = k.structure(z, w);
      out << io::format_double(z.real()) << ',' << io::format_double(z.imag()) << ','
          << io::format_double(w.real()) << ',' << io::format_double(w.imag()) << ','
          << io::format_double(v.real()) << ',' << io::format_double(v.imag()) << '\n';
    }
  }
}

}  // namespace cahs

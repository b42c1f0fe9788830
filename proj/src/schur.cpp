#include "cahs/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cahs/io.hpp"

namespace cahs {

namespace {

constexpr double kHermitianTol = 1e-6;
constexpr double kInterpolationTol = 1e-8;
constexpr double kZeroKernel = 1e-14;

// Relative eigenvalue cut-offs tried when factoring the solvability kernel. Rounding in
// the kernel entries makes the numerical rank ambiguous, so the candidate with the
// smallest node residual wins.
constexpr double kRankCuts[] = {1e-8, 1e-9, 1e-10, 1e-11, 1e-12, 1e-13, 1e-14, 1e-15, 1e-16};

Eigen::MatrixXcd pseudo_inverse(const Eigen::MatrixXcd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = 1e-13 * (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXd inv(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) inv(k) = s(k) > cut ? 1.0 / s(k) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Nearest contraction in spectral norm: singular values above 1 are clipped.
Eigen::MatrixXcd clip_to_contraction(const Eigen::MatrixXcd& v) {
  if (v.size() == 0) return v;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  if (s(0) <= 1.0) return v;
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = std::min(s(k), 1.0);
  const Eigen::Index m = s.size();
  return svd.matrixU().leftCols(m) * s.asDiagonal() * svd.matrixV().leftCols(m).adjoint();
}

Realization realize(const std::vector<cplx>& nodes, const Eigen::MatrixXcd& a_rows,
                    const Eigen::MatrixXcd& b_rows, const Eigen::MatrixXcd& factor) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index r = factor.cols();
  const Eigen::Index p = a_rows.cols();
  const Eigen::Index q = b_rows.cols();
  Eigen::MatrixXcd x(r + p, n);
  Eigen::MatrixXcd y(r + q, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx lambda = nodes[static_cast<std::size_t>(i)];
    x.col(i) << lambda * factor.row(i).transpose(), a_rows.row(i).transpose();
    y.col(i) << factor.row(i).transpose(), b_rows.row(i).transpose();
  }
  const Eigen::MatrixXcd v = clip_to_contraction(y * pseudo_inverse(x));
  // v realizes W with b_i^T = W(lambda_i) a_i^T; Sigma = W^T.
  Realization sigma;
  sigma.A = v.topLeftCorner(r, r).transpose();
  sigma.B = v.bottomLeftCorner(q, r).transpose();
  sigma.C = v.topRightCorner(r, p).transpose();
  sigma.D = v.bottomRightCorner(q, p).transpose();
  return sigma;
}

double node_residual(const std::vector<cplx>& nodes, const Eigen::MatrixXcd& a_rows,
                     const Eigen::MatrixXcd& b_rows, const Realization& sigma) {
  double worst = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const Eigen::MatrixXcd diff = a_rows.row(row) * sigma.eval(nodes[i]) - b_rows.row(row);
    const double res = diff.norm();
    worst = std::max(worst, std::isfinite(res) ? res : std::numeric_limits<double>::infinity());
  }
  return worst;
}

}  // namespace

nlohmann::json to_json(const PsdReport& r) {
  return {{"n", r.n}, {"min_eig", r.min_eig}, {"max_eig", r.max_eig}, {"tol", r.tol}, {"pass", r.pass}};
}

PsdReport make_psd_report(const Eigen::MatrixXcd& hermitian, double tol) {
  PsdReport rep;
  rep.n = static_cast<std::size_t>(hermitian.rows());
  rep.tol = tol;
  if (hermitian.rows() == 0) {
    rep.pass = true;
    return rep;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);
  rep.min_eig = eig.eigenvalues().minCoeff();
  rep.max_eig = eig.eigenvalues().maxCoeff();
  rep.pass = rep.min_eig >= -tol * std::max(1.0, rep.max_eig);
  return rep;
}

PsdReport gram_psd_check(const KernelFn& kernel, const SamplingGrid& grid, double tol) {
  const auto n = static_cast<Eigen::Index>(grid.points.size());
  Eigen::MatrixXcd g(n, n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      g(row, j) = kernel(grid.points[i], grid.points[static_cast<std::size_t>(j)]);
    }
  });
  const double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (n > 0 && !(asym <= kHermitianTol)) {
    throw Error(ErrorKind::NotHermitian, "kernel asymmetry " + io::format_double(asym));
  }
  const Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  return make_psd_report(h, tol);
}

Eigen::MatrixXcd Realization::eval(cplx lambda) const {
  if (A.rows() == 0) return D;
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(A.rows(), A.cols()) - lambda * A;
  return D + lambda * C * m.partialPivLu().solve(B);
}

double Realization::colligation_norm() const {
  const Eigen::Index r = A.rows();
  Eigen::MatrixXcd v(r + C.rows(), r + B.cols());
  v.topLeftCorner(r, r) = A;
  v.topRightCorner(r, B.cols()) = B;
  v.bottomLeftCorner(C.rows(), r) = C;
  v.bottomRightCorner(C.rows(), B.cols()) = D;
  if (v.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(v).singularValues()(0);
}

nlohmann::json to_json(const Realization& r) {
  return {{"k", r.state_dim()},
          {"rows", r.D.rows()},
          {"cols", r.D.cols()},
          {"A", io::matrix_to_json(r.A)},
          {"B", io::matrix_to_json(r.B)},
          {"C", io::matrix_to_json(r.C)},
          {"D", io::matrix_to_json(r.D)}};
}

Realization realization_from_json(const nlohmann::json& j) {
  try {
    const auto k = j.at("k").get<Eigen::Index>();
    const auto rows = j.value("rows", Eigen::Index{1});
    const auto cols = j.value("cols", Eigen::Index{1});
    Realization r;
    r.A = io::matrix_from_json(j.at("A"), k, k);
    r.B = io::matrix_from_json(j.at("B"), k, cols);
    r.C = io::matrix_from_json(j.at("C"), rows, k);
    r.D = io::matrix_from_json(j.at("D"), rows, cols);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("realization: ") + e.what());
  }
}

SchurEvaluator::SchurEvaluator(SchurShape shape, MatrixFn fn, std::optional<Realization> realization)
    : shape_(shape), fn_(std::move(fn)), realization_(std::move(realization)) {}

SchurEvaluator SchurEvaluator::from_realization(SchurShape shape, Realization r) {
  auto fn = [r](cplx lambda) { return r.eval(lambda); };
  return SchurEvaluator(shape, std::move(fn), std::move(r));
}

SchurEvaluator SchurEvaluator::scalar(Evaluator f) {
  return SchurEvaluator(SchurShape::Scalar, [f = std::move(f)](cplx lambda) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = f(lambda);
    return m;
  });
}

cplx SchurEvaluator::scalar_value(cplx lambda) const {
  if (shape_ != SchurShape::Scalar) throw Error(ErrorKind::InvalidArgument, "evaluator is matrix valued");
  return fn_(lambda)(0, 0);
}

double sampled_operator_norm(const SchurEvaluator& s, const std::vector<cplx>& points) {
  double worst = 0.0;
  for (const cplx p : points) {
    const Eigen::MatrixXcd v = s.value(p);
    worst = std::max(worst, Eigen::JacobiSVD<Eigen::MatrixXcd>(v).singularValues()(0));
  }
  return worst;
}

cplx dbr_kernel(const Evaluator& s, cplx lambda, cplx mu) {
  return (1.0 - s(lambda) * std::conj(s(mu))) / (1.0 - lambda * std::conj(mu));
}

cplx dbr_kernel(const SchurEvaluator& s, cplx lambda, cplx mu) {
  return (1.0 - s.scalar_value(lambda) * std::conj(s.scalar_value(mu))) / (1.0 - lambda * std::conj(mu));
}

LurkingSolution lurking_isometry(const std::vector<cplx>& nodes, const Eigen::MatrixXcd& a_rows,
                                 const Eigen::MatrixXcd& b_rows, double psd_tol, ErrorKind indefinite) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  if (a_rows.rows() != n || b_rows.rows() != n) {
    throw Error(ErrorKind::ArityMismatch, "row data must have one row per node");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(nodes[static_cast<std::size_t>(i)]) < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "interpolation nodes must lie in the open disk");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)]) < 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "interpolation nodes must be distinct");
      }
    }
  }

  Eigen::MatrixXcd kernel = a_rows * a_rows.adjoint() - b_rows * b_rows.adjoint();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      kernel(i, j) /= 1.0 - nodes[static_cast<std::size_t>(i)] * std::conj(nodes[static_cast<std::size_t>(j)]);
    }
  }
  kernel = 0.5 * (kernel + kernel.adjoint()).eval();

  LurkingSolution out;
  out.solvability = make_psd_report(kernel, psd_tol);
  if (!out.solvability.pass) {
    throw Error(indefinite, "solvability kernel min eigenvalue " + io::format_double(out.solvability.min_eig));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(kernel);
  const Eigen::VectorXd& w = eig.eigenvalues();  // ascending
  const double top = n > 0 ? std::max(w(n - 1), 0.0) : 0.0;

  std::vector<Eigen::Index> ranks;
  if (top <= kZeroKernel) ranks.push_back(0);
  for (const double cut : kRankCuts) {
    if (top <= kZeroKernel) break;
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < n; ++k) r += w(k) > cut * top ? 1 : 0;
    if (std::find(ranks.begin(), ranks.end(), r) == ranks.end()) ranks.push_back(r);
  }

  bool have = false;
  for (const Eigen::Index r : ranks) {
    Eigen::MatrixXcd factor(n, r);
    for (Eigen::Index k = 0; k < r; ++k) {
      factor.col(k) = eig.eigenvectors().col(n - 1 - k) * std::sqrt(w(n - 1 - k));
    }
    Realization sigma = realize(nodes, a_rows, b_rows, factor);
    const double res = node_residual(nodes, a_rows, b_rows, sigma);
    if (!have || res < out.max_node_residual) {
      out.sigma = std::move(sigma);
      out.max_node_residual = res;
      have = true;
    }
  }
  return out;
}

SchurEvaluator extend_schur_from_samples(const std::vector<std::pair<cplx, cplx>>& samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  std::vector<cplx> nodes;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Ones(n, 1);
  Eigen::MatrixXcd b(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    nodes.push_back(samples[static_cast<std::size_t>(i)].first);
    b(i, 0) = samples[static_cast<std::size_t>(i)].second;
  }
  auto sol = lurking_isometry(nodes, a, b, 1e-8, ErrorKind::PickIndefinite);
  if (sol.sigma.state_dim() == 0 && sol.max_node_residual > kInterpolationTol) {
    throw Error(ErrorKind::RankCollapse, "rank-0 Pick data with inconsistent values");
  }
  return SchurEvaluator::from_realization(SchurShape::Scalar, std::move(sol.sigma));
}

cplx DbrCombination::eval(const Evaluator& s, cplx lambda) const {
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * dbr_kernel(s, lambda, nodes[j]);
  return acc;
}

cplx hardy_element(const DbrCombination& f, const Evaluator& s_ext, const HardyKernel& k, cplx z) {
  return k.weight(z) * f.eval(s_ext, sigma_eval(k.covering(), z));
}

IsometryCheck hardy_isometry_check(const DbrCombination& f, const Evaluator& s_ext, const HardyKernel& k,
                                   std::size_t max_length) {
  if (f.coeffs.size() != f.nodes.size()) throw Error(ErrorKind::ArityMismatch, "coefficients vs nodes");
  const std::size_t n = f.nodes.size();
  std::vector<cplx> zs(n);
  std::vector<cplx> weights(n);
  for (std::size_t j = 0; j < n; ++j) {
    zs[j] = varsigma_eval(k.covering(), k.green().group(), f.nodes[j], max_length);
    weights[j] = k.weight(zs[j]);
  }
  cplx lhs{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx cc = std::conj(f.coeffs[i]) * f.coeffs[j];
      lhs += cc * dbr_kernel(s_ext, f.nodes[i], f.nodes[j]);
      rhs += cc * k.structure(zs[i], zs[j]) / (weights[i] * std::conj(weights[j]));
    }
  }
  return {lhs.real(), rhs.real()};
}

}  // namespace cahs

#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cahs/common.hpp"
#include "cahs/kernels.hpp"
#include "cahs/sampling.hpp"

namespace cahs {

struct PsdReport {
  std::size_t n = 0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double tol = 1e-8;
  bool pass = false;
};

nlohmann::json to_json(const PsdReport& r);

/// pass <=> min_eig >= -tol * max(1, max_eig).
PsdReport make_psd_report(const Eigen::MatrixXcd& hermitian, double tol);

using KernelFn = std::function<cplx(cplx, cplx)>;

/// Gram matrix G(i, j) = kernel(p_i, p_j), symmetrized, full spectrum. Throws NotHermitian.
PsdReport gram_psd_check(const KernelFn& kernel, const SamplingGrid& grid, double tol = 1e-8);

/// State-space data of F(lambda) = D + lambda C (I - lambda A)^-1 B.
struct Realization {
  Eigen::MatrixXcd A, B, C, D;

  Eigen::MatrixXcd eval(cplx lambda) const;
  /// Spectral norm of [[A, B], [C, D]].
  double colligation_norm() const;
  std::size_t state_dim() const { return static_cast<std::size_t>(A.rows()); }
};

/// {k, A, B, C, D} with row-major [re, im] entries.
nlohmann::json to_json(const Realization& r);
Realization realization_from_json(const nlohmann::json& j);

enum class SchurShape { Scalar, TwoByTwo };

class SchurEvaluator {
 public:
  using MatrixFn = std::function<Eigen::MatrixXcd(cplx)>;

  SchurEvaluator(SchurShape shape, MatrixFn fn, std::optional<Realization> realization = std::nullopt);
  static SchurEvaluator from_realization(SchurShape shape, Realization r);
  static SchurEvaluator scalar(Evaluator f);

  SchurShape shape() const { return shape_; }
  const std::optional<Realization>& realization() const { return realization_; }

  Eigen::MatrixXcd value(cplx lambda) const { return fn_(lambda); }
  /// Throws InvalidArgument for the 2x2 shape.
  cplx scalar_value(cplx lambda) const;
  cplx operator()(cplx lambda) const { return scalar_value(lambda); }

 private:
  SchurShape shape_;
  MatrixFn fn_;
  std::optional<Realization> realization_;
};

/// Largest operator norm of the evaluator over the given points.
double sampled_operator_norm(const SchurEvaluator& s, const std::vector<cplx>& points);

/// (1 - S(lambda) conj(S(mu))) / (1 - lambda conj(mu)).
cplx dbr_kernel(const SchurEvaluator& s, cplx lambda, cplx mu);
cplx dbr_kernel(const Evaluator& s, cplx lambda, cplx mu);

/// Output of the lurking-isometry solver for rows with B(lambda_j) = A(lambda_j) Sigma(lambda_j).
struct LurkingSolution {
  Realization sigma;  // realization of Sigma itself (p x q)
  double max_node_residual = 0.0;
  PsdReport solvability;
};

/// Solves the finite interpolation problem behind both the Pick extension and Leech
/// factorization: the kernel (A_i A_j^* - B_i B_j^*)/(1 - lambda_i conj(lambda_j)) is
/// factored, the lurking isometry is completed by zero on the orthogonal complement, and
/// the contraction is read off as a realization. `indefinite` is the error raised when the
/// kernel fails the PSD test.
LurkingSolution lurking_isometry(const std::vector<cplx>& nodes, const Eigen::MatrixXcd& a_rows,
                                 const Eigen::MatrixXcd& b_rows, double psd_tol, ErrorKind indefinite);

/// Nevanlinna-Pick extension of (lambda_j, value_j). Throws PickIndefinite or RankCollapse.
SchurEvaluator extend_schur_from_samples(const std::vector<std::pair<cplx, cplx>>& samples);

/// Element f = sum_j c_j K_S(., mu_j) of the de Branges-Rovnyak space.
struct DbrCombination {
  std::vector<cplx> coeffs;
  std::vector<cplx> nodes;

  cplx eval(const Evaluator& s, cplx lambda) const;
};

/// weight(z) f(sigma(z)): the image of f in the character-automorphic Hardy space.
cplx hardy_element(const DbrCombination& f, const Evaluator& s_ext, const HardyKernel& k, cplx z);

struct IsometryCheck {
  double lhs = 0.0;  // norm^2 of f in H(S)
  double rhs = 0.0;  // norm^2 of its image, from the structure formula
};

/// Compares the two Gram forms; nodes are inverted with varsigma at the given depth.
IsometryCheck hardy_isometry_check(const DbrCombination& f, const Evaluator& s_ext, const HardyKernel& k,
                                   std::size_t max_length);

}  // namespace cahs

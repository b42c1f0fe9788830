#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cahs/common.hpp"
#include "cahs/kernels.hpp"
#include "cahs/sampling.hpp"
#include "cahs/schur.hpp"

namespace cahs {

struct MultiplierCandidate {
  Character beta;
  Evaluator eval;
  std::string label;
};

/// k^alpha(z, w) - s(z) conj(s(w)) k^{beta-bar alpha}(z, w).
cplx multiplier_kernel(const MultiplierCandidate& s, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha,
                       cplx z, cplx w);

/// Worst report over all grids (smallest min_eig).
PsdReport is_schur_multiplier(const MultiplierCandidate& s, const HardyKernel& k_alpha,
                              const HardyKernel& k_beta_alpha, const std::vector<SamplingGrid>& grids,
                              double tol = 1e-8);

/// A^{beta-bar alpha}(z) / A^alpha(z) * s(z). Throws AZero.
cplx t_function(const MultiplierCandidate& s, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha, cplx z);

struct RExtension {
  SchurEvaluator r;
  /// Leech solution of the rows (1, v t), (s, v); R = Sigma12 / (1 - t Sigma22).
  LurkingSolution solution;
  /// max_j |R(lambda_j) - T(varsigma(lambda_j))|.
  double max_node_residual = 0.0;
};

/// Extension of T o varsigma from the certified nodes. s_beta_alpha_ext must extend
/// S_{beta-bar alpha} o varsigma. Throws PickIndefinite.
RExtension r_extension(const MultiplierCandidate& s, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha,
                       const SchurEvaluator& s_beta_alpha_ext, const CertifiedSample& nodes);

using Row2 = Eigen::RowVector2cd;

/// A = (1, R S_{beta-bar alpha}), B = (S_alpha, R).
std::pair<Row2, Row2> ab_rows(const SchurEvaluator& s_alpha_ext, const SchurEvaluator& s_beta_alpha_ext,
                              const SchurEvaluator& r, cplx lambda);

struct LeechProblem {
  std::vector<cplx> nodes;
  Eigen::MatrixXcd a_rows;  // n x 2
  Eigen::MatrixXcd b_rows;  // n x 2
};

nlohmann::json to_json(const LeechProblem& p);
LeechProblem leech_problem_from_json(const nlohmann::json& j);

struct LeechResult {
  SchurEvaluator sigma;
  double max_node_residual = 0.0;
  std::size_t worst_node = 0;
  PsdReport solvability;
};

/// Throws Infeasible (kernel not PSD at tol) or ResidualTooLarge (a node missed by > 1e-6).
LeechResult leech_solve(const LeechProblem& problem, double tol = 1e-8);

nlohmann::json to_json(const LeechResult& r);

struct LftValue {
  cplx s_val;
  cplx s_alpha_val;
  double denominator = 0.0;  // |1 - S_{beta-bar alpha}(z) Sigma22(sigma(z))|
};

/// Throws LftPole when the denominator is <= 1e-10.
LftValue lft_multiplier(const SchurEvaluator& sigma, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha,
                        cplx z);

struct RoundtripOptions {
  std::size_t nodes = 40;
  std::size_t test_points = 50;
  double lambda_radius = 0.3;
  std::size_t max_length = 8;
  std::size_t grid_n = 50;
  std::size_t grid_count = 3;
  double tol = 1e-8;
  double accept = 1e-5;
  std::uint64_t seed = kDefaultSeed;
};

struct Stage {
  std::string name;
  bool pass = false;
  double metric = 0.0;
  std::string message;
};

struct RoundtripReport {
  std::string candidate;
  std::vector<Stage> stages;
  double s_residual = 0.0;
  double s_alpha_residual = 0.0;
  double min_denominator = 0.0;
  bool pass = false;
  /// First failing stage, empty on success.
  std::string failed_stage;
};

nlohmann::json to_json(const RoundtripReport& r);

/// Runs multiplier test -> T -> R -> A/B rows -> Leech -> LFT and compares with s and
/// S_alpha on held-out certified points. The kernel test is a diagnostic; the pipeline
/// stops at the first failing construction stage.
RoundtripReport roundtrip_check(const MultiplierCandidate& s, const HardyKernel& k_alpha,
                                const HardyKernel& k_beta_alpha, const RoundtripOptions& opts = {});

}  // namespace cahs

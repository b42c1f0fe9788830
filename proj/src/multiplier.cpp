#include "cahs/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cahs/io.hpp"

namespace cahs {

namespace {

constexpr double kLeechResidualCap = 1e-6;
constexpr double kLftPoleTol = 1e-10;

double finite_or_inf(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::infinity(); }

}  // namespace

cplx multiplier_kernel(const MultiplierCandidate& s, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha,
                       cplx z, cplx w) {
  return kernel_structure(k_alpha, z, w) - s.eval(z) * std::conj(s.eval(w)) * kernel_structure(k_beta_alpha, z, w);
}

PsdReport is_schur_multiplier(const MultiplierCandidate& s, const HardyKernel& k_alpha,
                              const HardyKernel& k_beta_alpha, const std::vector<SamplingGrid>& grids,
                              double tol) {
  PsdReport worst;
  worst.tol = tol;
  worst.pass = true;
  bool first = true;
  const KernelFn kernel = [&](cplx z, cplx w) { return multiplier_kernel(s, k_alpha, k_beta_alpha, z, w); };
  for (const auto& grid : grids) {
    const PsdReport r = gram_psd_check(kernel, grid, tol);
    if (first || r.min_eig < worst.min_eig) {
      worst.min_eig = r.min_eig;
      worst.n = r.n;
    }
    worst.max_eig = first ? r.max_eig : std::max(worst.max_eig, r.max_eig);
    worst.pass = worst.pass && r.pass;
    first = false;
  }
  return worst;
}

cplx t_function(const MultiplierCandidate& s, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha, cplx z) {
  const cplx a = k_alpha.ab(z).first;
  if (std::abs(a) <= 1e-12) throw Error(ErrorKind::AZero, "|A^alpha(z)| <= 1e-12");
  return k_beta_alpha.ab(z).first / a * s.eval(z);
}

RExtension r_extension(const MultiplierCandidate& s, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha,
                       const SchurEvaluator& s_beta_alpha_ext, const CertifiedSample& nodes) {
  const auto& lambdas = nodes.lambdas.points;
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  std::vector<cplx> v(lambdas.size());
  Eigen::MatrixXcd a(n, 2);
  Eigen::MatrixXcd b(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx z = nodes.points.points[static_cast<std::size_t>(i)];
    const cplx vi = t_function(s, k_alpha, k_beta_alpha, z);
    const cplx sa = k_alpha.s_alpha(z);
    const cplx sb = k_beta_alpha.s_alpha(z);
    v[static_cast<std::size_t>(i)] = vi;
    a.row(i) << 1.0, vi * sb;
    b.row(i) << sa, vi;
  }
  RExtension out{SchurEvaluator::scalar([](cplx) { return cplx{}; }),
                 lurking_isometry(lambdas, a, b, 1e-8, ErrorKind::PickIndefinite), 0.0};
  auto real = out.solution.sigma;
  auto tail = s_beta_alpha_ext;
  out.r = SchurEvaluator::scalar([real, tail](cplx lambda) {
    const Eigen::MatrixXcd m = real.eval(lambda);
    return m(0, 1) / (1.0 - tail.scalar_value(lambda) * m(1, 1));
  });
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    out.max_node_residual =
        std::max(out.max_node_residual, finite_or_inf(std::abs(out.r.scalar_value(lambdas[i]) - v[i])));
  }
  return out;
}

std::pair<Row2, Row2> ab_rows(const SchurEvaluator& s_alpha_ext, const SchurEvaluator& s_beta_alpha_ext,
                              const SchurEvaluator& r, cplx lambda) {
  const cplx rv = r.scalar_value(lambda);
  Row2 a;
  Row2 b;
  a << 1.0, rv * s_beta_alpha_ext.scalar_value(lambda);
  b << s_alpha_ext.scalar_value(lambda), rv;
  return {a, b};
}

nlohmann::json to_json(const LeechProblem& p) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const cplx l : p.nodes) nodes.push_back(io::to_json(l));
  return {{"nodes", nodes}, {"A_rows", io::matrix_to_json(p.a_rows)}, {"B_rows", io::matrix_to_json(p.b_rows)}};
}

LeechProblem leech_problem_from_json(const nlohmann::json& j) {
  LeechProblem p;
  try {
    for (const auto& l : j.at("nodes")) p.nodes.push_back(io::complex_from_json(l));
    const auto n = static_cast<Eigen::Index>(p.nodes.size());
    p.a_rows = io::matrix_from_json(j.at("A_rows"), n, 2);
    p.b_rows = io::matrix_from_json(j.at("B_rows"), n, 2);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("Leech problem: ") + e.what());
  }
  return p;
}

LeechResult leech_solve(const LeechProblem& problem, double tol) {
  if (problem.a_rows.cols() != 2 || problem.b_rows.cols() != 2) {
    throw Error(ErrorKind::ArityMismatch, "Leech rows must be 1x2");
  }
  LurkingSolution sol = lurking_isometry(problem.nodes, problem.a_rows, problem.b_rows, tol, ErrorKind::Infeasible);
  LeechResult out{SchurEvaluator::from_realization(SchurShape::TwoByTwo, sol.sigma), 0.0, 0, sol.solvability};
  for (std::size_t i = 0; i < problem.nodes.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const double res = finite_or_inf(
        (problem.a_rows.row(row) * sol.sigma.eval(problem.nodes[i]) - problem.b_rows.row(row)).norm());
    if (res > out.max_node_residual || i == 0) {
      out.max_node_residual = res;
      out.worst_node = i;
    }
  }
  if (out.max_node_residual > kLeechResidualCap) {
    throw Error(ErrorKind::ResidualTooLarge, "node " + std::to_string(out.worst_node) + " residual " +
                                                 io::format_double(out.max_node_residual));
  }
  return out;
}

nlohmann::json to_json(const LeechResult& r) {
  return {{"residual", r.max_node_residual},
          {"worst_node", r.worst_node},
          {"solvability", to_json(r.solvability)},
          {"sigma", to_json(*r.sigma.realization())}};
}

LftValue lft_multiplier(const SchurEvaluator& sigma, const HardyKernel& k_alpha, const HardyKernel& k_beta_alpha,
                        cplx z) {
  const Eigen::MatrixXcd m = sigma.value(sigma_eval(k_alpha.covering(), z));
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::ArityMismatch, "Sigma must be 2x2");
  const cplx t = k_beta_alpha.s_alpha(z);
  const cplx den = 1.0 - t * m(1, 1);
  if (!(std::abs(den) > kLftPoleTol)) throw Error(ErrorKind::LftPole, "|1 - S Sigma22| <= 1e-10");
  const cplx ratio = k_alpha.ab(z).first / k_beta_alpha.ab(z).first;
  LftValue out;
  out.s_val = ratio * m(0, 1) / den;
  out.s_alpha_val = m(0, 0) + m(0, 1) * t * m(1, 0) / den;
  out.denominator = std::abs(den);
  return out;
}

nlohmann::json to_json(const RoundtripReport& r) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.stages) {
    nlohmann::json js{{"name", s.name}, {"pass", s.pass}, {"metric", s.metric}};
    if (!s.message.empty()) js["message"] = s.message;
    stages.push_back(js);
  }
  return {{"candidate", r.candidate},
          {"pass", r.pass},
          {"failed_stage", r.failed_stage},
          {"stages", stages},
          {"residuals", {{"s", r.s_residual}, {"s_alpha", r.s_alpha_residual}, {"min_denominator", r.min_denominator}}}};
}

RoundtripReport roundtrip_check(const MultiplierCandidate& s, const HardyKernel& k_alpha,
                                const HardyKernel& k_beta_alpha, const RoundtripOptions& opts) {
  RoundtripReport rep;
  rep.candidate = s.label;
  const CoveringMap& cov = k_alpha.covering();
  const GroupPresentation& group = k_alpha.green().group();

  // Runs one stage; returns false (and records the failure) on a library error.
  auto run = [&rep](const std::string& name, auto&& body) {
    Stage st{name, false, 0.0, {}};
    try {
      st.metric = body();
      st.pass = true;
    } catch (const Error& e) {
      st.message = e.what();
    }
    rep.stages.push_back(st);
    return st.pass;
  };
  auto fail = [&rep](double metric, double cap) {
    if (!(metric <= cap)) rep.stages.back().pass = false;
    return rep.stages.back().pass;
  };

  // Diagnostic only: the construction stages below decide rejection on their own data.
  run("multiplier_kernel", [&] {
    std::vector<SamplingGrid> grids;
    for (std::size_t g = 0; g < opts.grid_count; ++g) {
      grids.push_back(omega_plus_grid(cov, opts.grid_n, Rng::stream(opts.seed, g).next()));
    }
    const PsdReport r = is_schur_multiplier(s, k_alpha, k_beta_alpha, grids, opts.tol);
    if (!r.pass) throw Error(ErrorKind::PickIndefinite, "min_eig " + io::format_double(r.min_eig));
    return r.min_eig;
  });
  const bool kernel_ok = rep.stages.back().pass;

  CertifiedSample nodes;
  CertifiedSample tests;
  std::optional<SchurEvaluator> sa_ext;
  std::optional<SchurEvaluator> sb_ext;
  std::optional<RExtension> rext;
  std::optional<LeechResult> leech;

  auto extend = [&](const HardyKernel& k, std::optional<SchurEvaluator>& out) {
    std::vector<std::pair<cplx, cplx>> samples;
    for (std::size_t i = 0; i < nodes.lambdas.points.size(); ++i) {
      samples.emplace_back(nodes.lambdas.points[i], k.s_alpha(nodes.points.points[i]));
    }
    out = extend_schur_from_samples(samples);
    double res = 0.0;
    for (const auto& [l, v] : samples) res = std::max(res, finite_or_inf(std::abs(out->scalar_value(l) - v)));
    return res;
  };

  const bool ok =
      run("nodes",
          [&] {
            nodes = certified_sample(cov, group, opts.max_length, opts.nodes, Rng::stream(opts.seed, 100).next(),
                                     opts.lambda_radius);
            tests = certified_sample(cov, group, opts.max_length, opts.test_points,
                                     Rng::stream(opts.seed, 101).next(), opts.lambda_radius);
            return static_cast<double>(nodes.lambdas.points.size());
          }) &&
      run("s_alpha_extension", [&] { return extend(k_alpha, sa_ext); }) && fail(rep.stages.back().metric, 1e-6) &&
      run("s_beta_alpha_extension", [&] { return extend(k_beta_alpha, sb_ext); }) &&
      fail(rep.stages.back().metric, 1e-6) &&
      run("r_extension",
          [&] {
            rext = r_extension(s, k_alpha, k_beta_alpha, *sb_ext, nodes);
            return rext->max_node_residual;
          }) &&
      fail(rep.stages.back().metric, kLeechResidualCap) &&
      run("leech",
          [&] {
            LeechProblem p;
            p.nodes = nodes.lambdas.points;
            const auto n = static_cast<Eigen::Index>(p.nodes.size());
            p.a_rows.resize(n, 2);
            p.b_rows.resize(n, 2);
            for (Eigen::Index i = 0; i < n; ++i) {
              const auto [a, b] = ab_rows(*sa_ext, *sb_ext, rext->r, p.nodes[static_cast<std::size_t>(i)]);
              p.a_rows.row(i) = a;
              p.b_rows.row(i) = b;
            }
            leech = leech_solve(p, opts.tol);
            return leech->max_node_residual;
          }) &&
      run("lft", [&] {
        rep.min_denominator = std::numeric_limits<double>::infinity();
        for (const cplx z : tests.points.points) {
          const LftValue v = lft_multiplier(leech->sigma, k_alpha, k_beta_alpha, z);
          rep.s_residual = std::max(rep.s_residual, finite_or_inf(std::abs(v.s_val - s.eval(z))));
          rep.s_alpha_residual =
              std::max(rep.s_alpha_residual, finite_or_inf(std::abs(v.s_alpha_val - k_alpha.s_alpha(z))));
          rep.min_denominator = std::min(rep.min_denominator, v.denominator);
        }
        return std::max(rep.s_residual, rep.s_alpha_residual);
      }) &&
      fail(rep.stages.back().metric, opts.accept);

  rep.pass = ok && kernel_ok;
  for (std::size_t i = 1; i < rep.stages.size() && rep.failed_stage.empty(); ++i) {
    if (!rep.stages[i].pass) rep.failed_stage = rep.stages[i].name;
  }
  if (rep.failed_stage.empty() && !kernel_ok) rep.failed_stage = rep.stages.front().name;
  return rep;
}

}  // namespace cahs

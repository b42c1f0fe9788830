// One line per acceptance criterion; exit status is nonzero if any line fails.
// Usage: acceptance [path-to-cahs-cli]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "cahs/fixture.hpp"
#include "cahs/green.hpp"
#include "cahs/io.hpp"
#include "cahs/multiplier.hpp"

using namespace cahs;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double x) { return io::format_double(x); }

std::string describe(const Check& c) {
  std::string s = c.name + " metric " + num(c.metric) + " <= " + num(c.threshold);
  if (!c.note.empty()) s += " (" + c.note + ")";
  return s;
}

void criterion1(const Fixture& f) {
  const auto t0 = Clock::now();
  const Check c = check_kernel_collapse(f);
  const double t = seconds_since(t0);
  report(1, c.pass && t < 1.0, describe(c) + ", " + num(t) + " s");
}

void criterion2(const Fixture& f) {
  const RewriteStats ok = rewrite_stats(f, RewriteNormalization::Sqrt2, 5, kDefaultSeed);
  const RewriteStats two = rewrite_stats(f, RewriteNormalization::Printed2, 5, kDefaultSeed);
  const bool factor2 = std::abs(two.ratio_lo - 2.0) <= 1e-6 && std::abs(two.ratio_hi - 2.0) <= 1e-6;
  report(2, ok.max_abs_diff <= 1e-9 && factor2,
         "max |rewritten - structure| " + num(ok.max_abs_diff) + "; constant 2 gives ratio in [" +
             num(two.ratio_lo) + ", " + num(two.ratio_hi) + "]");
}

void criterion3() {
  const auto t0 = Clock::now();
  const auto g = GroupPresentation::cyclic(MoebiusTransform::make(std::cosh(1.0), std::sinh(1.0)));
  const GreenFunction b(g, 12);
  const auto probes = circle_probes(8, 0.3);
  const OrbitTruncation words = orbit_enumerate(g, 6);
  double worst = 0.0;
  for (const Word& w : words.elements) {
    const cplx mu = green_character(b, w, probes).value;
    for (const cplx z : probes) worst = std::max(worst, std::abs(b.eval(w.transform(z)) - mu * b.eval(z)));
  }
  const double tail = b.tail_bound();
  const double t = seconds_since(t0);
  report(3, worst <= 10.0 * tail && tail <= 1e-6 && t < 5.0,
         "max |b(g z) - mu b(z)| " + num(worst) + " vs 10 x tail_bound " + num(10.0 * tail) + ", " + num(t) + " s");
}

void criterion4() {
  const GreenFunction b(GroupPresentation::trivial(), 0);
  const Character alpha = Character::trivial(0);
  double fixed = 0.0;
  double at0 = 0.0;
  double norm_excess = -1.0;
  Rng rng(Rng::stream(kDefaultSeed, 900).next());
  for (int d = 0; d <= 8; ++d) {
    std::vector<cplx> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = rng.normal();
    const Evaluator h = [c](cplx z) {
      cplx v{0.0, 0.0};
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
      return v;
    };
    const Evaluator ph = [&](cplx z) { return poincare_project(b, alpha, h, z); };
    for (int k = 0; k < 10; ++k) {
      const cplx z = rng.in_disk(0.95);
      fixed = std::max(fixed, std::abs(ph(z) - h(z)));
    }
    at0 = std::max(at0, std::abs(ph(0.0) - h(0.0)));
    norm_excess = std::max(norm_excess, boundary_norm_h2(ph, 256) - boundary_norm_h2(h, 256));
  }
  report(4, fixed <= 1e-12 && at0 <= 1e-8 && norm_excess <= 1e-6,
         "|Ph - h| " + num(fixed) + ", |f(0) - h(0)| " + num(at0) + ", norm excess " + num(norm_excess));
}

void criterion5(const Fixture& f) {
  const Check c = check_multiplier_detection(f, kDefaultSeed);
  report(5, c.pass, describe(c));
}

void criterion6(const Fixture& f) {
  const Check c = check_schur_extension(f, kDefaultSeed);
  report(6, c.pass, describe(c));
}

Eigen::Matrix2cd random_matrix(Rng& rng) {
  Eigen::Matrix2cd m;
  m << rng.normal(), rng.normal(), rng.normal(), rng.normal();
  return m;
}

LeechProblem manufactured(Rng& rng, const Eigen::Matrix2cd& sigma0) {
  LeechProblem p;
  p.a_rows.resize(8, 2);
  p.b_rows.resize(8, 2);
  for (Eigen::Index j = 0; j < 8; ++j) {
    p.nodes.push_back(rng.in_disk(0.9));
    p.a_rows.row(j) << rng.normal(), rng.normal();
    p.b_rows.row(j) = p.a_rows.row(j) * sigma0;
  }
  return p;
}

double leech_kernel_min_eig(const LeechProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.nodes.size());
  Eigen::MatrixXcd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx num = p.a_rows.row(i).dot(p.a_rows.row(j)) - p.b_rows.row(i).dot(p.b_rows.row(j));
      // Eigen's dot conjugates the first argument
      k(i, j) = std::conj(num) / (1.0 - p.nodes[static_cast<std::size_t>(i)] *
                                            std::conj(p.nodes[static_cast<std::size_t>(j)]));
    }
  }
  const Eigen::MatrixXcd h = 0.5 * (k + k.adjoint());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

void criterion7() {
  const auto t0 = Clock::now();
  Rng rng(Rng::stream(kDefaultSeed, 700).next());
  const std::vector<cplx> probes = disk_grid(200, Rng::stream(kDefaultSeed, 701).next(), 0.99).points;
  double worst_res = 0.0;
  double worst_norm = 0.0;
  int feasible_ok = 0;
  for (int k = 0; k < 20; ++k) {
    Eigen::Matrix2cd s0 = random_matrix(rng);
    s0 *= rng.uniform(0.1, 1.0) / s0.jacobiSvd().singularValues()(0);
    try {
      const LeechResult r = leech_solve(manufactured(rng, s0));
      const double nrm = sampled_operator_norm(r.sigma, probes);
      worst_res = std::max(worst_res, r.max_node_residual);
      worst_norm = std::max(worst_norm, nrm);
      if (r.max_node_residual <= 1e-8 && nrm <= 1.0 + 1e-8) ++feasible_ok;
    } catch (const Error& e) {
      std::cerr << "feasible instance " << k << ": " << e.what() << '\n';
    }
  }
  int infeasible_ok = 0;
  double least_negative = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 20; ++k) {
    // 2 x unitary: the kernel is -3 times a Szego Gram matrix
    const Eigen::Matrix2cd u = random_matrix(rng).householderQr().householderQ();
    const LeechProblem p = manufactured(rng, 2.0 * u);
    const double me = leech_kernel_min_eig(p);
    least_negative = std::max(least_negative, me);
    try {
      leech_solve(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Infeasible && me <= -1e-3) ++infeasible_ok;
    }
  }
  const double t = seconds_since(t0);
  report(7, feasible_ok == 20 && infeasible_ok == 20 && t < 10.0,
         "feasible " + std::to_string(feasible_ok) + "/20 (residual " + num(worst_res) + ", norm " +
             num(worst_norm) + "), infeasible " + std::to_string(infeasible_ok) + "/20 (min_eig <= " +
             num(least_negative) + "), " + num(t) + " s");
}

void criterion8(const Fixture& f) {
  bool pass = true;
  std::string detail;
  for (const auto& s : {MultiplierCandidate{Character::trivial(0), [](cplx z) { return z; }, "z"},
                        MultiplierCandidate{Character::trivial(0), [](cplx) { return cplx{0.3, 0.0}; }, "0.3"}}) {
    const Check c = check_roundtrip(f, s, kDefaultSeed);
    pass = pass && c.pass;
    detail += (detail.empty() ? "" : "; ") + describe(c);
  }
  report(8, pass, detail);
}

void criterion9(const Fixture& f) {
  const Check c = check_varsigma(f, 200, kDefaultSeed);
  report(9, c.pass, describe(c));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion10(const char* cli) {
  const std::string a = io::dump(to_json(run_fixture_suite()));
  const std::string b = io::dump(to_json(run_fixture_suite()));
  bool pass = a == b;
  std::string detail = "library runs " + std::string(pass ? "identical" : "differ");
  if (cli != nullptr) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto pa = dir / "cahs_acceptance_a.json";
    const auto pb = dir / "cahs_acceptance_b.json";
    const std::string base = std::string("\"") + cli + "\" fixture --out ";
    const int ra = std::system((base + "\"" + pa.string() + "\" > /dev/null").c_str());
    const int rb = std::system((base + "\"" + pb.string() + "\" > /dev/null").c_str());
    const std::string fa = slurp(pa);
    const bool same = ra == 0 && rb == 0 && !fa.empty() && fa == slurp(pb);
    pass = pass && same;
    detail += ", cli --out files " + std::string(same ? "identical" : "differ") + " (" +
              std::to_string(fa.size()) + " bytes)";
    std::filesystem::remove(pa);
    std::filesystem::remove(pb);
  }
  report(10, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const Fixture f = make_fixture();
  try {
    criterion1(f);
    criterion2(f);
    criterion3();
    criterion4();
    criterion5(f);
    criterion6(f);
    criterion7();
    criterion8(f);
    criterion9(f);
    criterion10(argc > 1 ? argv[1] : nullptr);
  } catch (const std::exception& e) {
    std::cout << "aborted: " << e.what() << std::endl;
    return 2;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion failing") << std::endl;
  return failures == 0 ? 0 : 1;
}

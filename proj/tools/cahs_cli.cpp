#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cahs/fixture.hpp"
#include "cahs/io.hpp"
#include "cahs/multiplier.hpp"
#include "cahs/parse.hpp"

namespace {

using namespace cahs;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string gens;
  std::string chars;
  std::size_t depth = 8;
  std::size_t grid_n = 50;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-8;
  std::string out;
  std::string fixture = "trivial";
  bool json = false;
  std::string normalization = "sqrt2";
  std::string s = "z";
  std::string input;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot open " + cfg.out);
  f << text;
}

GroupPresentation group_of(const RunConfig& cfg) {
  try {
    return parse::generators(cfg.gens);
  } catch (const Error& e) {
    throw UsageError(std::string("--gens: ") + e.what());
  }
}

Character character_of(const RunConfig& cfg, const GroupPresentation& g) {
  if (cfg.chars.empty()) return Character::trivial(g.rank());
  std::vector<double> a;
  try {
    a = parse::angles(cfg.chars);
  } catch (const Error& e) {
    throw UsageError(std::string("--char: ") + e.what());
  }
  if (a.size() != g.rank()) throw UsageError("--char needs one angle per generator");
  return Character::from_angles(a);
}

void require_trivial_fixture(const RunConfig& cfg) {
  if (cfg.fixture != "trivial") throw UsageError("only --fixture trivial is available");
}

int cmd_fixture(const RunConfig& cfg) {
  FixtureOptions opts;
  opts.seed = cfg.seed;
  if (cfg.normalization == "2") {
    opts.normalization = RewriteNormalization::Printed2;
  } else if (cfg.normalization != "sqrt2") {
    throw UsageError("--normalization must be sqrt2 or 2");
  }
  const FixtureReport rep = run_fixture_suite(opts);
  const std::string json = io::dump(to_json(rep)) + "\n";
  if (!cfg.out.empty()) emit(cfg, json);
  if (cfg.json) {
    std::cout << json;
  } else {
    for (const auto& c : rep.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " metric=" << io::format_double(c.metric)
                << " threshold=" << io::format_double(c.threshold);
      if (!c.note.empty()) std::cout << " (" << c.note << ")";
      std::cout << "\n";
    }
  }
  if (!rep.pass) {
    std::cerr << "fixture suite failed at " << rep.first_failure;
    for (const auto& c : rep.checks) {
      if (c.name == rep.first_failure && !c.note.empty()) std::cerr << ": " << c.note;
    }
    std::cerr << "\n";
    return kExitFail;
  }
  return kExitPass;
}

int cmd_orbit(const RunConfig& cfg) {
  const GroupPresentation g = group_of(cfg);
  const OrbitTruncation orbit = orbit_enumerate(g, cfg.depth);
  std::ostringstream os;
  write_orbit_csv(os, orbit);
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_green(const RunConfig& cfg) {
  const GroupPresentation g = group_of(cfg);
  const GreenFunction green(g, cfg.depth);
  const SamplingGrid grid = disk_grid(cfg.grid_n, Rng::stream(cfg.seed, 0).next());
  std::ostringstream os;
  if (cfg.json) {
    nlohmann::json chars = nlohmann::json::array();
    const auto probes = circle_probes(8, 0.5);
    for (std::size_t k = 0; k < g.rank(); ++k) {
      const Word w = make_word(g, {Letter{k, 1}});
      const CharacterEstimate est = green_character(green, w, probes);
      chars.push_back({{"word", w.to_string()}, {"mu", io::to_json(est.value)}, {"max_deviation", est.max_deviation}});
    }
    nlohmann::json pts = nlohmann::json::array();
    for (const cplx z : grid.points) {
      pts.push_back({{"z", io::to_json(z)}, {"b", io::to_json(green.eval(z))}, {"db", io::to_json(green.derivative(z))}});
    }
    os << io::dump({{"depth", cfg.depth}, {"tail_bound", green.tail_bound()}, {"character", chars}, {"points", pts}})
       << "\n";
  } else {
    write_green_csv(os, green, grid.points);
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_kernel(const RunConfig& cfg) {
  require_trivial_fixture(cfg);
  const Fixture f = make_fixture();
  const SamplingGrid grid = disk_grid(cfg.grid_n, Rng::stream(cfg.seed, 0).next(), 0.9);
  std::ostringstream os;
  if (cfg.json) {
    double err = 0.0;
    for (const cplx z : grid.points) {
      for (const cplx w : grid.points) {
        err = std::max(err, std::abs(kernel_structure(f.kernel, z, w) - 1.0 / (1.0 - z * std::conj(w))));
      }
    }
    os << io::dump({{"fixture", cfg.fixture}, {"n", grid.points.size()}, {"max_collapse_error", err}}) << "\n";
  } else {
    write_kernel_csv(os, f.kernel, grid.points, grid.points);
  }
  emit(cfg, os.str());
  return kExitPass;
}

int cmd_multiplier(const RunConfig& cfg) {
  require_trivial_fixture(cfg);
  MultiplierCandidate s{Character::trivial(0), {}, cfg.s};
  try {
    s.eval = parse::polynomial_evaluator(parse::polynomial(cfg.s));
  } catch (const Error& e) {
    throw UsageError(std::string("--s: ") + e.what());
  }
  const Fixture f = make_fixture();
  std::vector<SamplingGrid> grids;
  for (std::uint64_t k = 0; k < 3; ++k) grids.push_back(disk_grid(cfg.grid_n, Rng::stream(cfg.seed, k).next()));
  const PsdReport psd = is_schur_multiplier(s, f.kernel, f.kernel, grids, cfg.tol);
  RoundtripOptions opts;
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;
  const RoundtripReport rt = roundtrip_check(s, f.kernel, f.kernel, opts);
  const bool pass = psd.pass && rt.pass;
  emit(cfg, io::dump({{"candidate", cfg.s},
                      {"fixture", cfg.fixture},
                      {"pass", pass},
                      {"multiplier_kernel", to_json(psd)},
                      {"roundtrip", to_json(rt)}}) +
                "\n");
  return pass ? kExitPass : kExitFail;
}

int cmd_leech(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  std::ifstream in(cfg.input);
  if (!in) throw UsageError("cannot open " + cfg.input);
  LeechProblem p;
  try {
    p = leech_problem_from_json(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad problem file: ") + e.what());
  }
  const LeechResult r = leech_solve(p, cfg.tol);
  emit(cfg, io::dump(to_json(r)) + "\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character-automorphic Hardy space toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file mirroring the flags");
  RunConfig cfg;
  app.add_option("--gens", cfg.gens, "generators a,b;a,b (e.g. cosh1,sinh1)")->join(',');
  app.add_option("--char", cfg.chars, "character angles, one per generator")->join(',');
  app.add_option("--L", cfg.depth, "word length cap")->check(CLI::Range(0, 64));
  app.add_option("--grid-n", cfg.grid_n, "grid size")->check(CLI::Range(1, 100000));
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--tol", cfg.tol, "PSD tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output file (stdout when absent)");
  app.add_option("--fixture", cfg.fixture, "fixture selector");
  app.add_flag("--json", cfg.json, "emit JSON");
  app.add_option("--normalization", cfg.normalization, "sqrt2 or 2");
  app.add_option("--s", cfg.s, "multiplier polynomial in z");
  app.add_option("--input", cfg.input, "LeechProblem JSON");

  auto* fixture = app.add_subcommand("fixture", "run the Joukowski/Szego fixture suite")->fallthrough();
  auto* orbit = app.add_subcommand("orbit", "orbit of 0 as CSV")->fallthrough();
  auto* green = app.add_subcommand("green", "Green function samples")->fallthrough();
  auto* kernel = app.add_subcommand("kernel", "structure-formula kernel samples")->fallthrough();
  auto* multiplier = app.add_subcommand("multiplier", "multiplier test and round trip")->fallthrough();
  auto* leech = app.add_subcommand("leech", "solve a LeechProblem")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fixture) return cmd_fixture(cfg);
    if (*orbit) return cmd_orbit(cfg);
    if (*green) return cmd_green(cfg);
    if (*kernel) return cmd_kernel(cfg);
    if (*multiplier) return cmd_multiplier(cfg);
    if (*leech) return cmd_leech(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cout << io::dump({{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}) << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

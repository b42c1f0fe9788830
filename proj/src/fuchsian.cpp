#include "cahs/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cahs/io.hpp"

namespace cahs {

namespace {

constexpr double kUnimodularTol = 1e-12;

MoebiusTransform letter_transform(const GroupPresentation& group, const Letter& l) {
  const auto& g = group.generators()[l.index];
  return l.sign > 0 ? g : g.inverse();
}

// Letter order used for length-lexicographic enumeration: g1, g1^-1, g2, g2^-1, ...
std::vector<Letter> alphabet(std::size_t rank) {
  std::vector<Letter> out;
  out.reserve(2 * rank);
  for (std::size_t k = 0; k < rank; ++k) {
    out.push_back({k, +1});
    out.push_back({k, -1});
  }
  return out;
}

}  // namespace

GroupPresentation::GroupPresentation(std::vector<MoebiusTransform> generators)
    : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].classify() != MoebiusClass::Hyperbolic) {
      throw Error(ErrorKind::NotHyperbolic, "generator " + std::to_string(i + 1) + " is " +
                                                std::string(to_string(generators_[i].classify())));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generators_[i].approx_equal(generators_[j]) ||
          generators_[i].approx_equal(generators_[j].inverse())) {
        throw Error(ErrorKind::DuplicateGenerator,
                    "generators " + std::to_string(j + 1) + " and " + std::to_string(i + 1));
      }
    }
  }
}

std::string Word::to_string() const {
  if (letters.empty()) return "e";
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += '*';
    out += 'g' + std::to_string(l.index + 1);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

Word make_word(const GroupPresentation& group, std::vector<Letter> letters) {
  Word w;
  for (const auto& l : letters) {
    if (l.index >= group.rank()) throw Error(ErrorKind::ArityMismatch, "letter index out of range");
    if (l.sign != 1 && l.sign != -1) throw Error(ErrorKind::InvalidArgument, "letter sign must be +-1");
    if (!w.letters.empty() && w.letters.back().cancels(l)) {
      throw Error(ErrorKind::InvalidArgument, "word is not reduced");
    }
    w.letters.push_back(l);
    w.transform = w.transform.compose(letter_transform(group, l));
  }
  return w;
}

Word concat(const GroupPresentation& group, const Word& lhs, const Word& rhs) {
  std::vector<Letter> letters = lhs.letters;
  for (const auto& l : rhs.letters) {
    if (!letters.empty() && letters.back().cancels(l)) {
      letters.pop_back();
    } else {
      letters.push_back(l);
    }
  }
  return make_word(group, std::move(letters));
}

std::size_t orbit_size(std::size_t generators, std::size_t max_length) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (generators == 0) return 1;
  std::size_t total = 1;
  std::size_t shell = 2 * generators;
  for (std::size_t l = 1; l <= max_length; ++l) {
    if (total > kMax - shell) return kMax;
    total += shell;
    if (l < max_length) {
      if (shell > kMax / (2 * generators - 1)) return kMax;
      shell *= 2 * generators - 1;
    }
  }
  return total;
}

std::size_t default_depth_cap(std::size_t generators) {
  if (generators <= 1) return 16;
  if (generators == 2) return 8;
  std::size_t depth = 0;
  while (orbit_size(generators, depth + 1) <= kDefaultElementCap) ++depth;
  return depth;
}

OrbitTruncation orbit_enumerate(const GroupPresentation& group, std::size_t max_length,
                                std::size_t element_cap) {
  const std::size_t count = orbit_size(group.rank(), max_length);
  if (count > element_cap) {
    throw Error(ErrorKind::BudgetExceeded, std::to_string(count) + " elements exceed cap " +
                                               std::to_string(element_cap));
  }
  OrbitTruncation out;
  out.max_word_length = max_length;
  out.elements.reserve(count);
  out.elements.push_back(Word{});
  out.shell_sums.push_back(1.0);

  const auto letters = alphabet(group.rank());
  std::vector<MoebiusTransform> letter_maps;
  for (const auto& l : letters) letter_maps.push_back(letter_transform(group, l));

  std::size_t shell_begin = 0;
  std::size_t shell_end = 1;
  for (std::size_t len = 1; len <= max_length && group.rank() > 0; ++len) {
    double shell = 0.0;
    for (std::size_t i = shell_begin; i < shell_end; ++i) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        const Word& parent = out.elements[i];
        if (!parent.letters.empty() && parent.letters.back().cancels(letters[k])) continue;
        Word child;
        child.letters = parent.letters;
        child.letters.push_back(letters[k]);
        child.transform = parent.transform.compose(letter_maps[k]);
        shell += 1.0 - std::norm(child.transform.apply(0.0));
        out.elements.push_back(std::move(child));
      }
    }
    out.shell_sums.push_back(shell);
    shell_begin = shell_end;
    shell_end = out.elements.size();
  }
  out.tail_estimate = group.rank() == 0 ? 0.0 : shell_tail(out.shell_sums);
  return out;
}

double shell_tail(const std::vector<double>& shells) {
  if (shells.size() < 2) return std::numeric_limits<double>::infinity();
  const double last = shells.back();
  const double prev = shells[shells.size() - 2];
  if (last <= 0.0) return 0.0;
  const double ratio = std::min(last / prev, 0.99);
  return last * ratio / (1.0 - ratio);
}

ConvergenceEstimate convergence_type_estimate(const GroupPresentation& group, cplx z,
                                              std::size_t max_length) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the open disk");
  const auto orbit = orbit_enumerate(group, group.rank() == 0 ? 0 : max_length);
  ConvergenceEstimate est;
  est.shell_sums.assign(orbit.max_word_length + 1, 0.0);
  for (const auto& w : orbit.elements) {
    const double term = 1.0 - std::norm(w.transform.apply(z));
    est.shell_sums[w.length()] += term;
  }
  for (double s : est.shell_sums) est.partial_sum += s;
  if (group.rank() == 0) return est;

  const auto& s = est.shell_sums;
  if (s.size() >= 4) {
    const std::size_t n = s.size();
    if (!(s[n - 1] < s[n - 2] && s[n - 2] < s[n - 3])) {
      throw Error(ErrorKind::DivergenceSuspected, "shell sums do not decrease over the last 3 shells");
    }
  }
  est.tail_estimate = shell_tail(s);
  return est;
}

Character::Character(std::vector<cplx> values) : values_(std::move(values)) {
  for (const auto& v : values_) {
    if (std::abs(std::abs(v) - 1.0) > kUnimodularTol) {
      throw Error(ErrorKind::NotUnimodular, "character values must have modulus 1");
    }
  }
}

Character Character::from_angles(const std::vector<double>& angles) {
  std::vector<cplx> v;
  v.reserve(angles.size());
  for (double a : angles) v.push_back(std::polar(1.0, a));
  return Character(std::move(v));
}

cplx char_eval(const Character& chi, const std::vector<Letter>& letters) {
  cplx out{1.0, 0.0};
  for (const auto& l : letters) {
    if (l.index >= chi.arity()) throw Error(ErrorKind::ArityMismatch, "word uses a generator outside the character");
    const cplx v = chi.values()[l.index];
    out *= l.sign > 0 ? v : std::conj(v);
  }
  return out;
}

cplx char_eval(const Character& chi, const Word& w) { return char_eval(chi, w.letters); }

Character char_mul(const Character& x, const Character& y) {
  if (x.arity() != y.arity()) throw Error(ErrorKind::ArityMismatch, "characters of different arity");
  std::vector<cplx> v(x.arity());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = x.values()[k] * y.values()[k];
    v[k] /= std::abs(v[k]);
  }
  return Character(std::move(v));
}

Character char_conj(const Character& x) {
  std::vector<cplx> v(x.arity());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::conj(x.values()[k]);
  return Character(std::move(v));
}

DomainMembership in_normal_fundamental_domain(const OrbitTruncation& orbit, cplx z) {
  DomainMembership out;
  out.depth = orbit.max_word_length;
  double worst = 0.0;
  bool any = false;
  for (const auto& w : orbit.elements) {
    if (w.is_identity()) continue;
    worst = std::max(worst, std::abs(w.transform.derivative(z)));
    any = true;
  }
  if (!any) return out;
  out.margin = 1.0 - worst;
  out.inside = worst < 1.0;
  return out;
}

DomainMembership in_normal_fundamental_domain(const GroupPresentation& group, cplx z,
                                              std::size_t max_length) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the open disk");
  auto res = in_normal_fundamental_domain(orbit_enumerate(group, max_length), z);
  res.depth = max_length;
  return res;
}

void write_orbit_csv(std::ostream& out, const OrbitTruncation& orbit) {
  out << "word,re_g0,im_g0,abs_dg0\n";
  for (const auto& w : orbit.elements) {
    const cplx p = w.transform.apply(0.0);
    out << w.to_string() << ',' << io::format_double(p.real()) << ',' << io::format_double(p.imag())
        << ',' << io::format_double(std::abs(w.transform.derivative(0.0))) << '\n';
  }
}

}  // namespace cahs

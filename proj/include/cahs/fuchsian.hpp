#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "cahs/common.hpp"
#include "cahs/moebius.hpp"

namespace cahs {

/// Free presentation on hyperbolic generators. The empty presentation is the trivial group.
class GroupPresentation {
 public:
  GroupPresentation() = default;

  /// Throws NotHyperbolic or DuplicateGenerator.
  explicit GroupPresentation(std::vector<MoebiusTransform> generators);

  static GroupPresentation trivial() { return {}; }
  static GroupPresentation cyclic(const MoebiusTransform& g) { return GroupPresentation({g}); }

  const std::vector<MoebiusTransform>& generators() const { return generators_; }
  std::size_t rank() const { return generators_.size(); }

 private:
  std::vector<MoebiusTransform> generators_;
};

struct Letter {
  std::size_t index = 0;
  int sign = 1;  // +1 generator, -1 its inverse

  bool cancels(const Letter& other) const { return index == other.index && sign == -other.sign; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A reduced word together with the composition of its letters (left to right).
struct Word {
  std::vector<Letter> letters;
  MoebiusTransform transform;

  std::size_t length() const { return letters.size(); }
  bool is_identity() const { return letters.empty(); }
  std::string to_string() const;
};

/// Builds a reduced word from letters; throws ArityMismatch or InvalidArgument.
Word make_word(const GroupPresentation& group, std::vector<Letter> letters);

/// Reduced concatenation w1 * w2.
Word concat(const GroupPresentation& group, const Word& lhs, const Word& rhs);

struct OrbitTruncation {
  std::size_t max_word_length = 0;
  std::vector<Word> elements;      // length-lexicographic, identity first
  std::vector<double> shell_sums;  // shell_sums[l] = sum over |w| = l of (1 - |g_w(0)|^2)
  double tail_estimate = 0.0;
};

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

/// 1 + sum_{l=1..L} 2n (2n-1)^(l-1), saturating.
std::size_t orbit_size(std::size_t generators, std::size_t max_length);

/// Largest depth allowed by default for a presentation of this rank.
std::size_t default_depth_cap(std::size_t generators);

OrbitTruncation orbit_enumerate(const GroupPresentation& group, std::size_t max_length,
                                std::size_t element_cap = kDefaultElementCap);

struct ConvergenceEstimate {
  double partial_sum = 0.0;
  double tail_estimate = 0.0;
  std::vector<double> shell_sums;
};

/// Geometric extrapolation of a shell sequence: s_L r / (1 - r) with r = min(s_L / s_{L-1}, 0.99).
double shell_tail(const std::vector<double>& shells);

ConvergenceEstimate convergence_type_estimate(const GroupPresentation& group, cplx z,
                                              std::size_t max_length);

/// Unimodular homomorphism on the free group, given by its generator values.
class Character {
 public:
  Character() = default;
  /// Throws NotUnimodular.
  explicit Character(std::vector<cplx> values);

  static Character trivial(std::size_t generators) {
    return Character(std::vector<cplx>(generators, cplx{1.0, 0.0}));
  }
  /// Character with values exp(i * angle).
  static Character from_angles(const std::vector<double>& angles);

  const std::vector<cplx>& values() const { return values_; }
  std::size_t arity() const { return values_.size(); }

 private:
  std::vector<cplx> values_;
};

cplx char_eval(const Character& chi, const Word& w);
cplx char_eval(const Character& chi, const std::vector<Letter>& letters);
Character char_mul(const Character& x, const Character& y);
Character char_conj(const Character& x);

struct DomainMembership {
  bool inside = true;
  double margin = 1.0;
  std::size_t depth = 0;
};

DomainMembership in_normal_fundamental_domain(const GroupPresentation& group, cplx z,
                                              std::size_t max_length);
DomainMembership in_normal_fundamental_domain(const OrbitTruncation& orbit, cplx z);

/// CSV with columns word, re(g(0)), im(g(0)), |g'(0)|.
void write_orbit_csv(std::ostream& out, const OrbitTruncation& orbit);

}  // namespace cahs

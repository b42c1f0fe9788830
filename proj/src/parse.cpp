#include "cahs/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace cahs::parse {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& text) {
  throw Error(ErrorKind::InvalidArgument, "cannot parse " + what + " '" + text + "'");
}

std::string strip(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

double number(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) bad("number", ctx);
  return v;
}

// Splits at top-level + and - (not inside parentheses, not in an exponent). Signs stay
// with their term.
std::vector<std::string> terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool exponent = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') && i > 1 &&
                          std::isdigit(static_cast<unsigned char>(s[i - 2]));
    if ((c == '+' || c == '-') && depth == 0 && !cur.empty() && !exponent) {
      out.push_back(cur);
      cur.clear();
    }
    cur.push_back(c);
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double real_atom(const std::string& s, const std::string& ctx) {
  if (s.empty()) return 1.0;
  if (s.rfind("cosh", 0) == 0) return std::cosh(number(s.substr(4), ctx));
  if (s.rfind("sinh", 0) == 0) return std::sinh(number(s.substr(4), ctx));
  return number(s, ctx);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

cplx scalar(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) bad("scalar", text);
  cplx acc{0.0, 0.0};
  for (std::string t : terms(s)) {
    double sign = 1.0;
    if (t[0] == '+' || t[0] == '-') {
      sign = t[0] == '-' ? -1.0 : 1.0;
      t.erase(0, 1);
    }
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
      acc += sign * scalar(t.substr(1, t.size() - 2));
      continue;
    }
    const bool imag = !t.empty() && t.back() == 'i';
    if (imag) t.pop_back();
    if (!t.empty() && t.back() == '*') t.pop_back();
    const double v = sign * real_atom(t, text);
    acc += imag ? cplx{0.0, v} : cplx{v, 0.0};
  }
  return acc;
}

GroupPresentation generators(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) return GroupPresentation::trivial();
  std::vector<MoebiusTransform> gens;
  for (const auto& g : split(s, ';')) {
    const auto parts = split(g, ',');
    if (parts.size() != 2) bad("generator", g);
    gens.push_back(MoebiusTransform::make(scalar(parts[0]), scalar(parts[1])));
  }
  return GroupPresentation(std::move(gens));
}

std::vector<double> angles(const std::string& text) {
  const std::string s = strip(text);
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& a : split(s, ',')) out.push_back(scalar(a).real());
  return out;
}

std::vector<cplx> polynomial(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) bad("polynomial", text);
  std::vector<cplx> coeffs(1, cplx{0.0, 0.0});
  for (std::string t : terms(s)) {
    double sign = 1.0;
    if (t[0] == '+' || t[0] == '-') {
      sign = t[0] == '-' ? -1.0 : 1.0;
      t.erase(0, 1);
    }
    std::size_t degree = 0;
    const auto zpos = t.find('z');
    std::string coef = t;
    if (zpos != std::string::npos) {
      coef = t.substr(0, zpos);
      const std::string rest = t.substr(zpos + 1);
      degree = 1;
      if (!rest.empty()) {
        if (rest[0] != '^') bad("polynomial", text);
        const double d = number(rest.substr(1), text);
        if (d < 0.0 || d != std::floor(d) || d > 64.0) bad("polynomial degree", text);
        degree = static_cast<std::size_t>(d);
      }
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
    }
    const cplx c = coef.empty() ? cplx{1.0, 0.0} : scalar(coef);
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, cplx{0.0, 0.0});
    coeffs[degree] += sign * c;
  }
  return coeffs;
}

Evaluator polynomial_evaluator(std::vector<cplx> coeffs) {
  return [c = std::move(coeffs)](cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
}

}  // namespace cahs::parse

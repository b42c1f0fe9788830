#include "cahs/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace cahs::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "complex value must be [re, im]");
  }
  if (!j.at(0).is_number() || !j.at(1).is_number()) {
    throw Error(ErrorKind::InvalidArgument, "complex parts must be numbers");
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
  }
  return out;
}

Eigen::MatrixXcd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols) {
    throw Error(ErrorKind::InvalidArgument, "matrix payload has wrong size");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r * cols + c));
  }
  return m;
}

namespace {

void emit(std::ostringstream& os, const json& j, int indent, int level) {
  const auto pad = [&](int l) {
    if (indent >= 0) os << '\n' << std::string(static_cast<std::size_t>(indent * l), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        pad(level + 1);
        os << json(it.key()).dump() << (indent >= 0 ? ": " : ":");
        emit(os, it.value(), indent, level + 1);
      }
      pad(level);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays (complex pairs) stay on one line.
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(),
                                                     [](const json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) pad(level + 1);
        emit(os, e, indent, level + 1);
      }
      if (!flat) pad(level);
      os << ']';
      return;
    }
    case json::value_t::number_float:
      if (std::isfinite(j.get<double>())) {
        os << format_double(j.get<double>());
      } else {
        os << "null";
      }
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  emit(os, j, indent, 0);
  return os.str();
}

}  // namespace cahs::io

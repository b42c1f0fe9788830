#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cahs/common.hpp"

namespace cahs::io {

using nlohmann::json;

/// 17 significant digits, locale independent.
std::string format_double(double x);

/// Complex numbers are emitted as [re, im].
json to_json(cplx z);
cplx complex_from_json(const json& j);

/// Row-major list of [re, im] pairs.
json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols);

/// Serializes with every float rendered by format_double so output is byte-stable.
std::string dump(const json& j, int indent = 2);

}  // namespace cahs::io

#pragma once

#include <string>
#include <vector>

#include "cahs/common.hpp"
#include "cahs/fuchsian.hpp"

namespace cahs::parse {

/// Real or complex scalar: sums of atoms like 1.5, cosh1, sinh0.5, 2i, -0.3i.
/// Throws InvalidArgument.
cplx scalar(const std::string& text);

/// Generators "a,b;a,b;..." in normal form coordinates. Empty text is the trivial group.
GroupPresentation generators(const std::string& text);

/// Comma separated angles.
std::vector<double> angles(const std::string& text);

/// Polynomial in z, e.g. "z", "2z", "0.3", "0.5*z^2 + 0.1". Returns the coefficients.
std::vector<cplx> polynomial(const std::string& text);

Evaluator polynomial_evaluator(std::vector<cplx> coeffs);

}  // namespace cahs::parse

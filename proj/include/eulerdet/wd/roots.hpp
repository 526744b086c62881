#pragma once

#include <string>
#include <vector>

#include "eulerdet/rings/polynomial.hpp"
#include "eulerdet/rings/rational.hpp"

namespace eulerdet {

// Working precision of the numeric root finder, in decimal digits.
inline constexpr unsigned kRootDigits = 100;

struct RootModulusCheck {
  bool pass = true;
  // |alpha|^2 for each distinct root, as decimal strings (20 significant digits).
  std::vector<std::string> modulus_squared;
  // max over roots of | |alpha|^2 / target - 1 |
  double max_relative_error = 0.0;
};

// Distinct complex roots of p (Aberth iteration on the squarefree part) and
// the test |alpha|^2 == target within the given relative tolerance.
RootModulusCheck check_root_moduli(const Polynomial<BigRational>& p, const BigRational& target, double tolerance);

// Squarefree part p / gcd(p, p'), made monic.
Polynomial<BigRational> squarefree_part(const Polynomial<BigRational>& p);

}  // namespace eulerdet

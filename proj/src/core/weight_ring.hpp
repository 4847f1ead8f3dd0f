#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace gu {

// Exponent vector of a monomial in the polynomial coloring ring
// F2[u_1,...,u_kappa]: one non-negative integer per edge.
using EdgeMonomial = std::vector<int>;

// Finitely supported element of the valuation ring R: an F2-sum of u^r with
// rational exponents r >= 0, kept as the sorted duplicate-free support;
// the empty vector is the zero element.
using HahnElement = std::vector<Rat>;

// Single term u^e (e >= 0).
HahnElement hahn_term(const Rat& e);

// Addition over F2: symmetric difference of supports.
HahnElement hahn_add(const HahnElement& a, const HahnElement& b);

// Multiplication: exponent sums with mod-2 multiplicities.
HahnElement hahn_mul(const HahnElement& a, const HahnElement& b);

// Minimal exponent of the support; nullopt (i.e. +infinity) for zero.
std::optional<Rat> valuation(const HahnElement& a);

// Exact division by the monomial u^e; requires e <= valuation(a).
// This is the only division the reduction ever needs: homogeneity keeps all
// matrix entries monomial, so no series inversion arises.
HahnElement divide_by_monomial(const HahnElement& a, const Rat& e);

// Specializes an edge monomial at a weight vector: u^{sum_i t_i * exp_i}.
// Requires len(t) == len(exp) and t >= 0.
HahnElement specialize(const EdgeMonomial& m, const std::vector<Rat>& t);

// Textual form "u^{3/4}+u^{2}" with reduced-fraction exponents; "0" for zero.
std::string hahn_str(const HahnElement& a);

}  // namespace gu

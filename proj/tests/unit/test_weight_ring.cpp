#include <doctest.h>

#include "core/weight_ring.hpp"
#include "test_util.hpp"

using namespace gu;

TEST_CASE("valuation ring elements: construction and printing") {
    CHECK(hahn_str(HahnElement{}) == "0");
    CHECK(hahn_str(hahn_term(frac(3, 4))) == "u^{3/4}");
    const auto s = hahn_add(hahn_term(frac(3, 4)), hahn_term(Rat(2)));
    CHECK(hahn_str(s) == "u^{3/4}+u^{2}");
    CHECK_CODE(hahn_term(frac(-1, 2)), "E_PARSE");
}

TEST_CASE("addition is mod-2: equal terms cancel") {
    const auto a = hahn_term(frac(1, 2));
    CHECK(hahn_add(a, a).empty());
    const auto b = hahn_add(a, hahn_term(Rat(1)));
    CHECK(hahn_add(b, a) == HahnElement{Rat(1)});
}

TEST_CASE("multiplication sums exponents with parity") {
    const auto a = hahn_add(hahn_term(Rat(0)), hahn_term(Rat(1)));
    // (1 + u)(1 + u) = 1 + u^2 over F2.
    const auto sq = hahn_mul(a, a);
    CHECK(sq == HahnElement{Rat(0), Rat(2)});
    CHECK(hahn_mul(a, HahnElement{}).empty());
}

TEST_CASE("valuation and monomial division") {
    const auto a = hahn_add(hahn_term(frac(1, 3)), hahn_term(Rat(2)));
    CHECK(valuation(a).value() == frac(1, 3));
    CHECK(!valuation(HahnElement{}).has_value());
    const auto q = divide_by_monomial(a, frac(1, 3));
    CHECK(q == HahnElement{Rat(0), frac(5, 3)});
    CHECK_CODE(divide_by_monomial(a, Rat(1)), "E_PARSE");
}

TEST_CASE("specialization of edge monomials") {
    // u1^2 u2 at t = (1/2, 3) -> u^{1 + 3} = u^4.
    CHECK(specialize({2, 1}, {frac(1, 2), Rat(3)}) == hahn_term(Rat(4)));
    CHECK(specialize({0, 0}, {Rat(1), Rat(1)}) == hahn_term(Rat(0)));
    CHECK_CODE(specialize({1}, {Rat(1), Rat(1)}), "E_PARSE");
    CHECK_CODE(specialize({1, 1}, {Rat(-1), Rat(1)}), "E_PARSE");
}

#include "core/weight_ring.hpp"

#include <algorithm>
#include <map>

#include "core/errors.hpp"

namespace gu {

HahnElement hahn_term(const Rat& e) {
    if (e < 0) fail("E_PARSE", "negative exponent in valuation-ring element");
    return HahnElement{e};
}

HahnElement hahn_add(const HahnElement& a, const HahnElement& b) {
    HahnElement out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

HahnElement hahn_mul(const HahnElement& a, const HahnElement& b) {
    std::map<Rat, int> mult;
    for (const Rat& x : a)
        for (const Rat& y : b) mult[x + y] ^= 1;
    HahnElement out;
    for (const auto& [e, odd] : mult)
        if (odd) out.push_back(e);
    return out;
}

std::optional<Rat> valuation(const HahnElement& a) {
    if (a.empty()) return std::nullopt;
    return a.front();
}

HahnElement divide_by_monomial(const HahnElement& a, const Rat& e) {
    HahnElement out;
    out.reserve(a.size());
    for (const Rat& x : a) {
        if (x < e)
            fail("E_PARSE", "inexact division: exponent " + rat_str(x) +
                                " below divisor " + rat_str(e));
        out.push_back(x - e);
    }
    return out;
}

HahnElement specialize(const EdgeMonomial& m, const std::vector<Rat>& t) {
    if (m.size() != t.size())
        fail("E_PARSE", "weight vector length does not match monomial arity");
    Rat e(0);
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0) fail("E_PARSE", "negative weight in specialization");
        if (m[i] < 0) fail("E_PARSE", "negative exponent in edge monomial");
        e += t[i] * m[i];
    }
    return hahn_term(e);
}

std::string hahn_str(const HahnElement& a) {
    if (a.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s.push_back('+');
        s += "u^{" + rat_str(a[i]) + "}";
    }
    return s;
}

}  // namespace gu

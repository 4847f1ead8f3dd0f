#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "core/errors.hpp"

namespace gu {

// Exact rational arithmetic via GMP.  All quantities in the library (weights,
// gradings, valuations) are mpq_class values kept in canonical form.
using Rat = mpq_class;

// Builds a canonical rational from an integer pair.
inline Rat frac(long num, long den) {
    if (den == 0) fail("E_PARSE", "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p" (base 10).  Accepts unreduced input and canonicalizes;
// rejects empty strings, junk, and zero denominators.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) fail("E_PARSE", "empty rational literal");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        fail("E_PARSE", "malformed rational literal: \"" + s + "\"");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        fail("E_PARSE", "rational with zero denominator: \"" + s + "\"");
    r.canonicalize();
    return r;
}

// Canonical textual form: "p/q" with q > 0 and gcd(p,q)=1, or plain "p".
inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses a comma-separated list of rationals (the CLI --t / --from / --to form).
inline std::vector<Rat> rat_parse_csv(const std::string& s) {
    std::vector<Rat> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(rat_parse(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(rat_parse(cur));
    return out;
}

}  // namespace gu

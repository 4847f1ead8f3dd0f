#include <doctest.h>

#include "core/rational.hpp"
#include "test_util.hpp"

using namespace gu;

TEST_CASE("rational parsing produces canonical values") {
    CHECK(rat_parse("3/4") == frac(3, 4));
    CHECK(rat_parse("-6/8") == frac(-3, 4));
    CHECK(rat_parse("0") == 0);
    CHECK(rat_parse("7") == 7);
    CHECK(rat_str(rat_parse("10/4")) == "5/2");
    CHECK(rat_str(rat_parse("-10/5")) == "-2");
    CHECK(rat_str(frac(1, -2)) == "-1/2");
}

TEST_CASE("rational parsing rejects junk") {
    CHECK_CODE(rat_parse(""), "E_PARSE");
    CHECK_CODE(rat_parse("1/0"), "E_PARSE");
    CHECK_CODE(rat_parse("a/b"), "E_PARSE");
    CHECK_CODE(rat_parse("1.5"), "E_PARSE");
    CHECK_CODE(rat_parse("1/2/3"), "E_PARSE");
    CHECK_CODE(frac(1, 0), "E_PARSE");
}

TEST_CASE("csv weight lists") {
    const auto v = rat_parse_csv("1/2,3,-5/6");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == frac(1, 2));
    CHECK(v[1] == 3);
    CHECK(v[2] == frac(-5, 6));
    CHECK_CODE(rat_parse_csv("1,,2"), "E_PARSE");
}

#include "doctest.h"

#include "hamqm/errors.hpp"
#include "support.hpp"

using namespace hamqm;
using hamqm::test::Digits;

TEST_CASE("contexts below the minimum precision are rejected")
{
    CHECK_THROWS_AS(make_context(29), ConfigError);
    CHECK_THROWS_AS(make_context(0), ConfigError);
    CHECK(make_context(30).digits() == 30);
}

TEST_CASE("epsilon tracks digits")
{
    const auto ctx = make_context(40);
    PrecisionScope s(ctx);
    CHECK(ctx.epsilon() == parse_scalar("1e-35"));
}

TEST_CASE("scopes nest and restore")
{
    const auto outer = make_context(60);
    const auto inner = make_context(35);
    {
        PrecisionScope a(outer);
        CHECK(active_context().digits() == 60);
        {
            PrecisionScope b(inner);
            CHECK(active_context().digits() == 35);
            CHECK(Real::default_precision() == 35);
        }
        CHECK(active_context().digits() == 60);
        CHECK(Real::default_precision() == 60);
    }
    CHECK(active_context().digits() == kDefaultDigits);
}

TEST_CASE("decimal parsing is exact to the working precision")
{
    Digits d;
    const Real beta = parse_scalar("0.01");
    CHECK(abs(beta * 100 - 1) < parse_scalar("1e-49"));
    CHECK(parse_scalar("-1.5e-3") == Real(-3) / 2000);
    CHECK(parse_scalar("  42 ") == 42);
}

TEST_CASE("fractions parse to their quotient")
{
    Digits d;
    CHECK(parse_scalar("-1/3") == Real(-1) / 3);
    CHECK(parse_scalar("3/4") == Real("0.75"));
}

TEST_CASE("malformed numbers are configuration errors")
{
    Digits d;
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "0.5x", "/3"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_scalar(bad), ConfigError);
    }
}

TEST_CASE("format_scalar keeps the requested significant digits")
{
    Digits d;
    CHECK(format_scalar(parse_scalar("0.5073031250"), 10) == "0.5073031250");
    CHECK(format_scalar(parse_scalar("0.52056171989"), 8) == "0.52056172");
    CHECK(format_scalar(Real(0), 4) == "0.000");
    CHECK(format_scalar(parse_scalar("4.9e-28"), 2) == "4.9e-28");
    CHECK(format_scalar(parse_scalar("-3168636.2"), 3) == "-3.17e+06");
    CHECK(format_scalar(parse_scalar("1234.5"), 6) == "1234.50");
}

TEST_CASE("formatting at full precision round-trips")
{
    Digits d;
    const Real x = Real(1) / 3;
    CHECK(abs(parse_scalar(format_full(x)) - x) <= x * parse_scalar("1e-49"));
    const Real y = sqrt(Real(2)) * parse_scalar("1e-20");
    CHECK(abs(parse_scalar(format_full(y)) - y) <= abs(y) * parse_scalar("1e-49"));
}

TEST_CASE("numerical errors carry kind and order")
{
    const NumericalError e(NumericalFailure::lost_state, "gone");
    CHECK(e.kind() == NumericalFailure::lost_state);
    CHECK_FALSE(e.order().has_value());
    const auto tagged = e.with_order(7);
    CHECK(tagged.order() == 7);
    CHECK(std::string(to_string(NumericalFailure::stage_failure)) == "stage failure");
}

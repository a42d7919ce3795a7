#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "payreg/quad.hpp"
#include "payreg/rational.hpp"

using namespace payreg;

namespace {

Rational random_rational(std::mt19937_64& rng, int max_num = 20, int max_den = 20) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

QuadScalar random_quad(std::mt19937_64& rng) {
    return QuadScalar(random_rational(rng), random_rational(rng), 2);
}

}  // namespace

TEST_CASE("rational parse and format round-trip") {
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(format_rational(Rational(-2, 3)) == "-2/3");
    CHECK(format_rational(Rational(8, 4)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("doubles convert to exact dyadic rationals") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(-0.75) == Rational(-3, 4));
    CHECK(rational_from_double(3.0) == Rational(3));
    Rational tenth = rational_from_double(0.1);
    CHECK(tenth != Rational(1, 10));  // 0.1 is not representable
    CHECK(std::abs(to_double(tenth) - 0.1) == 0.0);
}

TEST_CASE("bounded-denominator approximation picks best fractions") {
    CHECK(approximate_rational(0.5, 64) == Rational(1, 2));
    CHECK(approximate_rational(1.0 / 3.0, 64) == Rational(1, 3));
    CHECK(approximate_rational(-2.0 / 7.0, 64) == Rational(-2, 7));
    // pi with small denominators: 22/7 then 355/113
    CHECK(approximate_rational(3.14159265358979, 10) == Rational(22, 7));
    CHECK(approximate_rational(3.14159265358979, 200) == Rational(355, 113));
}

TEST_CASE("quad arithmetic identities from the field") {
    QuadScalar r2 = QuadScalar::sqrt_d(2);
    // sqrt(2)/(1+sqrt(2)) rationalizes to 2 - sqrt(2)
    QuadScalar lhs = r2 / (QuadScalar(1) + r2);
    QuadScalar rhs = QuadScalar(2) - r2;
    CHECK(compare(lhs, rhs) == Sign::zero);
    CHECK(lhs == rhs);

    CHECK((r2 - QuadScalar(2)).sign() == Sign::negative);
    CHECK((r2 - QuadScalar(1)).sign() == Sign::positive);

    QuadScalar x(Rational(3, 7), Rational(-2, 5), 2);
    CHECK(x + QuadScalar(0) == x);
    CHECK(x * QuadScalar(1) == x);
    CHECK((x - x).is_zero());
    CHECK((x / x) == QuadScalar(1));
}

TEST_CASE("mixing discriminants is rejected unless one side is rational") {
    QuadScalar r2 = QuadScalar::sqrt_d(2);
    QuadScalar r3 = QuadScalar::sqrt_d(3);
    CHECK_THROWS_AS(r2 + r3, Error);
    CHECK_THROWS_AS(r2 * r3, Error);
    QuadScalar rat(Rational(5, 3), Rational(0), 3);
    CHECK(r2 + rat == QuadScalar(Rational(5, 3), Rational(1), 2));
    CHECK_THROWS_AS(QuadScalar(Rational(1), Rational(1), 4), Error);   // 4 is a square
    CHECK_THROWS_AS(QuadScalar(Rational(1), Rational(1), 12), Error);  // 12 not squarefree
}

TEST_CASE("field axioms hold exactly on random samples") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        QuadScalar x = random_quad(rng), y = random_quad(rng), z = random_quad(rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("exact comparison agrees with extended-precision floats") {
    std::mt19937_64 rng(7021);
    for (int trial = 0; trial < 500; ++trial) {
        QuadScalar x = random_quad(rng), y = random_quad(rng);
        long double fx = x.to_long_double(), fy = y.to_long_double();
        Sign s = compare(x, y);
        if (std::abs(static_cast<double>(fx - fy)) > 1e-12) {
            CHECK(s == (fx < fy ? Sign::negative : Sign::positive));
        } else {
            // Too close to trust floats; at least demand antisymmetry.
            CHECK(compare(y, x) == (s == Sign::zero ? Sign::zero
                                                    : (s == Sign::negative ? Sign::positive : Sign::negative)));
        }
    }
}

TEST_CASE("sign determination without floats near ties") {
    // a and b pull in opposite directions: 17/12 vs sqrt(2) = 1.41421...
    CHECK(QuadScalar(Rational(17, 12), Rational(-1), 2).sign() == Sign::positive);
    CHECK(QuadScalar(Rational(-17, 12), Rational(1), 2).sign() == Sign::negative);
    CHECK(QuadScalar(Rational(7, 5), Rational(-1), 2).sign() == Sign::negative);
    CHECK(QuadScalar(Rational(0), Rational(0), 2).sign() == Sign::zero);
}

TEST_CASE("sqrt brackets are exact and tight") {
    for (int64_t d : {2, 3, 5, 7, 10}) {
        auto [lo, hi] = sqrt_bracket(d, 40);
        CHECK(lo * lo <= Rational(d));
        CHECK(hi * hi >= Rational(d));
        CHECK(hi - lo <= Rational(1, BigInt(1) << 40));
    }
    QuadScalar x(Rational(1, 3), Rational(-5, 7), 2);
    Rational lb = quad_lower_bound(x, 50), ub = quad_upper_bound(x, 50);
    CHECK((x - QuadScalar(lb)).sign() != Sign::negative);
    CHECK((QuadScalar(ub) - x).sign() != Sign::negative);
    CHECK(ub - lb <= Rational(1, BigInt(1) << 45));
}

TEST_CASE("float view stays within 2^-40 of the exact value") {
    std::mt19937_64 rng(333);
    for (int trial = 0; trial < 300; ++trial) {
        QuadScalar x = random_quad(rng);
        long double exact = x.to_long_double();
        double view = x.to_double();
        CHECK(std::abs(static_cast<double>(exact - view)) <= std::ldexp(1.0, -40));
    }
}

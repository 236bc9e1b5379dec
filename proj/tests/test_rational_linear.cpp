#include "doctest.h"

#include "pentile/linear.hpp"
#include "pentile/rational.hpp"

using namespace pentile;

TEST_CASE("rational arithmetic normalizes") {
    Rational a(2, 4);
    CHECK(a == Rational(1, 2));
    CHECK((a + a) == Rational(1));
    CHECK((a * Rational(2, 3)) == Rational(1, 3));
    CHECK((Rational(1) / Rational(3)).str() == "1/3");
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2).is_negative());
    CHECK(Rational(7, 3) > Rational(2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("exact solve: unique and parametrized systems") {
    // x + y = 3, x - y = 1  ->  x=2, y=1
    RationalMatrix A(2, 2);
    A << Rational(1), Rational(1), Rational(1), Rational(-1);
    RationalVector b(2);
    b << Rational(3), Rational(1);
    auto sol = solve_exact(A, b);
    REQUIRE(sol.consistent);
    CHECK(sol.free_columns.empty());
    CHECK(sol.particular(0) == Rational(2));
    CHECK(sol.particular(1) == Rational(1));

    // one equation, two unknowns: 1-dim family
    RationalMatrix A2(1, 2);
    A2 << Rational(2), Rational(4);
    RationalVector b2(1);
    b2 << Rational(6);
    auto sol2 = solve_exact(A2, b2);
    REQUIRE(sol2.consistent);
    CHECK(sol2.free_columns.size() == 1);
    // particular + t * nullspace always satisfies the equation
    Rational lhs = A2(0, 0) * (sol2.particular(0) + sol2.nullspace(0, 0) * Rational(7)) +
                   A2(0, 1) * (sol2.particular(1) + sol2.nullspace(1, 0) * Rational(7));
    CHECK(lhs == Rational(6));

    // inconsistent
    RationalMatrix A3(2, 1);
    A3 << Rational(1), Rational(1);
    RationalVector b3(2);
    b3 << Rational(0), Rational(1);
    CHECK_FALSE(solve_exact(A3, b3).consistent);
}

TEST_CASE("strict feasibility with Farkas certificates") {
    // x > 0, x < 180, x = 500 -> infeasible
    RationalMatrix A(1, 1);
    A << Rational(1);
    RationalVector b(1);
    b << Rational(500);
    RationalMatrix G(2, 1);
    G << Rational(-1), Rational(1);
    RationalVector h(2);
    h << Rational(0), Rational(180);
    auto r = feasible_strict(A, b, G, h);
    CHECK_FALSE(r.feasible);
    REQUIRE(r.certificate.has_value());
    CHECK(check_farkas(A, b, G, h, *r.certificate));

    // x = 90: feasible
    RationalVector b2(1);
    b2 << Rational(90);
    CHECK(feasible_strict(A, b2, G, h).feasible);

    // contradictory equalities alone: x = 1, x = 2
    RationalMatrix A3(2, 1);
    A3 << Rational(1), Rational(1);
    RationalVector b3(2);
    b3 << Rational(1), Rational(2);
    auto r3 = feasible_strict(A3, b3, G, h);
    CHECK_FALSE(r3.feasible);
    REQUIRE(r3.certificate.has_value());
    CHECK(check_farkas(A3, b3, G, h, *r3.certificate));
}

TEST_CASE("certificate checker rejects tampered multipliers") {
    RationalMatrix A(1, 1);
    A << Rational(1);
    RationalVector b(1);
    b << Rational(500);
    RationalMatrix G(2, 1);
    G << Rational(-1), Rational(1);
    RationalVector h(2);
    h << Rational(0), Rational(180);
    auto r = feasible_strict(A, b, G, h);
    REQUIRE(r.certificate.has_value());
    auto bad = *r.certificate;
    bad.ineq_mult[1] += Rational(1);
    CHECK_FALSE(check_farkas(A, b, G, h, bad));
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "payreg/lp.hpp"

using namespace payreg;

TEST_CASE("single variable equality") {
    LpProblem<Rational> lp;
    int x = lp.add_var();
    lp.add_row({{x, Rational(1)}}, Rel::eq, Rational(1));
    auto sol = lp.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[x] == 1);
}

TEST_CASE("inconsistent simplex constraints are infeasible") {
    // l1 + l2 = 1, l >= 0, 3 l1 = 4 forces l1 = 4/3 > 1.
    LpProblem<Rational> lp;
    int l1 = lp.add_var(), l2 = lp.add_var();
    lp.add_row({{l1, Rational(1)}, {l2, Rational(1)}}, Rel::eq, Rational(1));
    lp.add_row({{l1, Rational(3)}}, Rel::eq, Rational(4));
    CHECK(lp.solve().status == LpStatus::infeasible);
}

TEST_CASE("hull membership system for the notched-rectangle point (2,2)") {
    // (2,2) = sum lambda_j w_j over {(0,0),(3,0),(3,2),(0,2),(0,1)}, sum = 1.
    std::vector<std::vector<Rational>> pts = {{0, 0}, {3, 0}, {3, 2}, {0, 2}, {0, 1}};
    LpProblem<Rational> lp;
    std::vector<int> lam;
    for (size_t j = 0; j < pts.size(); ++j) lam.push_back(lp.add_var());
    for (int c = 0; c < 2; ++c) {
        std::vector<std::pair<int, Rational>> terms;
        for (size_t j = 0; j < pts.size(); ++j) terms.emplace_back(lam[j], pts[j][c]);
        lp.add_row(std::move(terms), Rel::eq, Rational(c == 0 ? 2 : 2));
    }
    {
        std::vector<std::pair<int, Rational>> terms;
        for (int v : lam) terms.emplace_back(v, Rational(1));
        lp.add_row(std::move(terms), Rel::eq, Rational(1));
    }
    auto sol = lp.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    Rational x(0), y(0), total(0);
    for (size_t j = 0; j < pts.size(); ++j) {
        CHECK(sol.values[lam[j]].sign() >= 0);
        x += sol.values[lam[j]] * pts[j][0];
        y += sol.values[lam[j]] * pts[j][1];
        total += sol.values[lam[j]];
    }
    CHECK(x == 2);
    CHECK(y == 2);
    CHECK(total == 1);
}

TEST_CASE("unbounded objective is reported distinctly") {
    LpProblem<Rational> lp;
    int x = lp.add_var();
    lp.add_row({{x, Rational(1)}}, Rel::ge, Rational(1));
    lp.set_objective(true, {{x, Rational(1)}});
    CHECK(lp.solve().status == LpStatus::unbounded);
}

TEST_CASE("small optimization lands on the exact vertex") {
    // max x + y st x + 2y <= 4, x <= 3 -> (3, 1/2), value 7/2.
    LpProblem<Rational> lp;
    int x = lp.add_var(), y = lp.add_var();
    lp.add_row({{x, Rational(1)}, {y, Rational(2)}}, Rel::le, Rational(4));
    lp.add_row({{x, Rational(1)}}, Rel::le, Rational(3));
    lp.set_objective(true, {{x, Rational(1)}, {y, Rational(1)}});
    auto sol = lp.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == Rational(7, 2));
    CHECK(sol.values[x] == 3);
    CHECK(sol.values[y] == Rational(1, 2));
}

TEST_CASE("free variables can go negative") {
    LpProblem<Rational> lp;
    int x = lp.add_free_var();
    lp.add_row({{x, Rational(2)}}, Rel::eq, Rational(-10));
    auto sol = lp.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[x] == -5);
}

TEST_CASE("redundant and vacuous rows are tolerated") {
    LpProblem<Rational> lp;
    int x = lp.add_var();
    lp.add_row({{x, Rational(1)}}, Rel::eq, Rational(2));
    lp.add_row({{x, Rational(2)}}, Rel::eq, Rational(4));  // redundant
    lp.add_row({}, Rel::le, Rational(5));                  // 0 <= 5
    lp.set_objective(false, {{x, Rational(1)}});
    auto sol = lp.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[x] == 2);

    LpProblem<Rational> bad;
    bad.add_var();
    bad.add_row({}, Rel::eq, Rational(3));  // 0 = 3
    CHECK(bad.solve().status == LpStatus::infeasible);
}

TEST_CASE("simplex runs exactly over the quadratic field") {
    QuadScalar r2 = QuadScalar::sqrt_d(2);
    LpProblem<QuadScalar> lp;
    int x = lp.add_var();
    lp.add_row({{x, QuadScalar(1)}}, Rel::le, r2);
    lp.set_objective(true, {{x, QuadScalar(1)}});
    auto sol = lp.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.values[x] == r2);
    CHECK(sol.objective == r2);

    // 0 = l1 * sqrt(2) + l2 * (-1), l1 + l2 = 1: forced irrational coefficients.
    LpProblem<QuadScalar> hull;
    int l1 = hull.add_var(), l2 = hull.add_var();
    hull.add_row({{l1, r2}, {l2, QuadScalar(-1)}}, Rel::eq, QuadScalar(0));
    hull.add_row({{l1, QuadScalar(1)}, {l2, QuadScalar(1)}}, Rel::eq, QuadScalar(1));
    auto hsol = hull.solve();
    REQUIRE(hsol.status == LpStatus::optimal);
    CHECK(hsol.values[l1] == r2 - QuadScalar(1));
    CHECK(hsol.values[l2] == QuadScalar(2) - r2);
}

TEST_CASE("feasible-by-construction systems always solve and re-verify") {
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<int> coef(-5, 5), xval(0, 4);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 2 + static_cast<int>(rng() % 3);
        int n = m + 1 + static_cast<int>(rng() % 3);
        std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
        std::vector<Rational> x0(n), b(m, Rational(0));
        for (auto& xi : x0) xi = Rational(xval(rng), 1 + static_cast<int>(rng() % 3));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                a[i][j] = coef(rng);
                b[i] += a[i][j] * x0[j];
            }
        auto sol = lp_feasible(a, b);
        REQUIRE(sol.status == LpStatus::optimal);
        for (int i = 0; i < m; ++i) {
            Rational lhs(0);
            for (int j = 0; j < n; ++j) {
                CHECK(sol.values[j].sign() >= 0);
                lhs += a[i][j] * sol.values[j];
            }
            CHECK(lhs == b[i]);
        }
    }
}

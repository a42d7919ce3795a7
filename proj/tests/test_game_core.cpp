#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "payreg/fixtures.hpp"
#include "payreg/game.hpp"

using namespace payreg;

namespace {

MixedStrategy ms(std::vector<Rational> w) { return MixedStrategy(std::move(w)); }
MixedProfile mp(std::vector<MixedStrategy> s) { return MixedProfile(std::move(s)); }
CorrelatedStrategy cs(std::vector<Rational> w) { return CorrelatedStrategy(std::move(w)); }

MixedStrategy random_simplex(std::mt19937_64& rng, int m) {
    std::uniform_int_distribution<int> w(0, 6);
    std::vector<Rational> weights(m);
    Rational sum(0);
    while (sum == 0) {
        sum = 0;
        for (auto& x : weights) {
            x = w(rng);
            sum += x;
        }
    }
    for (auto& x : weights) x /= sum;
    return MixedStrategy(std::move(weights));
}

MixedProfile random_profile(std::mt19937_64& rng, const Game& g) {
    std::vector<MixedStrategy> s;
    for (int m : g.strategy_counts()) s.push_back(random_simplex(rng, m));
    return MixedProfile(std::move(s));
}

Game random_game(std::mt19937_64& rng, int max_players = 3, int max_strategies = 3) {
    std::uniform_int_distribution<int> np(2, max_players), ns(1, max_strategies);
    std::uniform_int_distribution<int> num(-10, 10), den(1, 4);
    std::vector<int> counts;
    int n = np(rng);
    size_t cells = 1;
    for (int i = 0; i < n; ++i) {
        counts.push_back(ns(rng));
        cells *= counts.back();
    }
    std::vector<PayoffVector> table;
    for (size_t c = 0; c < cells; ++c) {
        std::vector<QuadScalar> v;
        for (int i = 0; i < n; ++i) v.emplace_back(Rational(num(rng), den(rng)));
        table.emplace_back(std::move(v));
    }
    return Game(std::move(counts), std::move(table));
}

PayoffVector combine(const QuadScalar& t, const PayoffVector& a, const PayoffVector& b) {
    std::vector<QuadScalar> c(a.coords.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = t * a.coords[i] + (QuadScalar(1) - t) * b.coords[i];
    return PayoffVector(std::move(c));
}

}  // namespace

TEST_CASE("pure payoff lookup matches the tables") {
    Game g1 = fixtures::diamond_2x2();
    CHECK(evaluate_pure(g1, {{0, 1}}) == PayoffVector({QuadScalar(5), QuadScalar(2)}));
    CHECK(evaluate_pure(g1, {{0, 0}}) == g1.payoff_table()[0]);

    Game g3 = fixtures::root2_2x2x2();
    PayoffVector expect({QuadScalar::sqrt_d(2), QuadScalar(-1), QuadScalar(1)});
    CHECK(evaluate_pure(g3, {{0, 0, 0}}) == expect);
    CHECK(evaluate_pure(g3, {{0, 0, 1}}) == expect);  // third player irrelevant

    CHECK_THROWS_AS(evaluate_pure(g1, {{0, 2}}), Error);
    CHECK_THROWS_AS(evaluate_pure(g1, {{0}}), Error);
}

TEST_CASE("induced correlated strategy is the exact product distribution") {
    Game g = fixtures::diamond_2x2();
    MixedProfile half_third = mp({ms({Rational(1, 2), Rational(1, 2)}), ms({Rational(1, 3), Rational(2, 3)})});
    CorrelatedStrategy phi = induced_correlated(g, half_third);
    CHECK(phi.weights == std::vector<Rational>{Rational(1, 6), Rational(1, 3), Rational(1, 6), Rational(1, 3)});

    PureProfile a{{1, 0}};
    CorrelatedStrategy point = induced_correlated(g, MixedProfile::degenerate(a, g.strategy_counts()));
    CHECK(point == CorrelatedStrategy::point_mass(g.flat_index(a), 4));

    // A zero factor wipes out the other player's rows.
    MixedProfile lopsided = mp({ms({Rational(1), Rational(0)}), ms({Rational(2, 5), Rational(3, 5)})});
    CorrelatedStrategy skew = induced_correlated(g, lopsided);
    CHECK(skew.weights == std::vector<Rational>{Rational(2, 5), Rational(3, 5), Rational(0), Rational(0)});
}

TEST_CASE("correlated expectation is exact") {
    Game g = fixtures::diamond_2x2();
    CorrelatedStrategy uniform(std::vector<Rational>(4, Rational(1, 4)));
    CHECK(evaluate_correlated(g, uniform) == PayoffVector({QuadScalar(2), QuadScalar(2)}));

    PureProfile a{{1, 1}};
    CHECK(evaluate_correlated(g, CorrelatedStrategy::point_mass(g.flat_index(a), 4)) == evaluate_pure(g, a));

    Game g3 = fixtures::root2_2x2x2();
    CorrelatedStrategy u8(std::vector<Rational>(8, Rational(1, 8)));
    PayoffVector got = evaluate_correlated(g3, u8);
    QuadScalar quarter{Rational(1, 4)};
    PayoffVector expect({(QuadScalar::sqrt_d(2) - QuadScalar(2)) * quarter,
                         (QuadScalar::sqrt_d(2) - QuadScalar(1)) * quarter, QuadScalar(0)});
    CHECK(got == expect);

    CorrelatedStrategy wrong(std::vector<Rational>(4, Rational(1, 4)));
    CHECK_THROWS_AS(evaluate_correlated(g3, wrong), Error);
}

TEST_CASE("mixed expectation equals the induced correlated expectation") {
    Game g = fixtures::diamond_2x2();
    MixedProfile even = mp({MixedStrategy::uniform(2), MixedStrategy::uniform(2)});
    CHECK(evaluate_mixed(g, even) == PayoffVector({QuadScalar(2), QuadScalar(2)}));

    PureProfile a{{0, 1}};
    CHECK(evaluate_mixed(g, MixedProfile::degenerate(a, g.strategy_counts())) == evaluate_pure(g, a));

    Game g2 = fixtures::notched_rectangle_2x3();
    MixedProfile skew = mp({MixedStrategy::point_mass(0, 2), ms({Rational(1, 2), Rational(0), Rational(1, 2)})});
    CHECK(evaluate_mixed(g2, skew) == PayoffVector({QuadScalar(0), QuadScalar(1)}));
}

TEST_CASE("product distributions recover their unique mixed profile") {
    Game g = fixtures::diamond_2x2();
    MixedProfile p = mp({ms({Rational(1, 2), Rational(1, 2)}), ms({Rational(1, 3), Rational(2, 3)})});
    auto recovered = recover_mixed(g, induced_correlated(g, p));
    REQUIRE(recovered.has_value());
    CHECK(*recovered == p);

    // Perfectly correlated diagonal mass is not a product.
    CorrelatedStrategy diag = cs({Rational(1, 2), Rational(0), Rational(0), Rational(1, 2)});
    CHECK(!recover_mixed(g, diag).has_value());

    PureProfile a{{1, 0}};
    auto point = recover_mixed(g, CorrelatedStrategy::point_mass(g.flat_index(a), 4));
    REQUIRE(point.has_value());
    CHECK(point->as_pure() == a);
}

TEST_CASE("mixed-profile embedding and exactness on random games") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 40; ++trial) {
        Game g = random_game(rng);
        MixedProfile sigma = random_profile(rng, g);
        CHECK(evaluate_mixed(g, sigma) == evaluate_correlated(g, induced_correlated(g, sigma)));
        for (size_t flat = 0; flat < g.profile_count(); flat += 3) {
            PureProfile a = g.profile_at(flat);
            CHECK(evaluate_mixed(g, MixedProfile::degenerate(a, g.strategy_counts())) == evaluate_pure(g, a));
        }
    }
}

TEST_CASE("induced correlated strategies are in bijection with mixed profiles") {
    std::mt19937_64 rng(1000003);
    Game g = random_game(rng, 3, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        MixedProfile sigma = random_profile(rng, g);
        auto back = recover_mixed(g, induced_correlated(g, sigma));
        REQUIRE(back.has_value());
        CHECK(*back == sigma);
        MixedProfile tau = random_profile(rng, g);
        if (!(tau == sigma)) CHECK(!(induced_correlated(g, tau) == induced_correlated(g, sigma)));
    }
}

TEST_CASE("payoffs are multilinear in each player's strategy") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        Game g = random_game(rng);
        MixedProfile base = random_profile(rng, g);
        int player = static_cast<int>(rng() % g.player_count());
        MixedStrategy y = random_simplex(rng, g.strategy_counts()[player]);
        MixedStrategy z = random_simplex(rng, g.strategy_counts()[player]);
        Rational t(static_cast<int>(rng() % 7), 7);

        MixedStrategy blend;
        blend.weights.resize(y.weights.size());
        for (size_t j = 0; j < blend.weights.size(); ++j)
            blend.weights[j] = t * y.weights[j] + (1 - t) * z.weights[j];

        MixedProfile with_y = base, with_z = base, with_blend = base;
        with_y.strategies[player] = y;
        with_z.strategies[player] = z;
        with_blend.strategies[player] = blend;

        PayoffVector expect = combine(QuadScalar(t), evaluate_mixed(g, with_y), evaluate_mixed(g, with_z));
        CHECK(evaluate_mixed(g, with_blend) == expect);
    }
}

TEST_CASE("double view matches exact evaluation") {
    std::mt19937_64 rng(99);
    Game g = fixtures::coordination_3x3();
    GameDoubleView view(g);
    for (int trial = 0; trial < 50; ++trial) {
        MixedProfile sigma = random_profile(rng, g);
        auto fast = view.evaluate_profile(sigma);
        auto exact = evaluate_mixed(g, sigma).to_doubles();
        for (size_t i = 0; i < fast.size(); ++i) CHECK(std::abs(fast[i] - exact[i]) < 1e-12);
    }
}

TEST_CASE("simplex invariants are enforced") {
    CHECK_THROWS_AS(ms({Rational(1, 2), Rational(1, 3)}), Error);
    CHECK_THROWS_AS(ms({Rational(3, 2), Rational(-1, 2)}), Error);
    CHECK_THROWS_AS(CorrelatedStrategy(std::vector<Rational>{}), Error);
    Game g = fixtures::diamond_2x2();
    MixedProfile bad = mp({MixedStrategy::uniform(2), MixedStrategy::uniform(3)});
    CHECK_THROWS_AS(evaluate_mixed(g, bad), Error);
}

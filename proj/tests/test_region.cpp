#include <catch2/catch_amalgamated.hpp>

#include "payreg/fixtures.hpp"
#include "payreg/region.hpp"

using namespace payreg;

namespace {

PayoffVector pt2(int x, int y) { return PayoffVector({QuadScalar(x), QuadScalar(y)}); }

std::vector<PayoffVector> values_of(const PurePayoffSet& s) {
    std::vector<PayoffVector> v;
    for (const auto& p : s.points) v.push_back(p.value);
    return v;
}

std::vector<PayoffVector> values_of(const HullVertexSet& s) {
    std::vector<PayoffVector> v;
    for (const auto& p : s.vertices) v.push_back(p.value);
    return v;
}

}  // namespace

TEST_CASE("pure payoff sets deduplicate exactly and keep generators") {
    PurePayoffSet s1 = pure_payoff_set(fixtures::diamond_2x2());
    CHECK(values_of(s1) == std::vector<PayoffVector>{pt2(0, 1), pt2(1, 0), pt2(2, 5), pt2(5, 2)});

    PurePayoffSet s2 = pure_payoff_set(fixtures::notched_rectangle_2x3());
    CHECK(values_of(s2) ==
          std::vector<PayoffVector>{pt2(0, 0), pt2(0, 1), pt2(0, 2), pt2(2, 2), pt2(3, 0), pt2(3, 2)});
    for (const auto& p : s2.points) CHECK(p.generators.size() == 1);

    Game constant({2, 2}, std::vector<PayoffVector>(4, pt2(0, 0)));
    PurePayoffSet sc = pure_payoff_set(constant);
    REQUIRE(sc.points.size() == 1);
    CHECK(sc.points[0].generators.size() == 4);

    // Every point re-evaluates exactly through each of its generators.
    Game g3 = fixtures::root2_2x2x2();
    for (const auto& p : pure_payoff_set(g3).points)
        for (const auto& a : p.generators) CHECK(evaluate_pure(g3, a) == p.value);
}

TEST_CASE("hull vertices match the known fixtures") {
    HullVertexSet h2 = hull_vertices(fixtures::notched_rectangle_2x3());
    CHECK(values_of(h2) == std::vector<PayoffVector>{pt2(0, 0), pt2(0, 2), pt2(3, 0), pt2(3, 2)});

    HullVertexSet h1 = hull_vertices(fixtures::diamond_2x2());
    CHECK(values_of(h1) == std::vector<PayoffVector>{pt2(0, 1), pt2(1, 0), pt2(2, 5), pt2(5, 2)});

    Game constant({1, 1}, {pt2(7, -3)});
    HullVertexSet hc = hull_vertices(constant);
    REQUIRE(hc.vertices.size() == 1);
    CHECK(hc.vertices[0].value == pt2(7, -3));

    // Certificates re-verify against the complement.
    PurePayoffSet spu = pure_payoff_set(fixtures::notched_rectangle_2x3());
    for (const auto& v : h2.vertices) {
        std::vector<PayoffVector> others;
        for (const auto& p : spu.points)
            if (!(p.value == v.value)) others.push_back(p.value);
        CHECK(verify_separation(v.value, others, v.certificate));
    }
}

TEST_CASE("hull vertices of the quadratic-field game") {
    HullVertexSet h = hull_vertices(fixtures::root2_2x2x2());
    REQUIRE(h.vertices.size() == 3);  // three distinct pure payoffs, all vertices
    for (const auto& v : h.vertices) CHECK(v.certificate.strict_margin.sign() > 0);
}

TEST_CASE("support function is exact with full argmax sets") {
    Game g1 = fixtures::diamond_2x2();
    SupportResult r = support_value(g1, {Rational(1), Rational(1)});
    CHECK(r.value == QuadScalar(7));
    CHECK(r.argmax_points == std::vector<PayoffVector>{pt2(2, 5), pt2(5, 2)});

    Game g2 = fixtures::notched_rectangle_2x3();
    SupportResult r2 = support_value(g2, {Rational(0), Rational(1)});
    CHECK(r2.value == QuadScalar(2));
    CHECK(r2.argmax_points == std::vector<PayoffVector>{pt2(0, 2), pt2(2, 2), pt2(3, 2)});

    CHECK_THROWS_AS(support_value(g2, {Rational(0), Rational(0)}), Error);
    CHECK_THROWS_AS(support_value(g2, {Rational(1)}), Error);
}

TEST_CASE("supporting hyperplane check separates supports from cuts") {
    Game g2 = fixtures::notched_rectangle_2x3();
    SampleConfig cfg;
    cfg.random_samples = 4000;
    SampleCloud cloud = sample_region(g2, cfg);

    HyperplaneReport top = supporting_hyperplane_check(g2, Hyperplane({Rational(0), Rational(1)}, Rational(2)), cloud);
    CHECK(top.supports);
    CHECK(top.cloud_consistent);
    CHECK(top.touching_points == std::vector<PayoffVector>{pt2(0, 2), pt2(2, 2), pt2(3, 2)});

    Game g4 = fixtures::coordination_3x3();
    SampleCloud cloud4 = sample_region(g4, cfg);
    HyperplaneReport cut = supporting_hyperplane_check(g4, Hyperplane({Rational(1), Rational(1)}, Rational(8)), cloud4);
    CHECK(!cut.supports);  // (8,2) scores 10 > 8

    HyperplaneReport above =
        supporting_hyperplane_check(g2, Hyperplane({Rational(0), Rational(1)}, Rational(3)), cloud);
    CHECK(!above.supports);
    CHECK(!above.touches);
    CHECK(above.cloud_consistent);
}

TEST_CASE("sampled clouds contain the grid corners and unilateral lines") {
    Game g1 = fixtures::diamond_2x2();
    SampleConfig tiny;
    tiny.grid_resolution = 2;
    tiny.random_samples = 0;
    tiny.refinement_rounds = 0;
    SampleCloud corners = sample_region(g1, tiny);
    CHECK(corners.size() == 4);
    for (const auto& p : pure_payoff_set(g1).points) {
        bool found = false;
        auto pd = p.value.to_doubles();
        for (size_t i = 0; i < corners.size(); ++i) {
            double d = std::max(std::abs(corners.payoff(i)[0] - pd[0]), std::abs(corners.payoff(i)[1] - pd[1]));
            found = found || d < 1e-14;
        }
        CHECK(found);
    }

    Game g4 = fixtures::coordination_3x3();
    SampleConfig cfg;
    cfg.grid_resolution = 16;
    cfg.random_samples = 0;
    cfg.refinement_rounds = 0;
    SampleCloud grid = sample_region(g4, cfg);
    int diag_hits = 0;
    for (int k = 0; k <= 15; ++k) {
        double q = k / 15.0;
        bool found = false;
        for (size_t i = 0; i < grid.size() && !found; ++i)
            found = std::abs(grid.payoff(i)[0] - 4 * q) < 1e-12 && std::abs(grid.payoff(i)[1] - 4 * q) < 1e-12;
        diag_hits += found;
    }
    CHECK(diag_hits == 16);
}

TEST_CASE("cloud generation is deterministic and thread-count independent") {
    Game g = fixtures::notched_rectangle_2x3();
    SampleConfig cfg;
    cfg.seed = 777;
    cfg.random_samples = 3000;
    SampleCloud a = sample_region(g, cfg);
    SampleCloud b = sample_region(g, cfg);
    CHECK(a == b);
    SampleConfig threaded = cfg;
    threaded.threads = 4;
    SampleCloud c = sample_region(g, threaded);
    CHECK(a == c);
    SampleConfig other = cfg;
    other.seed = 778;
    SampleCloud d = sample_region(g, other);
    CHECK(!(a == d));
}

TEST_CASE("every recorded payoff matches its reconstructed profile") {
    Game g = fixtures::coordination_3x3();
    SampleConfig cfg;
    cfg.random_samples = 500;
    cfg.refinement_rounds = 1;
    cfg.refinement_batch = 200;
    SampleCloud cloud = sample_region(g, cfg);
    for (size_t i = 0; i < cloud.size(); i += 7) {
        MixedProfile sigma = cloud.profile_at(i);
        auto exact = evaluate_mixed(g, sigma).to_doubles();
        for (int c = 0; c < cloud.dim(); ++c) CHECK(std::abs(exact[c] - cloud.payoff(i)[c]) <= 1e-12);
    }
}

TEST_CASE("support sandwich: cloud below support value, attained by pure points") {
    for (const auto& fixture : fixtures::all()) {
        Game g = fixture.build();
        SampleConfig cfg;
        cfg.random_samples = 2000;
        cfg.refinement_rounds = 1;
        cfg.refinement_batch = 500;
        SampleCloud cloud = sample_region(g, cfg);
        auto directions = direction_set(g.player_count(), 200, 99);
        for (const auto& c : directions) {
            SupportResult sup = support_value(g, c);
            double alpha = sup.value.to_double();
            std::vector<double> cd(c.size());
            for (size_t i = 0; i < c.size(); ++i) cd[i] = to_double(c[i]);
            double worst = -1e300;
            for (size_t i = 0; i < cloud.size(); ++i) {
                double val = 0;
                for (int k = 0; k < cloud.dim(); ++k) val += cd[k] * cloud.payoff(i)[k];
                worst = std::max(worst, val);
            }
            CHECK(worst <= alpha + 1e-9);
            REQUIRE(!sup.argmax.empty());
            CHECK(std::find(sup.argmax_points.begin(), sup.argmax_points.end(),
                            evaluate_pure(g, sup.argmax.front())) != sup.argmax_points.end());
        }
    }
}

TEST_CASE("every supporting hyperplane from the sweep contains a hull vertex") {
    for (const auto& fixture : fixtures::all()) {
        Game g = fixture.build();
        HullVertexSet hull = hull_vertices(g);
        auto directions = direction_set(g.player_count(), 100, 5);
        for (const auto& c : directions) {
            SupportResult sup = support_value(g, c);
            bool touches_vertex = false;
            for (const auto& p : sup.argmax_points) touches_vertex = touches_vertex || hull.contains(p);
            CHECK(touches_vertex);
        }
    }
}

TEST_CASE("resolution below two is rejected") {
    SampleConfig cfg;
    cfg.grid_resolution = 1;
    CHECK_THROWS_AS(sample_region(fixtures::diamond_2x2(), cfg), Error);
}

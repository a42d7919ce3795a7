#pragma once

#include <vector>

#include "payreg/game.hpp"

namespace payreg::fixtures {

namespace detail {

inline PayoffVector pv(std::vector<QuadScalar> c) { return PayoffVector(std::move(c)); }

inline Game make(std::vector<int> counts, std::vector<PayoffVector> cells, int64_t d = 2) {
    std::vector<std::vector<std::string>> names;
    for (size_t i = 0; i < counts.size(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < counts[i]; ++j) row.push_back("a" + std::to_string(i + 1) + std::to_string(j + 1));
        names.push_back(std::move(row));
    }
    return Game(std::move(counts), std::move(cells), d, std::move(names));
}

}  // namespace detail

/// 2x2 game whose four pure payoffs (0,1), (5,2), (2,5), (1,0) are all hull
/// vertices: hull vertices, extreme points, and pure payoffs coincide.
inline Game diamond_2x2() {
    using detail::pv;
    return detail::make({2, 2}, {
                                    pv({0, 1}), pv({5, 2}),  // a11 row
                                    pv({2, 5}), pv({1, 0}),  // a12 row
                                });
}

/// 2x3 game whose hull is the rectangle [0,3]x[0,2] with a notch: (2,2) is a
/// convex corner of the mixed region but not a hull vertex, and (0,1) is a
/// pure payoff achievable by mixing.
inline Game notched_rectangle_2x3() {
    using detail::pv;
    return detail::make({2, 3}, {
                                    pv({0, 2}), pv({0, 1}), pv({0, 0}),  // a11 row
                                    pv({3, 0}), pv({3, 2}), pv({2, 2}),  // a12 row
                                });
}

/// 2x2 game where the origin payoff is achievable by mixing (whole a11 row is
/// (0,0)) and is an extreme point of the mixed region (triangle vertex).
inline Game mixable_origin_2x2() {
    using detail::pv;
    return detail::make({2, 2}, {
                                    pv({0, 0}), pv({0, 0}),    // a11 row
                                    pv({-1, -1}), pv({1, -1}),  // a12 row
                                });
}

/// 2x2 game where the origin payoff is achievable only by the pure profile
/// (a12, a21) yet is not extreme: the segment (-1,0)..(1,0) lies in the
/// mixed region with the origin in its interior.
inline Game nonmixable_origin_2x2() {
    using detail::pv;
    return detail::make({2, 2}, {
                                    pv({-1, 0}), pv({0, -1}),  // a11 row
                                    pv({0, 0}), pv({1, 0}),    // a12 row
                                });
}

/// 3x3 coordination game with diagonal payoffs (4,4), (8,2), (2,8): the point
/// (4,4) is a convex corner of the mixed region but lies strictly inside the
/// hull, so no supporting hyperplane passes through it.
inline Game coordination_3x3() {
    using detail::pv;
    return detail::make({3, 3}, {
                                    pv({4, 4}), pv({0, 0}), pv({0, 0}),
                                    pv({0, 0}), pv({8, 2}), pv({0, 0}),
                                    pv({0, 0}), pv({0, 0}), pv({2, 8}),
                                });
}

/// Three-player 2x2x2 game with entries in Q(sqrt(2)). Player 3's strategy is
/// payoff-irrelevant (both slices identical, stored in full). Rational joint
/// distributions can never weakly improve on the payoff (0,0,-1): doing so
/// forces the diagonal masses into the irrational ratio sqrt(2).
inline Game root2_2x2x2() {
    using detail::pv;
    QuadScalar r2 = QuadScalar::sqrt_d(2);
    std::vector<PayoffVector> slice = {
        pv({r2, -1, 1}), pv({0, 0, -1}),   // a11 row
        pv({0, 0, -1}), pv({-2, r2, 1}),   // a12 row
    };
    std::vector<PayoffVector> cells;
    for (size_t rc = 0; rc < 4; ++rc)
        for (int k = 0; k < 2; ++k) cells.push_back(slice[rc]);  // (r1,r2,a31),(r1,r2,a32)
    // Row-major with player 3 fastest: (r1,r2,r3) -> slice[r1*2+r2] for both r3.
    return detail::make({2, 2, 2}, std::move(cells));
}

/// 2x2 game whose mixed-region boundary has a horizontal tangent at (1,2):
/// payoffs (0,2), (2,2) / (2,0), (0,2). Near (1,2) the boundary is a
/// parabola-like envelope of unilateral segments.
inline Game flat_tangent_2x2() {
    using detail::pv;
    return detail::make({2, 2}, {
                                    pv({0, 2}), pv({2, 2}),  // a11 row
                                    pv({2, 0}), pv({0, 2}),  // a12 row
                                });
}

struct NamedFixture {
    const char* name;
    Game (*build)();
};

inline const std::vector<NamedFixture>& all() {
    static const std::vector<NamedFixture> games = {
        {"diamond_2x2", diamond_2x2},
        {"notched_rectangle_2x3", notched_rectangle_2x3},
        {"mixable_origin_2x2", mixable_origin_2x2},
        {"nonmixable_origin_2x2", nonmixable_origin_2x2},
        {"coordination_3x3", coordination_3x3},
        {"root2_2x2x2", root2_2x2x2},
        {"flat_tangent_2x2", flat_tangent_2x2},
    };
    return games;
}

/// The six two-player fixtures (everything except root2_2x2x2).
inline std::vector<NamedFixture> planar() {
    std::vector<NamedFixture> out;
    for (const auto& f : all())
        if (std::string(f.name) != "root2_2x2x2") out.push_back(f);
    return out;
}

}  // namespace payreg::fixtures

#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "payreg/parallel.hpp"
#include "payreg/sampling.hpp"
#include "payreg/separation.hpp"

namespace payreg {

/// A pure payoff point with every pure profile that generates it.
struct PurePayoffPoint {
    PayoffVector value;
    std::vector<PureProfile> generators;
};

/// All distinct pure payoff points, sorted lexicographically. Duplicate
/// payoffs are merged exactly; their generators are all retained.
struct PurePayoffSet {
    std::vector<PurePayoffPoint> points;

    int index_of(const PayoffVector& v) const {
        for (size_t i = 0; i < points.size(); ++i)
            if (points[i].value == v) return static_cast<int>(i);
        return -1;
    }
};

inline PurePayoffSet pure_payoff_set(const Game& game) {
    std::map<PayoffVector, std::vector<PureProfile>> dedup;
    for (size_t flat = 0; flat < game.profile_count(); ++flat)
        dedup[game.payoff_table()[flat]].push_back(game.profile_at(flat));
    PurePayoffSet out;
    out.points.reserve(dedup.size());
    for (auto& [value, gens] : dedup) {
        std::sort(gens.begin(), gens.end());
        out.points.push_back({value, std::move(gens)});
    }
    return out;
}

struct HullVertex {
    PayoffVector value;
    SeparationCertificate certificate;
    std::vector<PureProfile> generators;
};

/// The vertex set of the convex hull of the pure payoffs, each vertex with a
/// strict-separation certificate against the remaining points. Never empty.
struct HullVertexSet {
    std::vector<HullVertex> vertices;          // lexicographic order
    std::vector<bool> is_vertex;               // parallel to PurePayoffSet::points

    bool contains(const PayoffVector& v) const {
        for (const auto& h : vertices)
            if (h.value == v) return true;
        return false;
    }
};

inline HullVertexSet hull_vertices(const PurePayoffSet& spu, int threads = 1) {
    const size_t k = spu.points.size();
    HullVertexSet out;
    out.is_vertex.assign(k, false);
    std::vector<SeparationResult> results(k);
    parallel_for(k, threads, [&](size_t i) {
        std::vector<PayoffVector> others;
        others.reserve(k - 1);
        for (size_t j = 0; j < k; ++j)
            if (j != i) others.push_back(spu.points[j].value);
        results[i] = separate_point(spu.points[i].value, others);
    });
    for (size_t i = 0; i < k; ++i) {
        if (!results[i].separable) continue;
        out.is_vertex[i] = true;
        out.vertices.push_back({spu.points[i].value, results[i].certificate, spu.points[i].generators});
    }
    return out;
}

inline HullVertexSet hull_vertices(const Game& game, int threads = 1) {
    return hull_vertices(pure_payoff_set(game), threads);
}

struct Hyperplane {
    std::vector<Rational> normal;  // nonzero
    Rational offset;

    Hyperplane(std::vector<Rational> c, Rational alpha) : normal(std::move(c)), offset(std::move(alpha)) {
        bool nonzero = false;
        for (const auto& x : normal) nonzero = nonzero || x != 0;
        if (!nonzero) raise(errc::invalid_direction, "hyperplane normal must be nonzero");
    }
};

struct SupportResult {
    QuadScalar value;                        // max of c . v over the pure payoffs
    std::vector<PureProfile> argmax;         // every attaining pure profile
    std::vector<PayoffVector> argmax_points; // distinct attaining payoff points
};

/// Exact support function of the payoff regions in direction c. The maximum
/// over pure payoffs equals the maximum over the mixed and correlated regions
/// (the latter is the convex hull, the former generates it).
inline SupportResult support_value(const Game& game, const std::vector<Rational>& direction) {
    if (static_cast<int>(direction.size()) != game.player_count())
        raise(errc::invalid_direction, "direction dimension mismatch");
    bool nonzero = false;
    for (const auto& c : direction) nonzero = nonzero || c != 0;
    if (!nonzero) raise(errc::invalid_direction, "zero direction");

    SupportResult out;
    bool first = true;
    for (size_t flat = 0; flat < game.profile_count(); ++flat) {
        QuadScalar val = dot(direction, game.payoff_table()[flat]);
        Sign cmp_res = first ? Sign::positive : compare(val, out.value);
        if (first || cmp_res == Sign::positive) {
            out.value = val;
            out.argmax.clear();
            out.argmax_points.clear();
            first = false;
            cmp_res = Sign::zero;
        }
        if (cmp_res == Sign::zero) {
            out.argmax.push_back(game.profile_at(flat));
            const PayoffVector& pv = game.payoff_table()[flat];
            if (std::find(out.argmax_points.begin(), out.argmax_points.end(), pv) == out.argmax_points.end())
                out.argmax_points.push_back(pv);
        }
    }
    std::sort(out.argmax_points.begin(), out.argmax_points.end());
    return out;
}

struct HyperplaneReport {
    bool supports = false;
    bool touches = false;                      // some pure payoff attains the offset
    bool cloud_consistent = true;              // every sample is on the inner side (tolerance)
    std::optional<PayoffVector> touching_point;
    double cloud_max = 0.0;
    std::vector<PayoffVector> touching_points;
};

/// Exact supporting-hyperplane test over the pure payoffs, plus a sampled
/// consistency check of the mixed region: a hyperplane supports the mixed
/// region iff it supports the hull, and then it touches a point that is
/// extreme for both.
inline HyperplaneReport supporting_hyperplane_check(const Game& game, const Hyperplane& h, const SampleCloud& cloud,
                                                    double cloud_tol = 1e-9) {
    HyperplaneReport report;
    QuadScalar alpha{h.offset};
    bool all_below = true, touches = false;
    for (size_t flat = 0; flat < game.profile_count(); ++flat) {
        QuadScalar val = dot(h.normal, game.payoff_table()[flat]);
        Sign s = compare(val, alpha);
        if (s == Sign::positive) all_below = false;
        if (s == Sign::zero) {
            touches = true;
            const PayoffVector& pv = game.payoff_table()[flat];
            if (std::find(report.touching_points.begin(), report.touching_points.end(), pv) ==
                report.touching_points.end())
                report.touching_points.push_back(pv);
        }
    }
    std::sort(report.touching_points.begin(), report.touching_points.end());
    report.touches = touches;
    report.supports = all_below && touches;
    if (!report.touching_points.empty()) report.touching_point = report.touching_points.front();

    std::vector<double> c(h.normal.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = to_double(h.normal[i]);
    double alpha_d = to_double(h.offset);
    double worst = -1e300;
    for (size_t i = 0; i < cloud.size(); ++i) {
        double val = 0;
        for (int k = 0; k < cloud.dim(); ++k) val += c[k] * cloud.payoff(i)[k];
        worst = std::max(worst, val);
    }
    report.cloud_max = cloud.size() ? worst : alpha_d;
    report.cloud_consistent = report.cloud_max <= alpha_d + cloud_tol;
    return report;
}

}  // namespace payreg

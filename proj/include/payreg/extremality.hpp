#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "payreg/membership.hpp"
#include "payreg/region.hpp"

namespace payreg {

struct ExtremalityConfig {
    int directions = 720;       // sweep directions (planar default)
    double r0 = 1e-2;           // initial sweep radius
    int radius_halvings = 5;
    int interior_samples = 9;   // sampled interior points per segment witness
    double tol = 1e-9;
    double delta = 1e-3;        // flatness probe: exclusion radius around extreme points
    double nondegen_margin = 1e-3;
    int exact_call_budget = 256;   // membership solves the sweep may spend
    int sweep_grid = 256;          // planar membership grid used inside the sweep
    uint64_t seed = 0x5eed;
    int threads = 1;
    MembershipConfig membership;
    SampleConfig sampling;
};

/// Constructive disproof of extremality: a segment inside the mixed region
/// with the point strictly interior, plus membership witnesses at sampled
/// parameters (always including both endpoints and the point itself).
struct SegmentWitness {
    PayoffVector endpoint1, endpoint2;
    double theta = 0.5;  // v ~ theta*endpoint1 + (1-theta)*endpoint2
    double combination_residual = 0.0;
    double issued_tol = 1e-9;
    std::vector<MembershipWitness> point_witnesses;
};

inline bool verify_segment_witness(const Game& game, const PayoffVector& v, const SegmentWitness& w,
                                   double tol, int min_interior = 1) {
    auto e1 = w.endpoint1.to_doubles(), e2 = w.endpoint2.to_doubles(), vd = v.to_doubles();
    double sep = 0, comb = 0;
    for (size_t c = 0; c < e1.size(); ++c) {
        sep = std::max(sep, std::abs(e1[c] - e2[c]));
        comb = std::max(comb, std::abs(vd[c] - (w.theta * e1[c] + (1 - w.theta) * e2[c])));
    }
    if (sep <= 1e-6) return false;
    if (!(w.theta > 0 && w.theta < 1)) return false;
    if (comb > 1e-9) return false;
    int interior = 0;
    bool saw_e1 = false, saw_e2 = false;
    for (const auto& pw : w.point_witnesses) {
        if (!verify_membership(game, pw, tol)) return false;
        auto t = pw.target.to_doubles();
        double d1 = 0, d2 = 0;
        for (size_t c = 0; c < t.size(); ++c) {
            d1 = std::max(d1, std::abs(t[c] - e1[c]));
            d2 = std::max(d2, std::abs(t[c] - e2[c]));
        }
        if (d1 < 1e-12)
            saw_e1 = true;
        else if (d2 < 1e-12)
            saw_e2 = true;
        else
            ++interior;
    }
    return saw_e1 && saw_e2 && interior >= min_interior;
}

enum class Extremality { certified, numeric, not_extreme };

inline const char* extremality_name(Extremality e) {
    switch (e) {
        case Extremality::certified: return "EXTREME_CERTIFIED";
        case Extremality::numeric: return "EXTREME_NUMERIC";
        case Extremality::not_extreme: return "NOT_EXTREME";
    }
    return "?";
}

struct PointClassification {
    PayoffVector value;
    Extremality status = Extremality::numeric;
    std::optional<SeparationCertificate> certificate;  // certified points
    std::optional<SegmentWitness> witness;             // non-extreme points
};

struct ClassificationReport {
    PurePayoffSet spu;
    HullVertexSet hull;
    std::vector<PointClassification> points;  // parallel to spu.points
    int directions = 0;
    double epsilon = 0;  // finest sweep radius

    const PointClassification* find(const PayoffVector& v) const {
        for (const auto& p : points)
            if (p.value == v) return &p;
        return nullptr;
    }
};

struct MixabilityResult {
    bool mixable = false;
    std::optional<MixedProfile> witness;
    bool exact = false;      // witness came from an exact linear solve
    double residual = 0.0;
    // resolution parameters recorded for negative answers
    int starts_tried = 0;
    double margin = 0.0;
};

namespace detail {

struct UnilateralRay {
    PayoffVector endpoint;
    std::vector<QuadScalar> dir;  // endpoint - v, nonzero
    MixedProfile base;
    int player, from, to;
    Rational t_max;
};

inline MixedProfile ray_profile(const UnilateralRay& ray, const Rational& fraction) {
    MixedProfile sigma = ray.base;
    Rational shift = fraction * ray.t_max;
    sigma.strategies[ray.player].weights[ray.from] -= shift;
    sigma.strategies[ray.player].weights[ray.to] += shift;
    return sigma;
}

/// Weight extraction: rational solutions pass through; Q(sqrt(d)) vertex
/// weights only survive if they happen to be rational.
template <typename F>
struct MembershipRationalize;
template <>
struct MembershipRationalize<Rational> {
    static Rational weight(const Rational& x) { return x; }
};
template <>
struct MembershipRationalize<QuadScalar> {
    static Rational weight(const QuadScalar& x) {
        if (x.is_rational()) return x.rational_part();
        return Rational(-1);  // flag: not representable
    }
};

/// Exact unilateral preimages of v with one player's strategy free: for each
/// player and each pure assignment of the others, the feasible mixtures form
/// a polytope; collect a few of its vertices via objective sweeps.
template <typename F>
void unilateral_preimages_impl(const Game& game, const PayoffVector& v, std::vector<MixedProfile>& out,
                               std::vector<MixedProfile>* nondegenerate_first) {
    const int n = game.player_count();
    const auto& counts = game.strategy_counts();
    for (int i = 0; i < n; ++i) {
        // Enumerate pure assignments of everyone but i.
        size_t combos = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) combos *= counts[j];
        for (size_t code = 0; code < combos; ++code) {
            PureProfile others;
            others.indices.assign(n, 0);
            size_t rest = code;
            for (int j = n - 1; j >= 0; --j) {
                if (j == i) continue;
                others.indices[j] = static_cast<int>(rest % counts[j]);
                rest /= counts[j];
            }
            // Columns u(e_j for player i, others).
            std::vector<std::vector<F>> cols;
            for (int j = 0; j < counts[i]; ++j) {
                PureProfile a = others;
                a.indices[i] = j;
                std::vector<F> col;
                for (const auto& c : evaluate_pure(game, a).coords) col.push_back(scalar_to_field<F>(c));
                cols.push_back(std::move(col));
            }
            std::vector<F> tgt;
            for (const auto& c : v.coords) tgt.push_back(scalar_to_field<F>(c));

            std::vector<std::vector<F>> vertices;
            bool feasible = true;
            for (int obj = 0; obj < 2 * counts[i] && feasible; ++obj) {
                int var = obj % counts[i];
                bool maximize = obj < counts[i];
                LpProblem<F> lp;
                std::vector<int> x(counts[i]);
                for (int j = 0; j < counts[i]; ++j) x[j] = lp.add_var();
                for (int c = 0; c < n; ++c) {
                    std::vector<std::pair<int, F>> terms;
                    for (int j = 0; j < counts[i]; ++j)
                        if (field_sign(cols[j][c]) != 0) terms.emplace_back(x[j], cols[j][c]);
                    lp.add_row(std::move(terms), Rel::eq, tgt[c]);
                }
                {
                    std::vector<std::pair<int, F>> sum;
                    for (int j = 0; j < counts[i]; ++j) sum.emplace_back(x[j], F(1));
                    lp.add_row(std::move(sum), Rel::eq, F(1));
                }
                lp.set_objective(maximize, {{x[var], F(1)}});
                auto sol = lp.solve();
                if (sol.status != LpStatus::optimal) {
                    feasible = false;
                    break;
                }
                std::vector<F> vert(sol.values.begin(), sol.values.begin() + counts[i]);
                if (std::find(vertices.begin(), vertices.end(), vert) == vertices.end()) vertices.push_back(vert);
            }
            if (!feasible || vertices.empty()) continue;

            auto to_profile = [&](const std::vector<F>& weights) -> std::optional<MixedProfile> {
                std::vector<Rational> w;
                for (const auto& x : weights) {
                    Rational r = MembershipRationalize<F>::weight(x);
                    if (r.sign() < 0) r = 0;
                    w.push_back(r);
                }
                Rational sum(0);
                for (const auto& r : w) sum += r;
                if (sum != 1) return std::nullopt;  // irrational vertex; skip
                MixedProfile sigma = MixedProfile::degenerate(others, counts);
                sigma.strategies[i] = MixedStrategy(w);
                if (!(evaluate_mixed(game, sigma) == v)) return std::nullopt;
                return sigma;
            };

            for (const auto& vert : vertices) {
                auto sigma = to_profile(vert);
                if (!sigma) continue;
                out.push_back(*sigma);
                if (nondegenerate_first && !sigma->strategies[i].as_pure().has_value()) {
                    nondegenerate_first->push_back(*sigma);
                    return;  // first exact non-degenerate witness wins
                }
            }
            if (nondegenerate_first && vertices.size() >= 2) {
                // Midpoint of two distinct vertices is a non-vertex solution.
                std::vector<F> mid(vertices[0].size());
                for (size_t j = 0; j < mid.size(); ++j)
                    mid[j] = (vertices[0][j] + vertices[1][j]) / F(2);
                auto sigma = to_profile(mid);
                if (sigma && !sigma->strategies[i].as_pure().has_value()) {
                    nondegenerate_first->push_back(*sigma);
                    return;
                }
            }
        }
    }
}

inline std::vector<MixedProfile> unilateral_preimages(const Game& game, const PayoffVector& v,
                                                      std::vector<MixedProfile>* nondegenerate_first = nullptr) {
    std::vector<MixedProfile> out;
    bool quad = game.has_irrational_payoffs();
    for (const auto& c : v.coords) quad = quad || !c.is_rational();
    if (quad)
        unilateral_preimages_impl<QuadScalar>(game, v, out, nondegenerate_first);
    else
        unilateral_preimages_impl<Rational>(game, v, out, nondegenerate_first);
    return out;
}

/// All maximal unilateral rays through exact preimages of v.
inline std::vector<UnilateralRay> collect_rays(const Game& game, const PayoffVector& v,
                                               const std::vector<MixedProfile>& preimages) {
    std::vector<UnilateralRay> rays;
    const auto& counts = game.strategy_counts();
    for (const auto& sigma : preimages) {
        for (int i = 0; i < game.player_count(); ++i) {
            for (int from = 0; from < counts[i]; ++from) {
                if (sigma.strategies[i].weights[from] == 0) continue;
                for (int to = 0; to < counts[i]; ++to) {
                    if (to == from) continue;
                    UnilateralRay ray;
                    ray.base = sigma;
                    ray.player = i;
                    ray.from = from;
                    ray.to = to;
                    ray.t_max = sigma.strategies[i].weights[from];
                    MixedProfile end = ray_profile(ray, Rational(1));
                    ray.endpoint = evaluate_mixed(game, end);
                    if (ray.endpoint == v) continue;  // payoff does not move this way
                    ray.dir.resize(v.coords.size());
                    for (size_t c = 0; c < v.coords.size(); ++c)
                        ray.dir[c] = ray.endpoint.coords[c] - v.coords[c];
                    rays.push_back(std::move(ray));
                }
            }
        }
    }
    return rays;
}

/// dir1 == -s * dir2 for some s > 0?
inline std::optional<QuadScalar> antiparallel_scale(const std::vector<QuadScalar>& dir1,
                                                    const std::vector<QuadScalar>& dir2) {
    int pivot = -1;
    for (size_t c = 0; c < dir2.size(); ++c)
        if (!dir2[c].is_zero()) {
            pivot = static_cast<int>(c);
            break;
        }
    if (pivot < 0) return std::nullopt;
    QuadScalar s = -(dir1[pivot] / dir2[pivot]);
    if (s.sign() != Sign::positive) return std::nullopt;
    for (size_t c = 0; c < dir1.size(); ++c)
        if (!(dir1[c] + s * dir2[c]).is_zero()) return std::nullopt;
    return s;
}

}  // namespace detail

/// Shared state for per-candidate classification runs.
class ExtremalityAnalyzer {
public:
    ExtremalityAnalyzer(const Game& game, ExtremalityConfig config = {})
        : game_(&game), config_(std::move(config)), view_(game) {
        config_.membership.tol = config_.tol;
        config_.membership.seed = config_.seed;
        config_.sampling.seed = config_.seed;
        config_.sampling.threads = config_.threads;
        solver_ = std::make_unique<MembershipSolver>(game, config_.membership);
        spu_ = pure_payoff_set(game);
        hull_ = hull_vertices(spu_, config_.threads);
    }

    const PurePayoffSet& spu() const { return spu_; }
    const HullVertexSet& hull() const { return hull_; }
    const SampleCloud& cloud() {
        ensure_cloud();
        return *cloud_;
    }

    /// Search for a segment inside the mixed region with v strictly interior.
    /// Hint profiles (exact preimages of v) seed the unilateral phase.
    std::optional<SegmentWitness> segment_witness_search(const PayoffVector& v,
                                                         const std::vector<MixedProfile>& hints = {}) {
        // Exact preimages: pure generators, unilateral solves, hints, and a
        // full membership solve if none of those apply.
        std::vector<MixedProfile> preimages;
        int idx = spu_.index_of(v);
        if (idx >= 0)
            for (const auto& a : spu_.points[idx].generators)
                preimages.push_back(MixedProfile::degenerate(a, game_->strategy_counts()));
        for (const auto& h : hints)
            if (evaluate_mixed(*game_, h) == v) preimages.push_back(h);
        for (auto& p : detail::unilateral_preimages(*game_, v)) preimages.push_back(std::move(p));
        if (preimages.empty()) {
            auto w = solver_->solve(v);
            if (!w) return std::nullopt;  // not witnessed in the region at all
            if (evaluate_mixed(*game_, w->profile) == v) preimages.push_back(w->profile);
        }

        auto rays = detail::collect_rays(*game_, v, preimages);
        for (size_t a = 0; a < rays.size(); ++a) {
            for (size_t b = a + 1; b < rays.size(); ++b) {
                auto s = detail::antiparallel_scale(rays[a].dir, rays[b].dir);
                if (!s) continue;
                return exact_witness(v, rays[a], rays[b]);
            }
        }
        return sweep_search(v);
    }

    PointClassification classify_point(int spu_index) {
        PointClassification out;
        out.value = spu_.points[spu_index].value;
        if (hull_.is_vertex[spu_index]) {
            out.status = Extremality::certified;
            for (const auto& h : hull_.vertices)
                if (h.value == out.value) out.certificate = h.certificate;
            return out;
        }
        auto w = segment_witness_search(out.value);
        if (w) {
            out.status = Extremality::not_extreme;
            out.witness = std::move(w);
        } else {
            out.status = Extremality::numeric;
        }
        return out;
    }

    ClassificationReport classify_all() {
        ClassificationReport report;
        report.spu = spu_;
        report.hull = hull_;
        report.directions = config_.directions;
        report.epsilon = config_.r0 * std::pow(0.5, config_.radius_halvings);
        report.points.resize(spu_.points.size());
        ensure_cloud();
        // Candidate searches share the analyzer's caches; iterate serially in
        // canonical order (searches are already internally deterministic).
        for (size_t i = 0; i < spu_.points.size(); ++i) report.points[i] = classify_point(static_cast<int>(i));
        return report;
    }

    /// Search for a non-degenerate profile generating v: exact unilateral
    /// solves first, then margin-constrained numeric descent.
    MixabilityResult mixability(const PayoffVector& v) {
        MixabilityResult res;
        res.margin = config_.nondegen_margin;

        std::vector<MixedProfile> nondegen;
        detail::unilateral_preimages(*game_, v, &nondegen);
        if (!nondegen.empty()) {
            res.mixable = true;
            res.exact = true;
            res.residual = 0.0;
            res.witness = nondegen.front();
            return res;
        }

        // Numeric fallback: require one designated player to stay a margin
        // away from pure, so near-degenerate solutions cannot fake the answer.
        const auto& counts = game_->strategy_counts();
        Rational cap = Rational(1) - rational_from_double(config_.nondegen_margin);
        Rng rng(config_.seed);
        for (int designated = 0; designated < game_->player_count(); ++designated) {
            if (counts[designated] < 2) continue;
            std::vector<MixedProfile> starts;
            {
                std::vector<MixedStrategy> uniform;
                for (int m : counts) uniform.push_back(MixedStrategy::uniform(m));
                starts.push_back(MixedProfile(std::move(uniform)));
            }
            std::vector<double> w;
            for (int s = 0; s < 8; ++s) {
                w.clear();
                for (int m : counts) {
                    size_t at = w.size();
                    w.resize(at + m);
                    rng.next_simplex(m, &w[at]);
                }
                starts.push_back(profile_from_doubles(counts, w.data()));
            }
            for (auto& start : starts) {
                ++res.starts_tried;
                clamp_to_cap(start.strategies[designated], cap);
                double r = capped_descent(start, v, designated, cap);
                if (r <= config_.tol) {
                    res.mixable = true;
                    res.exact = false;
                    res.residual = r;
                    res.witness = start;
                    return res;
                }
            }
        }
        return res;
    }

    const ExtremalityConfig& config() const { return config_; }
    MembershipSolver& solver() { return *solver_; }

private:
    void ensure_cloud() {
        if (!cloud_) {
            cloud_ = std::make_unique<SampleCloud>(sample_region(*game_, config_.sampling));
            double extent = 1.0;
            for (int c = 0; c < game_->player_count(); ++c) {
                double lo = 1e300, hi = -1e300;
                for (size_t i = 0; i < cloud_->size(); ++i) {
                    lo = std::min(lo, cloud_->payoff(i)[c]);
                    hi = std::max(hi, cloud_->payoff(i)[c]);
                }
                extent = std::max(extent, hi - lo);
            }
            double spacing = extent / std::pow(static_cast<double>(std::max<size_t>(cloud_->size(), 2)),
                                               1.0 / game_->player_count());
            reject_radius_ = std::max(4 * spacing, 1e-6);
            index_ = std::make_unique<CloudIndex>(*cloud_, std::max(reject_radius_, extent / 64));
        }
    }

    std::optional<SegmentWitness> exact_witness(const PayoffVector& v, const detail::UnilateralRay& r1,
                                                const detail::UnilateralRay& r2) {
        SegmentWitness w;
        w.endpoint1 = r1.endpoint;
        w.endpoint2 = r2.endpoint;
        w.issued_tol = config_.tol;
        // v = theta*w1 + (1-theta)*w2 exactly; pick a coordinate that moves.
        int c = -1;
        for (size_t k = 0; k < v.coords.size(); ++k)
            if (!(w.endpoint1.coords[k] - w.endpoint2.coords[k]).is_zero()) {
                c = static_cast<int>(k);
                break;
            }
        QuadScalar theta =
            (v.coords[c] - w.endpoint2.coords[c]) / (w.endpoint1.coords[c] - w.endpoint2.coords[c]);
        w.theta = theta.to_double();
        w.combination_residual = 0.0;

        // Sample at rational fractions of each ray: profiles and targets stay
        // exact even when theta itself is irrational. Residuals are 0 by
        // multilinearity.
        auto add_ray_point = [&](const detail::UnilateralRay& ray, const Rational& f) {
            MixedProfile profile = detail::ray_profile(ray, f);
            PayoffVector target = evaluate_mixed(*game_, profile);
            w.point_witnesses.push_back(MembershipWitness{target, profile, 0.0});
        };
        // v itself, then both endpoints.
        w.point_witnesses.push_back(MembershipWitness{v, r1.base, 0.0});
        add_ray_point(r1, Rational(1));
        add_ray_point(r2, Rational(1));
        int K = std::max(config_.interior_samples, 1);
        int per_ray = (K + 1) / 2;
        for (int k = 1; k <= per_ray; ++k) {
            add_ray_point(r1, Rational(k, per_ray + 1));
            add_ray_point(r2, Rational(k, per_ray + 1));
        }
        return w;
    }

    /// Direction sweep with cloud pre-filtering and a budget of exact
    /// membership solves. Failing to find a witness here is a resolution
    /// statement, not a proof.
    std::optional<SegmentWitness> sweep_search(const PayoffVector& v) {
        ensure_cloud();
        const int n = game_->player_count();
        auto vd = v.to_doubles();

        // Active supporting hyperplanes at v restrict candidate segments to
        // their intersection (segments through a support point stay in the
        // face). Only the planar case is reduced; higher dimensions sweep all.
        std::vector<std::vector<double>> dirs;
        if (n == 2) {
            std::vector<std::vector<Rational>> active;
            for (const auto& c : direction_set(2, config_.directions, config_.seed)) {
                SupportResult sup = support_value(*game_, c);
                if (compare(dot(c, v), sup.value) == Sign::zero) active.push_back(c);
            }
            if (!active.empty()) {
                const auto& c = active.front();
                double t0 = to_double(c[1]), t1 = -to_double(c[0]);
                double norm = std::hypot(t0, t1);
                dirs.push_back({t0 / norm, t1 / norm});
            }
        }
        if (dirs.empty()) {
            for (const auto& c : direction_set(n, config_.directions, config_.seed)) {
                std::vector<double> d(n);
                double norm = 0;
                for (int k = 0; k < n; ++k) {
                    d[k] = to_double(c[k]);
                    norm += d[k] * d[k];
                }
                norm = std::sqrt(norm);
                if (norm == 0) continue;
                for (auto& x : d) x /= norm;
                dirs.push_back(std::move(d));
            }
        }

        int budget = config_.exact_call_budget;
        std::vector<double> probe(n);
        for (const auto& d : dirs) {
            double r = config_.r0;
            for (int h = 0; h <= config_.radius_halvings && budget > 0; ++h, r /= 2) {
                bool near_cloud = true;
                for (int side = -1; side <= 1 && near_cloud; side += 2) {
                    for (int k = 0; k < n; ++k) probe[k] = vd[k] + side * r * d[k];
                    near_cloud = index_->nearest_distance(probe.data(), reject_radius_) < reject_radius_;
                }
                if (!near_cloud) continue;
                auto witness = try_segment(v, vd, d, r, budget);
                if (witness) return witness;
            }
        }
        return std::nullopt;
    }

    std::optional<SegmentWitness> try_segment(const PayoffVector& v, const std::vector<double>& vd,
                                              const std::vector<double>& d, double r, int& budget) {
        const int n = game_->player_count();
        int K = std::max(config_.interior_samples, 1);
        // Sample parameters in [-1, 1] (scaled by r), endpoints first.
        std::vector<double> params = {1.0, -1.0};
        for (int k = 1; k <= K; ++k) {
            double t = static_cast<double>(k) / (K + 1);
            params.push_back(t);
            params.push_back(-t);
        }
        std::vector<MembershipWitness> found;
        for (double t : params) {
            if (budget <= 0) return std::nullopt;
            PayoffVector target;
            target.coords.resize(n);
            for (int c = 0; c < n; ++c) target.coords[c] = QuadScalar(rational_from_double(vd[c] + t * r * d[c]));
            --budget;
            auto w = solver_->solve(target, config_.sweep_grid);
            if (!w) return std::nullopt;
            found.push_back(std::move(*w));
        }
        SegmentWitness w;
        w.endpoint1 = found[0].target;
        w.endpoint2 = found[1].target;
        w.theta = 0.5;
        w.issued_tol = config_.tol;
        double comb = 0;
        for (int c = 0; c < n; ++c) {
            double mid = 0.5 * (w.endpoint1.coords[c].to_double() + w.endpoint2.coords[c].to_double());
            comb = std::max(comb, std::abs(vd[c] - mid));
        }
        w.combination_residual = comb;
        if (comb > 1e-9) return std::nullopt;
        w.point_witnesses = std::move(found);
        // v itself, exactly.
        int idx = spu_.index_of(v);
        if (idx >= 0)
            w.point_witnesses.push_back(MembershipWitness{
                v, MixedProfile::degenerate(spu_.points[idx].generators.front(), game_->strategy_counts()), 0.0});
        else if (auto self = solver_->solve(v, config_.sweep_grid))
            w.point_witnesses.push_back(std::move(*self));
        return w;
    }

    static void clamp_to_cap(MixedStrategy& s, const Rational& cap) {
        // Push excess above the cap onto the smallest weight.
        for (size_t rounds = 0; rounds < s.weights.size(); ++rounds) {
            size_t big = 0, small = 0;
            for (size_t j = 0; j < s.weights.size(); ++j) {
                if (s.weights[j] > s.weights[big]) big = j;
                if (s.weights[j] < s.weights[small]) small = j;
            }
            if (s.weights[big] <= cap) break;
            Rational excess = s.weights[big] - cap;
            s.weights[big] = cap;
            s.weights[small] += excess;
        }
    }

    double capped_descent(MixedProfile& sigma, const PayoffVector& v, int designated, const Rational& cap) {
        std::vector<Rational> tgt;
        for (const auto& c : v.coords) tgt.push_back(rational_from_double(c.to_double()));
        auto residual_of = [&](const MixedProfile& s) {
            auto u = view_.evaluate_profile(s);
            double r = 0;
            for (int c = 0; c < game_->player_count(); ++c)
                r = std::max(r, std::abs(u[c] - v.coords[c].to_double()));
            return r;
        };
        double res = residual_of(sigma);
        const auto& counts = game_->strategy_counts();
        for (int round = 0; round < 30 && res > config_.tol; ++round) {
            bool improved = false;
            for (int i = 0; i < game_->player_count(); ++i) {
                const int mi = counts[i];
                std::vector<std::vector<Rational>> cols(mi);
                MixedProfile probe = sigma;
                for (int j = 0; j < mi; ++j) {
                    probe.strategies[i] = MixedStrategy::point_mass(j, mi);
                    auto u = view_.evaluate_profile(probe);
                    for (double x : u) cols[j].push_back(rational_from_double(x));
                }
                LpProblem<Rational> lp;
                std::vector<int> x(mi);
                for (int j = 0; j < mi; ++j) x[j] = lp.add_var();
                int t = lp.add_var();
                for (int c = 0; c < game_->player_count(); ++c) {
                    std::vector<std::pair<int, Rational>> up, down;
                    for (int j = 0; j < mi; ++j) {
                        if (cols[j][c] == 0) continue;
                        up.emplace_back(x[j], cols[j][c]);
                        down.emplace_back(x[j], cols[j][c]);
                    }
                    up.emplace_back(t, Rational(-1));
                    down.emplace_back(t, Rational(1));
                    lp.add_row(std::move(up), Rel::le, tgt[c]);
                    lp.add_row(std::move(down), Rel::ge, tgt[c]);
                }
                {
                    std::vector<std::pair<int, Rational>> sum;
                    for (int j = 0; j < mi; ++j) sum.emplace_back(x[j], Rational(1));
                    lp.add_row(std::move(sum), Rel::eq, Rational(1));
                }
                if (i == designated)
                    for (int j = 0; j < mi; ++j) lp.add_row({{x[j], Rational(1)}}, Rel::le, cap);
                lp.set_objective(false, {{t, Rational(1)}});
                auto sol = lp.solve();
                if (sol.status != LpStatus::optimal) continue;
                MixedProfile cand = sigma;
                std::vector<Rational> wts(sol.values.begin(), sol.values.begin() + mi);
                cand.strategies[i] = MixedStrategy(wts);
                double cr = residual_of(cand);
                if (cr < res - 1e-18) {
                    sigma = cand;
                    res = cr;
                    improved = true;
                }
            }
            if (!improved) break;
        }
        return res;
    }

    const Game* game_;
    ExtremalityConfig config_;
    GameDoubleView view_;
    std::unique_ptr<MembershipSolver> solver_;
    PurePayoffSet spu_;
    HullVertexSet hull_;
    std::unique_ptr<SampleCloud> cloud_;
    std::unique_ptr<CloudIndex> index_;
    double reject_radius_ = 1e-3;
};

inline ClassificationReport classify_extreme_points(const Game& game, const ExtremalityConfig& config = {}) {
    ExtremalityAnalyzer analyzer(game, config);
    return analyzer.classify_all();
}

inline std::optional<SegmentWitness> segment_witness_search(const Game& game, const PayoffVector& v,
                                                            const ExtremalityConfig& config = {}) {
    ExtremalityAnalyzer analyzer(game, config);
    return analyzer.segment_witness_search(v);
}

inline MixabilityResult mixability(const Game& game, const PayoffVector& v, const ExtremalityConfig& config = {}) {
    ExtremalityAnalyzer analyzer(game, config);
    return analyzer.mixability(v);
}

struct FlatnessProbeReport {
    size_t tested = 0;
    std::vector<PayoffVector> failures;       // boundary points with no flat segment found
    bool extreme_count_bounded = true;        // #extreme candidates <= #pure payoffs
    ClassificationReport classification;
};

/// Planar probe of non-strict convexity at the boundary: every sampled
/// boundary point away from the classified extreme points must admit a flat
/// segment through it inside the region.
inline FlatnessProbeReport boundary_flatness_probe(const Game& game, const ExtremalityConfig& config = {}) {
    if (game.player_count() != 2) raise(errc::planar_only, "flatness probe is planar");
    ExtremalityAnalyzer analyzer(game, config);
    FlatnessProbeReport report;
    report.classification = analyzer.classify_all();

    size_t extreme_count = 0;
    std::vector<std::vector<double>> extremes;
    for (const auto& p : report.classification.points) {
        if (p.status != Extremality::not_extreme) {
            ++extreme_count;
            extremes.push_back(p.value.to_doubles());
        }
    }
    report.extreme_count_bounded = extreme_count <= report.classification.spu.points.size();

    const SampleCloud& cloud = analyzer.cloud();
    std::vector<size_t> boundary;
    for (const auto& c : direction_set(2, std::min(config.directions, 256), config.seed)) {
        double c0 = to_double(c[0]), c1 = to_double(c[1]);
        size_t best = 0;
        double best_val = -1e300;
        for (size_t i = 0; i < cloud.size(); ++i) {
            double val = c0 * cloud.payoff(i)[0] + c1 * cloud.payoff(i)[1];
            if (val > best_val) {
                best_val = val;
                best = i;
            }
        }
        if (std::find(boundary.begin(), boundary.end(), best) == boundary.end()) boundary.push_back(best);
    }

    for (size_t idx : boundary) {
        bool near_extreme = false;
        for (const auto& e : extremes) {
            double d = std::max(std::abs(e[0] - cloud.payoff(idx)[0]), std::abs(e[1] - cloud.payoff(idx)[1]));
            near_extreme = near_extreme || d <= config.delta;
        }
        if (near_extreme) continue;
        MixedProfile preimage = cloud.profile_at(idx);
        PayoffVector exact = evaluate_mixed(game, preimage);
        ++report.tested;
        auto w = analyzer.segment_witness_search(exact, {preimage});
        if (!w) report.failures.push_back(exact);
    }
    return report;
}

}  // namespace payreg

#pragma once

#include <optional>
#include <vector>

#include "payreg/lp.hpp"
#include "payreg/region.hpp"

namespace payreg {

struct MembershipConfig {
    double tol = 1e-9;
    int p_grid = 2048;        // planar sweep: grid cells for player 1's mixture
    int bisect_rounds = 40;   // local interval refinements after the sweep
    int multistarts = 24;     // n >= 3: seeded starts
    int descent_rounds = 40;  // n >= 3: per-start coordinate-descent rounds
    uint64_t seed = 0x5eed;
};

/// Constructive evidence that `target` lies in the mixed-payoff region, up to
/// the residual it was issued with.
struct MembershipWitness {
    PayoffVector target;
    MixedProfile profile;
    double residual;  // inf-norm of u(profile) - target
};

inline bool verify_membership(const Game& game, const MembershipWitness& w, double tol) {
    game.check_mixed(w.profile);
    auto u = evaluate_mixed(game, w.profile);
    double r = 0;
    for (int c = 0; c < game.player_count(); ++c)
        r = std::max(r, std::abs((u.coords[c] - w.target.coords[c]).to_double()));
    return r <= tol + 1e-15;
}

namespace detail {

/// min over q in the simplex of the inf-norm residual |A q - target|, where
/// column j of A is the payoff of (fixed partial profile, a_j). Exact LP.
template <typename F>
struct ResidualSolve {
    F residual;
    std::vector<F> weights;
    bool ok = false;
};

template <typename F>
ResidualSolve<F> min_residual_lp(const std::vector<std::vector<F>>& columns, const std::vector<F>& target) {
    const int n = static_cast<int>(target.size());
    const int m = static_cast<int>(columns.size());
    LpProblem<F> lp;
    std::vector<int> q(m);
    for (int j = 0; j < m; ++j) q[j] = lp.add_var();
    int t = lp.add_var();
    for (int c = 0; c < n; ++c) {
        std::vector<std::pair<int, F>> up, down;
        for (int j = 0; j < m; ++j) {
            if (field_sign(columns[j][c]) == 0) continue;
            up.emplace_back(q[j], columns[j][c]);
            down.emplace_back(q[j], columns[j][c]);
        }
        up.emplace_back(t, F(-1));
        down.emplace_back(t, F(1));
        lp.add_row(std::move(up), Rel::le, target[c]);    //  (Aq)_c - t <= target_c
        lp.add_row(std::move(down), Rel::ge, target[c]);  //  (Aq)_c + t >= target_c
    }
    {
        std::vector<std::pair<int, F>> sum;
        for (int j = 0; j < m; ++j) sum.emplace_back(q[j], F(1));
        lp.add_row(std::move(sum), Rel::eq, F(1));
    }
    lp.set_objective(false, {{t, F(1)}});
    auto sol = lp.solve();
    ResidualSolve<F> out;
    if (sol.status != LpStatus::optimal) return out;
    out.ok = true;
    out.residual = sol.values[t];
    for (int j = 0; j < m; ++j) out.weights.push_back(sol.values[q[j]]);
    return out;
}

template <typename F>
F scalar_to_field(const QuadScalar& x);
template <>
inline Rational scalar_to_field<Rational>(const QuadScalar& x) { return x.rational_part(); }
template <>
inline QuadScalar scalar_to_field<QuadScalar>(const QuadScalar& x) { return x; }

template <typename F>
QuadScalar field_to_scalar(const F& x);
template <>
inline QuadScalar field_to_scalar<Rational>(const Rational& x) { return QuadScalar(x); }
template <>
inline QuadScalar field_to_scalar<QuadScalar>(const QuadScalar& x) { return x; }

}  // namespace detail

/// Decides (one-sidedly) whether a payoff point is achievable by independent
/// mixing. Planar games get an exact sweep: player 1's mixture runs over a
/// rational grid with interval refinement, and for each fixed mixture the
/// best response of the residual is an exact LP in player 2's weights. Games
/// with three or more players get seeded multistart coordinate descent, each
/// descent step again an exact LP on dyadic data. A nullopt answer means "no
/// witness at this resolution", never a proof of non-membership.
class MembershipSolver {
public:
    MembershipSolver(const Game& game, MembershipConfig config = {})
        : game_(&game), config_(config), view_(game) {
        if (!(config_.tol > 0)) raise(errc::invalid_tolerance, "tol must be positive");
        spu_ = pure_payoff_set(game);
        const int n = game.player_count();
        box_lo_.assign(n, QuadScalar(Rational(0)));
        box_hi_.assign(n, QuadScalar(Rational(0)));
        for (int c = 0; c < n; ++c) {
            box_lo_[c] = spu_.points.front().value.coords[c];
            box_hi_[c] = box_lo_[c];
            for (const auto& p : spu_.points) {
                if (compare(p.value.coords[c], box_lo_[c]) == Sign::negative) box_lo_[c] = p.value.coords[c];
                if (compare(p.value.coords[c], box_hi_[c]) == Sign::positive) box_hi_[c] = p.value.coords[c];
            }
        }
    }

    const Game& game() const { return *game_; }
    const MembershipConfig& config() const { return config_; }

    /// Exact bounding-box rejection: anything outside the pure-payoff box is
    /// outside the hull, hence outside the mixed region.
    bool outside_box(const PayoffVector& target, double slack = 0.0) const {
        for (int c = 0; c < game_->player_count(); ++c) {
            double v = target.coords[c].to_double();
            if (v < box_lo_[c].to_double() - slack || v > box_hi_[c].to_double() + slack) return true;
        }
        return false;
    }

    std::optional<MembershipWitness> solve(const PayoffVector& target, int grid_override = 0) const {
        if (static_cast<int>(target.coords.size()) != game_->player_count())
            raise(errc::invalid_input, "target dimension mismatch");
        if (outside_box(target, config_.tol)) return std::nullopt;

        // Pure payoffs answer immediately.
        for (const auto& p : spu_.points)
            if (p.value == target)
                return MembershipWitness{target, MixedProfile::degenerate(p.generators.front(), game_->strategy_counts()),
                                         0.0};

        bool quad = game_->has_irrational_payoffs();
        for (const auto& c : target.coords) quad = quad || !c.is_rational();
        if (game_->player_count() <= 2) {
            return quad ? planar_exact<QuadScalar>(target, grid_override) : planar_exact<Rational>(target, grid_override);
        }
        return descent_search(target);
    }

    /// Local improvement from a given profile (any player count).
    std::optional<MembershipWitness> refine(const MixedProfile& start, const PayoffVector& target) const {
        MixedProfile sigma = start;
        double res = descend(sigma, target);
        if (res <= config_.tol) return MembershipWitness{target, sigma, res};
        return std::nullopt;
    }

private:
    template <typename F>
    std::optional<MembershipWitness> planar_exact(const PayoffVector& target, int grid_override) const {
        const int m1 = game_->strategy_counts()[0];
        const int grid = grid_override > 0 ? grid_override : config_.p_grid;

        std::vector<F> tgt;
        for (const auto& c : target.coords) tgt.push_back(detail::scalar_to_field<F>(c));

        // Enumerate player 1 mixtures on a simplex grid of roughly `grid` cells.
        int levels = 2;
        while (detail::simplex_grid_size(m1, levels + 1) <= static_cast<size_t>(grid) && levels < grid) ++levels;
        std::vector<std::vector<double>> p_grid;
        detail::simplex_grid(m1, levels + 1, p_grid);

        F best_res{};
        std::vector<Rational> best_p;
        std::vector<F> best_q;
        bool have = false;

        auto eval_p = [&](const std::vector<Rational>& p) -> std::optional<F> {
            auto solve = residual_for_p<F>(p, tgt);
            if (!solve.ok) return std::nullopt;
            if (!have || field_sign(solve.residual - best_res) < 0) {
                best_res = solve.residual;
                best_p = p;
                best_q = solve.weights;
                have = true;
            }
            return solve.residual;
        };

        const int L = levels;
        for (const auto& pw : p_grid) {
            std::vector<Rational> p(m1);
            for (int j = 0; j < m1; ++j) p[j] = Rational(static_cast<int>(std::lround(pw[j] * L)), L);
            eval_p(p);
            if (have && field_sign(best_res) == 0) break;
        }

        // Interval refinement around the best mixture: move mass between
        // coordinate pairs with a shrinking rational step.
        if (have && field_sign(best_res) != 0) {
            Rational step(1, L);
            for (int round = 0; round < config_.bisect_rounds; ++round) {
                step /= 2;
                bool improved = false;
                for (int j = 0; j < m1 && !improved; ++j) {
                    for (int k = 0; k < m1 && !improved; ++k) {
                        if (j == k) continue;
                        if (best_p[j] < step) continue;
                        std::vector<Rational> cand = best_p;
                        cand[j] -= step;
                        cand[k] += step;
                        F before = best_res;
                        eval_p(cand);
                        improved = field_sign(best_res - before) < 0;
                    }
                }
            }
        }

        if (!have) return std::nullopt;
        if (detail::field_to_scalar<F>(best_res).to_double() > config_.tol) return std::nullopt;

        std::vector<MixedStrategy> strategies;
        strategies.push_back(MixedStrategy(best_p));
        if (game_->player_count() == 2) {
            std::vector<Rational> q;
            for (const auto& x : best_q) q.push_back(to_rational_weight(x));
            strategies.push_back(MixedStrategy(q));
        }
        MixedProfile sigma(std::move(strategies));
        // Report the residual of the actual (possibly snapped) profile.
        auto u = evaluate_mixed(*game_, sigma);
        double res_d = 0;
        for (int c = 0; c < game_->player_count(); ++c)
            res_d = std::max(res_d, std::abs((u.coords[c] - target.coords[c]).to_double()));
        if (res_d > config_.tol) return std::nullopt;
        return MembershipWitness{target, sigma, res_d};
    }

    static Rational to_rational_weight(const Rational& x) { return x; }
    static Rational to_rational_weight(const QuadScalar& x) {
        if (x.is_rational()) return x.rational_part();
        // Exact LP over Q(sqrt(d)) can return irrational weights; snap to a
        // tight dyadic and let the caller-recorded residual absorb the shift.
        return rational_from_double(x.to_double());
    }

    template <typename F>
    detail::ResidualSolve<F> residual_for_p(const std::vector<Rational>& p, const std::vector<F>& tgt) const {
        const int n = game_->player_count();
        if (n == 1) {
            std::vector<std::vector<F>> cols;
            for (int j = 0; j < game_->strategy_counts()[0]; ++j) {
                PureProfile a{{j}};
                std::vector<F> col;
                for (const auto& c : evaluate_pure(*game_, a).coords) col.push_back(detail::scalar_to_field<F>(c));
                cols.push_back(std::move(col));
            }
            return detail::min_residual_lp<F>(cols, tgt);
        }
        const int m2 = game_->strategy_counts()[1];
        std::vector<std::vector<F>> cols(m2, std::vector<F>(n, F(0)));
        for (int j = 0; j < m2; ++j) {
            for (int r = 0; r < game_->strategy_counts()[0]; ++r) {
                if (p[r] == 0) continue;
                const PayoffVector& cell = game_->payoff_table()[game_->flat_index(PureProfile{{r, j}})];
                for (int c = 0; c < n; ++c)
                    cols[j][c] = cols[j][c] + F(detail::scalar_to_field<F>(QuadScalar(p[r]))) *
                                                  detail::scalar_to_field<F>(cell.coords[c]);
            }
        }
        return detail::min_residual_lp<F>(cols, tgt);
    }

    /// n >= 3: cyclic per-player exact LPs on dyadic data, seeded multistart.
    std::optional<MembershipWitness> descent_search(const PayoffVector& target) const {
        std::vector<MixedProfile> starts;
        for (const auto& p : spu_.points)
            starts.push_back(MixedProfile::degenerate(p.generators.front(), game_->strategy_counts()));
        {
            std::vector<MixedStrategy> center;
            for (int m : game_->strategy_counts()) center.push_back(MixedStrategy::uniform(m));
            starts.push_back(MixedProfile(std::move(center)));
        }
        Rng rng(config_.seed);
        std::vector<double> w;
        for (int s = 0; s < config_.multistarts; ++s) {
            w.clear();
            for (int m : game_->strategy_counts()) {
                size_t at = w.size();
                w.resize(at + m);
                rng.next_simplex(m, &w[at]);
            }
            starts.push_back(profile_from_doubles(game_->strategy_counts(), w.data()));
        }
        double best_res = 1e300;
        MixedProfile best;
        for (auto& sigma : starts) {
            double res = descend(sigma, target);
            if (res < best_res) {
                best_res = res;
                best = sigma;
                if (best_res <= config_.tol) break;
            }
        }
        if (best_res <= config_.tol) return MembershipWitness{target, best, best_res};
        return std::nullopt;
    }

    double residual_of(const MixedProfile& sigma, const PayoffVector& target) const {
        auto u = view_.evaluate_profile(sigma);
        double r = 0;
        for (int c = 0; c < game_->player_count(); ++c) r = std::max(r, std::abs(u[c] - target.coords[c].to_double()));
        return r;
    }

    double descend(MixedProfile& sigma, const PayoffVector& target) const {
        const int n = game_->player_count();
        std::vector<Rational> tgt;
        for (const auto& c : target.coords) tgt.push_back(rational_from_double(c.to_double()));
        double res = residual_of(sigma, target);
        for (int round = 0; round < config_.descent_rounds && res > config_.tol; ++round) {
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                // Columns: payoff of (e_j for player i, sigma_{-i}), dyadic.
                const int mi = game_->strategy_counts()[i];
                std::vector<std::vector<Rational>> cols(mi);
                MixedProfile probe = sigma;
                for (int j = 0; j < mi; ++j) {
                    probe.strategies[i] = MixedStrategy::point_mass(j, mi);
                    auto u = view_.evaluate_profile(probe);
                    for (double x : u) cols[j].push_back(rational_from_double(x));
                }
                auto solve = detail::min_residual_lp<Rational>(cols, tgt);
                if (!solve.ok) continue;
                MixedProfile cand = sigma;
                cand.strategies[i] = MixedStrategy(solve.weights);
                double cand_res = residual_of(cand, target);
                if (cand_res < res - 1e-18) {
                    sigma = cand;
                    res = cand_res;
                    improved = true;
                }
            }
            if (!improved) break;
        }
        return res;
    }

    const Game* game_;
    MembershipConfig config_;
    GameDoubleView view_;
    PurePayoffSet spu_;
    std::vector<QuadScalar> box_lo_, box_hi_;
};

/// One-shot convenience around MembershipSolver.
inline std::optional<MembershipWitness> membership(const Game& game, const PayoffVector& target,
                                                   const MembershipConfig& config = {}) {
    return MembershipSolver(game, config).solve(target);
}

}  // namespace payreg

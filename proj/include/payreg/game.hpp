#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "payreg/quad.hpp"

namespace payreg {

/// One pure strategy per player, as 0-based indices into the strategy sets.
struct PureProfile {
    std::vector<int> indices;

    bool operator==(const PureProfile&) const = default;
    bool operator<(const PureProfile& o) const { return indices < o.indices; }
};

/// Joint payoff of all players at a single outcome: a point in R^n, with
/// exact Q(sqrt(d)) coordinates and a derived floating-point view.
struct PayoffVector {
    std::vector<QuadScalar> coords;

    PayoffVector() = default;
    explicit PayoffVector(std::vector<QuadScalar> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }

    std::vector<double> to_doubles() const {
        std::vector<double> v(coords.size());
        for (size_t i = 0; i < coords.size(); ++i) v[i] = coords[i].to_double();
        return v;
    }

    bool operator==(const PayoffVector& o) const {
        if (coords.size() != o.coords.size()) return false;
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != o.coords[i]) return false;
        return true;
    }
    bool operator!=(const PayoffVector& o) const { return !(*this == o); }

    // Exact lexicographic order; canonical order for deduplicated point sets.
    bool operator<(const PayoffVector& o) const {
        for (size_t i = 0; i < coords.size() && i < o.coords.size(); ++i) {
            Sign s = compare(coords[i], o.coords[i]);
            if (s == Sign::negative) return true;
            if (s == Sign::positive) return false;
        }
        return coords.size() < o.coords.size();
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ", ";
            s += coords[i].str();
        }
        return s + ")";
    }
};

inline QuadScalar dot(const std::vector<Rational>& c, const PayoffVector& v) {
    QuadScalar acc(Rational(0));
    for (size_t i = 0; i < c.size(); ++i) acc += QuadScalar(c[i]) * v.coords[i];
    return acc;
}

/// A probability distribution over one player's strategies, exact.
struct MixedStrategy {
    std::vector<Rational> weights;

    MixedStrategy() = default;
    explicit MixedStrategy(std::vector<Rational> w) : weights(std::move(w)) { validate(); }

    void validate() const {
        if (weights.empty()) raise(errc::invalid_distribution, "empty mixed strategy");
        Rational sum(0);
        for (const auto& w : weights) {
            if (w.sign() < 0) raise(errc::invalid_distribution, "negative weight " + format_rational(w));
            sum += w;
        }
        if (sum != 1) raise(errc::invalid_distribution, "weights sum to " + format_rational(sum) + ", not 1");
    }

    static MixedStrategy point_mass(int index, int count) {
        std::vector<Rational> w(count, Rational(0));
        w.at(index) = 1;
        return MixedStrategy(std::move(w));
    }

    static MixedStrategy uniform(int count) {
        return MixedStrategy(std::vector<Rational>(count, Rational(1, count)));
    }

    /// Index of the unit weight, if this is a degenerate (pure) strategy.
    std::optional<int> as_pure() const {
        for (size_t j = 0; j < weights.size(); ++j)
            if (weights[j] == 1) return static_cast<int>(j);
        return std::nullopt;
    }

    bool operator==(const MixedStrategy& o) const { return weights == o.weights; }
};

/// Independent randomization: one MixedStrategy per player.
struct MixedProfile {
    std::vector<MixedStrategy> strategies;

    MixedProfile() = default;
    explicit MixedProfile(std::vector<MixedStrategy> s) : strategies(std::move(s)) {}

    static MixedProfile degenerate(const PureProfile& a, const std::vector<int>& strategy_counts) {
        std::vector<MixedStrategy> s;
        s.reserve(a.indices.size());
        for (size_t i = 0; i < a.indices.size(); ++i)
            s.push_back(MixedStrategy::point_mass(a.indices[i], strategy_counts[i]));
        return MixedProfile(std::move(s));
    }

    bool degenerate_profile() const {
        return std::all_of(strategies.begin(), strategies.end(),
                           [](const MixedStrategy& s) { return s.as_pure().has_value(); });
    }

    std::optional<PureProfile> as_pure() const {
        PureProfile a;
        for (const auto& s : strategies) {
            auto j = s.as_pure();
            if (!j) return std::nullopt;
            a.indices.push_back(*j);
        }
        return a;
    }

    bool operator==(const MixedProfile& o) const { return strategies == o.strategies; }
};

/// Joint randomization: one exact weight per pure profile, in the game's
/// row-major profile order (player 1 varies slowest).
struct CorrelatedStrategy {
    std::vector<Rational> weights;

    CorrelatedStrategy() = default;
    explicit CorrelatedStrategy(std::vector<Rational> w) : weights(std::move(w)) { validate(); }

    void validate() const {
        if (weights.empty()) raise(errc::invalid_distribution, "empty correlated strategy");
        Rational sum(0);
        for (const auto& w : weights) {
            if (w.sign() < 0) raise(errc::invalid_distribution, "negative weight " + format_rational(w));
            sum += w;
        }
        if (sum != 1) raise(errc::invalid_distribution, "weights sum to " + format_rational(sum) + ", not 1");
    }

    static CorrelatedStrategy point_mass(size_t flat_index, size_t profile_count) {
        std::vector<Rational> w(profile_count, Rational(0));
        w.at(flat_index) = 1;
        return CorrelatedStrategy(std::move(w));
    }

    bool operator==(const CorrelatedStrategy& o) const { return weights == o.weights; }
};

/// Finite strategic game: payoff tensor over the product of strategy sets,
/// entries exact in Q(sqrt(d)). Immutable after construction.
class Game {
public:
    Game(std::vector<int> strategy_counts, std::vector<PayoffVector> payoffs, int64_t discriminant = 2,
         std::vector<std::vector<std::string>> strategy_names = {})
        : counts_(std::move(strategy_counts)),
          payoffs_(std::move(payoffs)),
          d_(discriminant),
          names_(std::move(strategy_names)) {
        if (counts_.empty()) raise(errc::invalid_input, "game needs at least one player");
        if (!is_valid_discriminant(d_)) raise(errc::invalid_input, "bad discriminant");
        size_t cells = 1;
        for (int m : counts_) {
            if (m < 1) raise(errc::invalid_input, "player needs at least one strategy");
            cells *= static_cast<size_t>(m);
        }
        if (payoffs_.size() != cells)
            raise(errc::invalid_input, "payoff tensor has " + std::to_string(payoffs_.size()) +
                                           " cells, expected " + std::to_string(cells));
        for (const auto& v : payoffs_) {
            if (v.dim() != player_count())
                raise(errc::invalid_input, "payoff vector arity mismatch");
        }
        if (names_.empty()) {
            for (size_t i = 0; i < counts_.size(); ++i) {
                std::vector<std::string> row;
                for (int j = 0; j < counts_[i]; ++j)
                    row.push_back("s" + std::to_string(i + 1) + std::to_string(j + 1));
                names_.push_back(std::move(row));
            }
        }
    }

    int player_count() const { return static_cast<int>(counts_.size()); }
    const std::vector<int>& strategy_counts() const { return counts_; }
    int64_t discriminant() const { return d_; }
    size_t profile_count() const { return payoffs_.size(); }
    const std::vector<PayoffVector>& payoff_table() const { return payoffs_; }
    const std::vector<std::vector<std::string>>& strategy_names() const { return names_; }

    /// Row-major flat index, player 1 slowest-varying.
    size_t flat_index(const PureProfile& a) const {
        check_profile(a);
        size_t idx = 0;
        for (int i = 0; i < player_count(); ++i) idx = idx * counts_[i] + static_cast<size_t>(a.indices[i]);
        return idx;
    }

    PureProfile profile_at(size_t flat) const {
        PureProfile a;
        a.indices.resize(counts_.size());
        for (int i = player_count() - 1; i >= 0; --i) {
            a.indices[i] = static_cast<int>(flat % counts_[i]);
            flat /= counts_[i];
        }
        return a;
    }

    bool has_irrational_payoffs() const {
        for (const auto& v : payoffs_)
            for (const auto& c : v.coords)
                if (!c.is_rational()) return true;
        return false;
    }

    void check_profile(const PureProfile& a) const {
        if (a.indices.size() != counts_.size())
            raise(errc::invalid_profile, "profile has " + std::to_string(a.indices.size()) + " entries, expected " +
                                             std::to_string(counts_.size()));
        for (size_t i = 0; i < counts_.size(); ++i)
            if (a.indices[i] < 0 || a.indices[i] >= counts_[i])
                raise(errc::invalid_profile, "strategy index " + std::to_string(a.indices[i]) +
                                                 " out of range for player " + std::to_string(i + 1));
    }

    void check_mixed(const MixedProfile& p) const {
        if (static_cast<int>(p.strategies.size()) != player_count())
            raise(errc::invalid_distribution, "profile arity mismatch");
        for (int i = 0; i < player_count(); ++i) {
            p.strategies[i].validate();
            if (static_cast<int>(p.strategies[i].weights.size()) != counts_[i])
                raise(errc::invalid_distribution, "player " + std::to_string(i + 1) + " strategy size mismatch");
        }
    }

private:
    std::vector<int> counts_;
    std::vector<PayoffVector> payoffs_;
    int64_t d_;
    std::vector<std::vector<std::string>> names_;
};

inline PayoffVector evaluate_pure(const Game& game, const PureProfile& a) {
    return game.payoff_table()[game.flat_index(a)];
}

/// Product distribution phi_sigma(a) = prod_i sigma_i(a_i), exact.
inline CorrelatedStrategy induced_correlated(const Game& game, const MixedProfile& p) {
    game.check_mixed(p);
    std::vector<Rational> w(game.profile_count());
    for (size_t flat = 0; flat < w.size(); ++flat) {
        PureProfile a = game.profile_at(flat);
        Rational prod(1);
        for (int i = 0; i < game.player_count(); ++i) {
            prod *= p.strategies[i].weights[a.indices[i]];
            if (prod == 0) break;
        }
        w[flat] = std::move(prod);
    }
    CorrelatedStrategy phi;
    phi.weights = std::move(w);
    return phi;
}

inline PayoffVector evaluate_correlated(const Game& game, const CorrelatedStrategy& phi) {
    if (phi.weights.size() != game.profile_count())
        raise(errc::invalid_distribution, "correlated strategy has " + std::to_string(phi.weights.size()) +
                                              " weights, expected " + std::to_string(game.profile_count()));
    phi.validate();
    std::vector<QuadScalar> acc(game.player_count(), QuadScalar(Rational(0)));
    for (size_t flat = 0; flat < phi.weights.size(); ++flat) {
        if (phi.weights[flat] == 0) continue;
        QuadScalar w{phi.weights[flat]};
        const PayoffVector& u = game.payoff_table()[flat];
        for (int i = 0; i < game.player_count(); ++i) acc[i] += w * u.coords[i];
    }
    return PayoffVector(std::move(acc));
}

/// Expected payoff under independent play; by definition equal to the
/// expectation under the induced correlated strategy.
inline PayoffVector evaluate_mixed(const Game& game, const MixedProfile& p) {
    return evaluate_correlated(game, induced_correlated(game, p));
}

/// Inverts `induced_correlated` when phi is a product distribution: the
/// per-player marginals are the only candidate, so recompute their product
/// and compare exactly. nullopt means phi is genuinely correlated.
inline std::optional<MixedProfile> recover_mixed(const Game& game, const CorrelatedStrategy& phi) {
    if (phi.weights.size() != game.profile_count())
        raise(errc::invalid_distribution, "correlated strategy size mismatch");
    phi.validate();
    std::vector<std::vector<Rational>> marginals;
    for (int i = 0; i < game.player_count(); ++i)
        marginals.emplace_back(game.strategy_counts()[i], Rational(0));
    for (size_t flat = 0; flat < phi.weights.size(); ++flat) {
        PureProfile a = game.profile_at(flat);
        for (int i = 0; i < game.player_count(); ++i) marginals[i][a.indices[i]] += phi.weights[flat];
    }
    std::vector<MixedStrategy> strategies;
    strategies.reserve(marginals.size());
    for (auto& w : marginals) strategies.push_back(MixedStrategy(std::move(w)));
    MixedProfile sigma(std::move(strategies));
    if (!(induced_correlated(game, sigma) == phi)) return std::nullopt;
    return sigma;
}

/// Flattened double view of a game's payoff tensor, for bulk sampling.
/// Layout: cell-major, then player: value(flat, i) = data[flat * n + i].
class GameDoubleView {
public:
    explicit GameDoubleView(const Game& game)
        : n_(game.player_count()), counts_(game.strategy_counts()), data_(game.profile_count() * n_) {
        for (size_t flat = 0; flat < game.profile_count(); ++flat)
            for (int i = 0; i < n_; ++i) data_[flat * n_ + i] = game.payoff_table()[flat].coords[i].to_double();
    }

    int player_count() const { return n_; }
    const std::vector<int>& strategy_counts() const { return counts_; }

    /// weights: concatenated per-player weight arrays. out: n doubles.
    void evaluate(const std::vector<const double*>& weights, double* out) const {
        for (int i = 0; i < n_; ++i) out[i] = 0.0;
        size_t cells = data_.size() / n_;
        std::vector<int> idx(counts_.size(), 0);
        for (size_t flat = 0; flat < cells; ++flat) {
            double w = 1.0;
            for (size_t i = 0; i < counts_.size(); ++i) w *= weights[i][idx[i]];
            if (w != 0.0) {
                const double* cell = &data_[flat * n_];
                for (int i = 0; i < n_; ++i) out[i] += w * cell[i];
            }
            for (int i = static_cast<int>(counts_.size()) - 1; i >= 0; --i) {
                if (++idx[i] < counts_[i]) break;
                idx[i] = 0;
            }
        }
    }

    std::vector<double> evaluate_profile(const MixedProfile& p) const {
        std::vector<std::vector<double>> w(counts_.size());
        std::vector<const double*> ptrs(counts_.size());
        for (size_t i = 0; i < counts_.size(); ++i) {
            w[i].resize(p.strategies[i].weights.size());
            for (size_t j = 0; j < w[i].size(); ++j) w[i][j] = to_double(p.strategies[i].weights[j]);
            ptrs[i] = w[i].data();
        }
        std::vector<double> out(n_);
        evaluate(ptrs, out.data());
        return out;
    }

private:
    int n_;
    std::vector<int> counts_;
    std::vector<double> data_;
};

}  // namespace payreg

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "payreg/game.hpp"
#include "payreg/parallel.hpp"

namespace payreg {

/// splitmix64: tiny, portable, and fully specified, so clouds regenerate
/// bit-identically on any platform. Stdlib distributions are avoided for the
/// same reason.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_exponential() {
        double u = next_unit();
        return -std::log1p(-u);
    }

    double next_gaussian() {
        // Box-Muller; one value per call keeps the stream simple.
        double u1 = next_unit(), u2 = next_unit();
        while (u1 <= 0.0) u1 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Uniform point of the (m-1)-simplex via normalized exponentials.
    void next_simplex(int m, double* out) {
        double sum = 0.0;
        for (int j = 0; j < m; ++j) {
            out[j] = next_exponential();
            sum += out[j];
        }
        for (int j = 0; j < m; ++j) out[j] /= sum;
    }

private:
    uint64_t state_;
};

/// Converts per-player double weights into an exact MixedProfile: each weight
/// becomes its dyadic rational, and the largest weight absorbs the rounding
/// deficit so the simplex invariant holds exactly. Deterministic.
inline MixedProfile profile_from_doubles(const std::vector<int>& counts, const double* w) {
    std::vector<MixedStrategy> strategies;
    int at = 0;
    for (int m : counts) {
        std::vector<Rational> weights(m);
        Rational sum(0);
        size_t largest = 0;
        for (int j = 0; j < m; ++j) {
            double wj = w[at + j];
            weights[j] = wj <= 0 ? Rational(0) : rational_from_double(wj);
            sum += weights[j];
            if (weights[j] > weights[largest]) largest = j;
        }
        weights[largest] += Rational(1) - sum;
        if (weights[largest].sign() < 0) raise(errc::invalid_distribution, "weights too far from the simplex");
        strategies.push_back(MixedStrategy(std::move(weights)));
        at += m;
    }
    return MixedProfile(std::move(strategies));
}

struct SampleConfig {
    uint64_t seed = 0x5eed;
    int grid_resolution = 16;      // weight levels per player: k/(R-1)
    size_t random_samples = 20000;
    int refinement_rounds = 2;
    size_t refinement_batch = 4000;
    size_t max_samples = 2000000;
    int threads = 1;
};

/// Deterministic point cloud in payoff space with the generating profiles.
/// Weights are stored as doubles; profile_at() reconstructs an exact profile
/// whose double payoff matches the recorded one to ~1e-15.
class SampleCloud {
public:
    SampleCloud(std::vector<int> strategy_counts, int dim, uint64_t seed, std::vector<int> grid_levels,
                int refinement_rounds)
        : counts_(std::move(strategy_counts)),
          dim_(dim),
          seed_(seed),
          grid_levels_(std::move(grid_levels)),
          refinement_rounds_(refinement_rounds) {
        stride_ = 0;
        for (int m : counts_) stride_ += m;
    }

    size_t size() const { return payoffs_.size() / dim_; }
    int dim() const { return dim_; }
    uint64_t seed() const { return seed_; }
    const std::vector<int>& grid_levels() const { return grid_levels_; }
    int refinement_rounds() const { return refinement_rounds_; }
    const std::vector<int>& strategy_counts() const { return counts_; }
    size_t weight_stride() const { return stride_; }

    const double* payoff(size_t i) const { return &payoffs_[i * dim_]; }
    const double* weights(size_t i) const { return &weights_[i * stride_]; }

    MixedProfile profile_at(size_t i) const { return profile_from_doubles(counts_, weights(i)); }

    void append_weights(const double* w) {
        weights_.insert(weights_.end(), w, w + stride_);
    }

    void finalize_payoffs(const GameDoubleView& view, int threads) {
        size_t n = weights_.size() / stride_;
        payoffs_.assign(n * dim_, 0.0);
        parallel_for(n, threads, [&](size_t i) {
            std::vector<const double*> ptrs(counts_.size());
            size_t at = 0;
            for (size_t p = 0; p < counts_.size(); ++p) {
                ptrs[p] = &weights_[i * stride_ + at];
                at += counts_[p];
            }
            view.evaluate(ptrs, &payoffs_[i * dim_]);
        });
    }

    bool operator==(const SampleCloud& o) const {
        return counts_ == o.counts_ && payoffs_ == o.payoffs_ && weights_ == o.weights_;
    }

private:
    std::vector<int> counts_;
    int dim_;
    uint64_t seed_;
    std::vector<int> grid_levels_;
    int refinement_rounds_;
    size_t stride_;
    std::vector<double> payoffs_;   // size() * dim_
    std::vector<double> weights_;   // size() * stride_
};

namespace detail {

/// All weight vectors (k_1/L, ..., k_m/L), sum k = L, in lexicographic order.
inline void simplex_grid(int m, int levels, std::vector<std::vector<double>>& out) {
    std::vector<int> k(m, 0);
    std::vector<double> w(m);
    int L = levels - 1;
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == m - 1) {
            k[pos] = left;
            for (int j = 0; j < m; ++j) w[j] = static_cast<double>(k[j]) / L;
            out.push_back(w);
            return;
        }
        for (int take = left; take >= 0; --take) {
            k[pos] = take;
            rec(pos + 1, left - take);
        }
    };
    rec(0, L);
}

inline size_t simplex_grid_size(int m, int levels) {
    // C(levels-1 + m-1, m-1)
    size_t L = levels - 1, r = m - 1, num = 1, den = 1;
    for (size_t i = 1; i <= r; ++i) {
        num *= L + i;
        den *= i;
    }
    return num / den;
}

}  // namespace detail

/// Deterministic cloud over the mixed region: a tensor grid over each
/// player's simplex, a seeded Dirichlet batch, and refinement rounds that
/// resample around directional extremes (boundary coverage). Pure function of
/// (game, config), independent of thread count.
inline SampleCloud sample_region(const Game& game, const SampleConfig& config) {
    if (config.grid_resolution < 2) raise(errc::invalid_input, "grid resolution must be >= 2");
    const auto& counts = game.strategy_counts();
    const int n = game.player_count();

    std::vector<int> levels(counts.size(), config.grid_resolution);
    auto grid_total = [&] {
        size_t total = 1;
        for (size_t i = 0; i < counts.size(); ++i) {
            total *= detail::simplex_grid_size(counts[i], levels[i]);
            if (total > config.max_samples) return config.max_samples + 1;
        }
        return total;
    };
    while (grid_total() > std::max<size_t>(config.max_samples / 2, 2)) {
        bool reduced = false;
        for (auto& l : levels)
            if (l > 2) {
                --l;
                reduced = true;
            }
        if (!reduced) break;
    }

    SampleCloud cloud(counts, n, config.seed, levels, config.refinement_rounds);

    std::vector<std::vector<std::vector<double>>> per_player(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) detail::simplex_grid(counts[i], levels[i], per_player[i]);

    std::vector<size_t> pick(counts.size(), 0);
    std::vector<double> w;
    size_t budget = config.max_samples;
    for (;;) {
        w.clear();
        for (size_t i = 0; i < counts.size(); ++i)
            w.insert(w.end(), per_player[i][pick[i]].begin(), per_player[i][pick[i]].end());
        cloud.append_weights(w.data());
        if (--budget == 0) break;
        int i = static_cast<int>(counts.size()) - 1;
        for (; i >= 0; --i) {
            if (++pick[i] < per_player[i].size()) break;
            pick[i] = 0;
        }
        if (i < 0) break;
    }

    Rng rng(config.seed);
    size_t want_random = std::min(config.random_samples, budget);
    w.resize(cloud.weight_stride());
    for (size_t s = 0; s < want_random; ++s) {
        size_t at = 0;
        for (size_t i = 0; i < counts.size(); ++i) {
            rng.next_simplex(counts[i], &w[at]);
            at += counts[i];
        }
        cloud.append_weights(w.data());
    }
    budget -= want_random;

    GameDoubleView view(game);
    cloud.finalize_payoffs(view, config.threads);

    // Refinement: around the current directional extremes, blend fresh
    // Dirichlet noise with shrinking mix-in weight. Anchors come from a fixed
    // per-round direction set, so the result is reproducible.
    for (int round = 1; round <= config.refinement_rounds && budget > 0; ++round) {
        Rng round_rng(config.seed * 1099511628211ULL + round);
        const int anchor_dirs = 64;
        std::vector<std::vector<double>> dirs;
        for (int k = 0; k < anchor_dirs; ++k) {
            std::vector<double> d(n);
            double norm = 0;
            for (int i = 0; i < n; ++i) {
                d[i] = round_rng.next_gaussian();
                norm += d[i] * d[i];
            }
            if (norm == 0) d[0] = 1;
            dirs.push_back(d);
        }
        std::vector<size_t> anchors;
        for (const auto& d : dirs) {
            size_t best = 0;
            double best_val = -1e300;
            for (size_t i = 0; i < cloud.size(); ++i) {
                double val = 0;
                for (int c = 0; c < n; ++c) val += d[c] * cloud.payoff(i)[c];
                if (val > best_val) {
                    best_val = val;
                    best = i;
                }
            }
            anchors.push_back(best);
        }
        double gamma = std::pow(0.5, round);
        size_t batch = std::min(config.refinement_batch, budget);
        std::vector<double> fresh(cloud.weight_stride());
        for (size_t s = 0; s < batch; ++s) {
            const double* base = cloud.weights(anchors[s % anchors.size()]);
            size_t at = 0;
            for (size_t i = 0; i < counts.size(); ++i) {
                round_rng.next_simplex(counts[i], &fresh[at]);
                for (int j = 0; j < counts[i]; ++j) {
                    size_t idx = at + j;
                    fresh[idx] = (1.0 - gamma) * base[idx] + gamma * fresh[idx];
                }
                at += counts[i];
            }
            cloud.append_weights(fresh.data());
        }
        budget -= batch;
        cloud.finalize_payoffs(view, config.threads);
    }
    return cloud;
}

/// Reproducible direction sets with rational coordinates: uniform angles in
/// the plane, a Fibonacci sphere in R^3, seeded Gaussians above that.
inline std::vector<std::vector<Rational>> direction_set(int n, int count, uint64_t seed = 0x5eed) {
    if (n < 1 || count < 1) raise(errc::invalid_direction, "need n >= 1 and count >= 1");
    std::vector<std::vector<Rational>> out;
    out.reserve(count);
    auto snap = [](double x) { return approximate_rational(x, 1u << 20); };
    if (n == 1) {
        for (int k = 0; k < count; ++k) out.push_back({Rational(k % 2 == 0 ? 1 : -1)});
        return out;
    }
    if (n == 2) {
        for (int k = 0; k < count; ++k) {
            double theta = 6.283185307179586477 * k / count;
            std::vector<Rational> c = {snap(std::cos(theta)), snap(std::sin(theta))};
            if (c[0] == 0 && c[1] == 0) c[0] = 1;
            out.push_back(std::move(c));
        }
        return out;
    }
    if (n == 3) {
        const double golden = 2.399963229728653;  // 2*pi*(1 - 1/phi)
        for (int k = 0; k < count; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = golden * k;
            std::vector<Rational> c = {snap(r * std::cos(phi)), snap(r * std::sin(phi)), snap(z)};
            if (c[0] == 0 && c[1] == 0 && c[2] == 0) c[2] = 1;
            out.push_back(std::move(c));
        }
        return out;
    }
    Rng rng(seed);
    for (int k = 0; k < count; ++k) {
        std::vector<double> d(n);
        double norm = 0;
        for (int i = 0; i < n; ++i) {
            d[i] = rng.next_gaussian();
            norm += d[i] * d[i];
        }
        norm = std::sqrt(norm);
        std::vector<Rational> c(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            c[i] = snap(norm > 0 ? d[i] / norm : 0.0);
            nonzero = nonzero || c[i] != 0;
        }
        if (!nonzero) c[0] = 1;
        out.push_back(std::move(c));
    }
    return out;
}

/// Uniform-bucket point index for nearest-neighbor queries on a cloud.
class CloudIndex {
public:
    CloudIndex(const SampleCloud& cloud, double cell) : cloud_(&cloud), dim_(cloud.dim()), cell_(cell) {
        lo_.assign(dim_, 1e300);
        for (size_t i = 0; i < cloud.size(); ++i)
            for (int c = 0; c < dim_; ++c) lo_[c] = std::min(lo_[c], cloud.payoff(i)[c]);
        for (size_t i = 0; i < cloud.size(); ++i) buckets_[key_of(cloud.payoff(i))].push_back(i);
    }

    /// Distance (inf-norm) to the nearest cloud point, or `cap` if nothing
    /// lies within it.
    double nearest_distance(const double* q, double cap) const {
        int rings = static_cast<int>(std::ceil(cap / cell_)) + 1;
        double best = cap;
        std::vector<int64_t> base = cell_coords(q);
        std::vector<int64_t> cur(dim_);
        for (int ring = 0; ring <= rings; ++ring) {
            if ((ring - 1) * cell_ > best) break;
            scan_ring(base, cur, 0, ring, q, best);
        }
        return best;
    }

    std::vector<size_t> within(const double* q, double radius) const {
        std::vector<size_t> out;
        std::vector<int64_t> base = cell_coords(q);
        int rings = static_cast<int>(std::ceil(radius / cell_)) + 1;
        std::vector<int64_t> cur(dim_);
        collect(base, cur, 0, rings, q, radius, out);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<int64_t> cell_coords(const double* q) const {
        std::vector<int64_t> v(dim_);
        for (int c = 0; c < dim_; ++c) v[c] = static_cast<int64_t>(std::floor((q[c] - lo_[c]) / cell_));
        return v;
    }

    uint64_t key_of(const double* q) const {
        auto v = cell_coords(q);
        uint64_t h = 1469598103934665603ULL;
        for (int64_t x : v) {
            h ^= static_cast<uint64_t>(x);
            h *= 1099511628211ULL;
        }
        return h;
    }

    uint64_t key_of_cells(const std::vector<int64_t>& v) const {
        uint64_t h = 1469598103934665603ULL;
        for (int64_t x : v) {
            h ^= static_cast<uint64_t>(x);
            h *= 1099511628211ULL;
        }
        return h;
    }

    void scan_ring(const std::vector<int64_t>& base, std::vector<int64_t>& cur, int depth, int ring, const double* q,
                   double& best) const {
        if (depth == dim_) {
            int cheb = 0;
            for (int c = 0; c < dim_; ++c) cheb = std::max<int>(cheb, std::abs(static_cast<int>(cur[c] - base[c])));
            if (cheb != ring) return;
            auto it = buckets_.find(key_of_cells(cur));
            if (it == buckets_.end()) return;
            for (size_t i : it->second) {
                double d = 0;
                for (int c = 0; c < dim_; ++c) d = std::max(d, std::abs(cloud_->payoff(i)[c] - q[c]));
                best = std::min(best, d);
            }
            return;
        }
        for (int64_t v = base[depth] - ring; v <= base[depth] + ring; ++v) {
            cur[depth] = v;
            scan_ring(base, cur, depth + 1, ring, q, best);
        }
    }

    void collect(const std::vector<int64_t>& base, std::vector<int64_t>& cur, int depth, int rings, const double* q,
                 double radius, std::vector<size_t>& out) const {
        if (depth == dim_) {
            auto it = buckets_.find(key_of_cells(cur));
            if (it == buckets_.end()) return;
            for (size_t i : it->second) {
                double d = 0;
                for (int c = 0; c < dim_; ++c) d = std::max(d, std::abs(cloud_->payoff(i)[c] - q[c]));
                if (d <= radius) out.push_back(i);
            }
            return;
        }
        for (int64_t v = base[depth] - rings; v <= base[depth] + rings; ++v) {
            cur[depth] = v;
            collect(base, cur, depth + 1, rings, q, radius, out);
        }
    }

    const SampleCloud* cloud_;
    int dim_;
    double cell_;
    std::vector<double> lo_;
    std::unordered_map<uint64_t, std::vector<size_t>> buckets_;
};

}  // namespace payreg

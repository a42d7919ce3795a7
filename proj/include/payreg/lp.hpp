#pragma once

#include <utility>
#include <vector>

#include "payreg/quad.hpp"

namespace payreg {

enum class LpStatus { optimal, infeasible, unbounded };
enum class Rel { le, ge, eq };

inline int field_sign(const Rational& x) { return x.sign(); }
inline int field_sign(const QuadScalar& x) { return static_cast<int>(x.sign()); }

template <typename F>
struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<F> values;  // one per declared variable, when optimal
    F objective{};          // in the caller's orientation, when optimal
};

/// Exact dense simplex over an ordered field (Rational or QuadScalar).
///
/// Two-phase, Bland's rule throughout, so it terminates on degenerate inputs
/// (collinear pure payoffs produce plenty of those). Every pivot is a field
/// operation; feasibility and optimality answers are exact. Problems here are
/// tiny — tens of variables — so simplicity wins over sparse cleverness.
///
/// A feasible LP over an ordered subfield of R is feasible over R iff it is
/// feasible over the subfield (basic solutions solve linear systems in the
/// field), so these answers are valid for real-quantified questions too.
template <typename F>
class LpProblem {
public:
    int add_var() {
        free_.push_back(false);
        return static_cast<int>(free_.size()) - 1;
    }
    int add_free_var() {
        free_.push_back(true);
        return static_cast<int>(free_.size()) - 1;
    }
    int var_count() const { return static_cast<int>(free_.size()); }

    void add_row(std::vector<std::pair<int, F>> terms, Rel rel, F rhs) {
        rows_.push_back(Row{std::move(terms), rel, std::move(rhs)});
    }

    void set_objective(bool maximize, std::vector<std::pair<int, F>> terms) {
        maximize_ = maximize;
        objective_ = std::move(terms);
        has_objective_ = true;
    }

    LpResult<F> solve() const {
        const int nvars = var_count();
        // Column layout: per-variable columns (1 for x >= 0, 2 for free),
        // then one slack per inequality row, then one artificial per row.
        std::vector<int> col_of(nvars), neg_col_of(nvars, -1);
        int ncols = 0;
        for (int v = 0; v < nvars; ++v) {
            col_of[v] = ncols++;
            if (free_[v]) neg_col_of[v] = ncols++;
        }
        const int slack_base = ncols;
        for (const Row& r : rows_)
            if (r.rel != Rel::eq) ++ncols;
        const int art_base = ncols;
        ncols += static_cast<int>(rows_.size());

        const int m = static_cast<int>(rows_.size());
        std::vector<std::vector<F>> a(m, std::vector<F>(ncols, F(0)));
        std::vector<F> b(m, F(0));
        std::vector<int> basis(m);
        int slack_at = slack_base;
        for (int i = 0; i < m; ++i) {
            const Row& r = rows_[i];
            for (const auto& [v, coef] : r.terms) {
                a[i][col_of[v]] += coef;
                if (neg_col_of[v] >= 0) a[i][neg_col_of[v]] -= coef;
            }
            if (r.rel == Rel::le) a[i][slack_at++] = F(1);
            if (r.rel == Rel::ge) a[i][slack_at++] = F(-1);
            b[i] = r.rhs;
            if (field_sign(b[i]) < 0) {
                for (auto& x : a[i]) x = -x;
                b[i] = -b[i];
            }
            a[i][art_base + i] = F(1);
            basis[i] = art_base + i;
        }

        // Phase 1: minimize the artificial sum. Reduced costs relative to the
        // all-artificial basis: r_j = -sum_i a_ij for j non-artificial.
        std::vector<F> cost(ncols, F(0));
        F obj = F(0);
        for (int j = 0; j < art_base; ++j)
            for (int i = 0; i < m; ++i) cost[j] -= a[i][j];
        for (int i = 0; i < m; ++i) obj -= b[i];

        LpResult<F> out;
        if (!run_simplex(a, b, basis, cost, obj, art_base)) {
            out.status = LpStatus::unbounded;  // cannot happen in phase 1
            return out;
        }
        if (field_sign(obj) != 0) {
            out.status = LpStatus::infeasible;
            return out;
        }
        // Drive leftover artificials out of the basis; drop redundant rows.
        for (int i = static_cast<int>(basis.size()) - 1; i >= 0; --i) {
            if (basis[i] < art_base) continue;
            int pivot_col = -1;
            for (int j = 0; j < art_base && pivot_col < 0; ++j)
                if (field_sign(a[i][j]) != 0) pivot_col = j;
            if (pivot_col >= 0) {
                pivot(a, b, basis, cost, obj, i, pivot_col);
            } else {
                a.erase(a.begin() + i);
                b.erase(b.begin() + i);
                basis.erase(basis.begin() + i);
            }
        }

        // Phase 2 over the original columns only.
        for (auto& row : a) row.resize(art_base);
        std::vector<F> c2(art_base, F(0));
        if (has_objective_) {
            for (const auto& [v, coef] : objective_) {
                F cc = maximize_ ? -coef : coef;
                c2[col_of[v]] += cc;
                if (neg_col_of[v] >= 0) c2[neg_col_of[v]] -= cc;
            }
        }
        cost.assign(art_base, F(0));
        obj = F(0);
        for (int j = 0; j < art_base; ++j) cost[j] = c2[j];
        for (size_t i = 0; i < basis.size(); ++i) {
            if (field_sign(c2[basis[i]]) == 0) continue;
            F cb = c2[basis[i]];
            for (int j = 0; j < art_base; ++j) cost[j] -= cb * a[i][j];
            obj -= cb * b[i];
        }
        if (!run_simplex(a, b, basis, cost, obj, art_base)) {
            out.status = LpStatus::unbounded;
            return out;
        }

        out.status = LpStatus::optimal;
        std::vector<F> colval(art_base, F(0));
        for (size_t i = 0; i < basis.size(); ++i) colval[basis[i]] = b[i];
        out.values.assign(nvars, F(0));
        for (int v = 0; v < nvars; ++v) {
            out.values[v] = colval[col_of[v]];
            if (neg_col_of[v] >= 0) out.values[v] = out.values[v] - colval[neg_col_of[v]];
        }
        // obj tracks -z for the minimized orientation; undo both negations.
        out.objective = maximize_ ? obj : -obj;
        return out;
    }

private:
    struct Row {
        std::vector<std::pair<int, F>> terms;
        Rel rel;
        F rhs;
    };

    static void pivot(std::vector<std::vector<F>>& a, std::vector<F>& b, std::vector<int>& basis,
                      std::vector<F>& cost, F& obj, int pr, int pc) {
        F inv = F(1) / a[pr][pc];
        for (auto& x : a[pr]) x *= inv;
        b[pr] *= inv;
        a[pr][pc] = F(1);  // kill residual round-off-free but non-canonical forms
        for (size_t i = 0; i < a.size(); ++i) {
            if (static_cast<int>(i) == pr || field_sign(a[i][pc]) == 0) continue;
            F f = a[i][pc];
            for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[pr][j];
            b[i] -= f * b[pr];
            a[i][pc] = F(0);
        }
        if (field_sign(cost[pc]) != 0) {
            F f = cost[pc];
            for (size_t j = 0; j < cost.size(); ++j) cost[j] -= f * a[pr][j];
            obj -= f * b[pr];
            cost[pc] = F(0);
        }
        basis[pr] = pc;
    }

    /// Minimizes with Bland's rule. Returns false on unboundedness.
    static bool run_simplex(std::vector<std::vector<F>>& a, std::vector<F>& b, std::vector<int>& basis,
                            std::vector<F>& cost, F& obj, int usable_cols) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < usable_cols; ++j) {
                if (field_sign(cost[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            F best_ratio = F(0);
            for (size_t i = 0; i < a.size(); ++i) {
                if (field_sign(a[i][enter]) <= 0) continue;
                F ratio = b[i] / a[i][enter];
                if (leave < 0 || field_sign(ratio - best_ratio) < 0 ||
                    (field_sign(ratio - best_ratio) == 0 && basis[i] < basis[leave])) {
                    leave = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(a, b, basis, cost, obj, leave, enter);
        }
    }

    std::vector<bool> free_;
    std::vector<Row> rows_;
    std::vector<std::pair<int, F>> objective_;
    bool has_objective_ = false;
    bool maximize_ = false;
};

/// Feasibility-only convenience: equality system Ax = b, x >= 0.
template <typename F>
LpResult<F> lp_feasible(const std::vector<std::vector<F>>& a, const std::vector<F>& b) {
    LpProblem<F> lp;
    int n = a.empty() ? 0 : static_cast<int>(a[0].size());
    for (int j = 0; j < n; ++j) lp.add_var();
    for (size_t i = 0; i < a.size(); ++i) {
        std::vector<std::pair<int, F>> terms;
        for (int j = 0; j < n; ++j)
            if (field_sign(a[i][j]) != 0) terms.emplace_back(j, a[i][j]);
        lp.add_row(std::move(terms), Rel::eq, b[i]);
    }
    return lp.solve();
}

}  // namespace payreg

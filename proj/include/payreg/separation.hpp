#pragma once

#include <utility>
#include <vector>

#include "payreg/game.hpp"
#include "payreg/lp.hpp"

namespace payreg {

/// Witness that a point v lies strictly outside conv(others):
/// normal . v >= normal . w + strict_margin for every w in others.
/// The normal is rational even when the points live in Q(sqrt(d)).
struct SeparationCertificate {
    std::vector<Rational> normal;
    Rational strict_margin;
};

struct SeparationResult {
    bool separable = false;
    SeparationCertificate certificate;        // set iff separable
    std::vector<QuadScalar> convex_coeffs;    // set iff !separable: v = sum coeffs[j] * others[j]
};

inline bool verify_separation(const PayoffVector& v, const std::vector<PayoffVector>& others,
                              const SeparationCertificate& cert) {
    bool nonzero = false;
    for (const auto& c : cert.normal) nonzero = nonzero || c != 0;
    if (!nonzero || cert.strict_margin.sign() <= 0) return false;
    QuadScalar lhs = dot(cert.normal, v);
    for (const auto& w : others) {
        QuadScalar gap = lhs - dot(cert.normal, w) - QuadScalar(cert.strict_margin);
        if (gap.sign() == Sign::negative) return false;
    }
    return true;
}

inline bool verify_convex_combination(const PayoffVector& v, const std::vector<PayoffVector>& others,
                                      const std::vector<QuadScalar>& lambda) {
    if (lambda.size() != others.size()) return false;
    QuadScalar total(Rational(0));
    std::vector<QuadScalar> acc(v.coords.size(), QuadScalar(Rational(0)));
    for (size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j].sign() == Sign::negative) return false;
        total += lambda[j];
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += lambda[j] * others[j].coords[i];
    }
    if (total != QuadScalar(1)) return false;
    for (size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != v.coords[i]) return false;
    return true;
}

namespace detail {

template <typename F>
F to_field(const QuadScalar& x);
template <>
inline Rational to_field<Rational>(const QuadScalar& x) { return x.rational_part(); }
template <>
inline QuadScalar to_field<QuadScalar>(const QuadScalar& x) { return x; }

/// Maximize the separation margin t over |c_i| <= 1:
///   c . (v - w_j) >= t  for all j.
/// t* > 0 iff v lies outside conv(others); at t* = 0 the primal hull LP is
/// feasible and yields the convex coefficients.
template <typename F>
struct MarginMax {
    LpStatus status;
    F margin;
    std::vector<F> normal;
};

template <typename F>
MarginMax<F> max_margin(const PayoffVector& v, const std::vector<PayoffVector>& others) {
    const int n = v.dim();
    LpProblem<F> lp;
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = lp.add_free_var();
    int t = lp.add_free_var();
    for (const auto& w : others) {
        std::vector<std::pair<int, F>> terms;
        for (int i = 0; i < n; ++i) {
            F diff = to_field<F>(v.coords[i] - w.coords[i]);
            if (field_sign(diff) != 0) terms.emplace_back(c[i], diff);
        }
        terms.emplace_back(t, F(-1));
        lp.add_row(std::move(terms), Rel::ge, F(0));
    }
    for (int i = 0; i < n; ++i) {
        lp.add_row({{c[i], F(1)}}, Rel::le, F(1));
        lp.add_row({{c[i], F(1)}}, Rel::ge, F(-1));
    }
    lp.set_objective(true, {{t, F(1)}});
    auto sol = lp.solve();
    MarginMax<F> out;
    out.status = sol.status;
    if (sol.status == LpStatus::optimal) {
        out.margin = sol.values[t];
        out.normal.reserve(n);
        for (int i = 0; i < n; ++i) out.normal.push_back(sol.values[c[i]]);
    }
    return out;
}

template <typename F>
std::vector<F> hull_coefficients(const PayoffVector& v, const std::vector<PayoffVector>& others) {
    const int n = v.dim();
    LpProblem<F> lp;
    std::vector<int> lam(others.size());
    for (size_t j = 0; j < others.size(); ++j) lam[j] = lp.add_var();
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, F>> terms;
        for (size_t j = 0; j < others.size(); ++j) {
            F coef = to_field<F>(others[j].coords[i]);
            if (field_sign(coef) != 0) terms.emplace_back(lam[j], coef);
        }
        lp.add_row(std::move(terms), Rel::eq, to_field<F>(v.coords[i]));
    }
    {
        std::vector<std::pair<int, F>> terms;
        for (size_t j = 0; j < others.size(); ++j) terms.emplace_back(lam[j], F(1));
        lp.add_row(std::move(terms), Rel::eq, F(1));
    }
    auto sol = lp.solve();
    std::vector<F> out;
    if (sol.status == LpStatus::optimal)
        for (size_t j = 0; j < others.size(); ++j) out.push_back(sol.values[lam[j]]);
    return out;
}

/// Rounds a Q(sqrt(d)) normal to a nearby rational one that still separates,
/// with an exactly verified rational margin. The separating cone is open, so
/// some finite precision always works; retry with a tighter radical bracket
/// until verification passes.
inline SeparationCertificate rationalize_certificate(const PayoffVector& v,
                                                     const std::vector<PayoffVector>& others,
                                                     const std::vector<QuadScalar>& normal) {
    for (int bits = 32; bits <= 512; bits *= 2) {
        SeparationCertificate cert;
        cert.normal.reserve(normal.size());
        for (const auto& c : normal) cert.normal.push_back(quad_lower_bound(c, bits));
        bool nonzero = false;
        for (const auto& c : cert.normal) nonzero = nonzero || c != 0;
        if (!nonzero) continue;

        // Exact margin of the rounded normal, then a rational lower bound.
        QuadScalar lhs = dot(cert.normal, v);
        bool ok = true;
        QuadScalar min_gap;
        bool first = true;
        for (const auto& w : others) {
            QuadScalar gap = lhs - dot(cert.normal, w);
            if (gap.sign() != Sign::positive) {
                ok = false;
                break;
            }
            if (first || gap < min_gap) {
                min_gap = gap;
                first = false;
            }
        }
        if (!ok) continue;
        Rational bound = quad_lower_bound(min_gap, bits);
        if (bound.sign() <= 0) continue;
        cert.strict_margin = bound;
        if (verify_separation(v, others, cert)) return cert;
    }
    raise(errc::invalid_input, "failed to rationalize separation certificate");
}

}  // namespace detail

/// Decides whether v lies outside conv(others), returning a strict-margin
/// certificate or the exhibiting convex coefficients. Empty `others` counts
/// as vacuously separable.
inline SeparationResult separate_point(const PayoffVector& v, const std::vector<PayoffVector>& others) {
    SeparationResult res;
    if (others.empty()) {
        res.separable = true;
        res.certificate.normal.assign(v.coords.size(), Rational(0));
        res.certificate.normal[0] = 1;
        res.certificate.strict_margin = 1;
        return res;
    }
    bool rational_only = std::all_of(v.coords.begin(), v.coords.end(),
                                     [](const QuadScalar& c) { return c.is_rational(); });
    for (const auto& w : others)
        rational_only = rational_only && std::all_of(w.coords.begin(), w.coords.end(),
                                                     [](const QuadScalar& c) { return c.is_rational(); });

    if (rational_only) {
        auto mm = detail::max_margin<Rational>(v, others);
        if (mm.status != LpStatus::optimal) raise(errc::invalid_input, "margin LP failed");
        if (mm.margin.sign() > 0) {
            res.separable = true;
            res.certificate.normal = mm.normal;
            res.certificate.strict_margin = mm.margin;
            return res;
        }
        auto lam = detail::hull_coefficients<Rational>(v, others);
        if (lam.empty()) raise(errc::invalid_input, "zero margin but hull LP infeasible");
        res.convex_coeffs.assign(lam.begin(), lam.end());
        return res;
    }

    auto mm = detail::max_margin<QuadScalar>(v, others);
    if (mm.status != LpStatus::optimal) raise(errc::invalid_input, "margin LP failed");
    if (mm.margin.sign() == Sign::positive) {
        res.separable = true;
        res.certificate = detail::rationalize_certificate(v, others, mm.normal);
        return res;
    }
    res.convex_coeffs = detail::hull_coefficients<QuadScalar>(v, others);
    if (res.convex_coeffs.empty()) raise(errc::invalid_input, "zero margin but hull LP infeasible");
    return res;
}

}  // namespace payreg

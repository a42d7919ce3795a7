#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "payreg/errors.hpp"

namespace payreg {

// Arbitrary-precision rational. Always stored normalized: positive
// denominator, gcd(|num|, den) = 1. Exactness is non-negotiable here; every
// probability and every certified comparison in the library runs on these.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Sign sign_of(const Rational& x) {
    int s = x.sign();
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Parses "p/q" or "p" (optionally signed). Throws parse_error on malformed
/// input or zero denominator; "-3/-4" style double signs are rejected.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&](const char* why) -> Rational {
        raise(errc::parse_error, "bad rational '" + text + "': " + why);
    };
    if (text.empty()) return bad("empty");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) return bad("missing numerator or denominator");
        if (den[0] == '+' || den[0] == '-') return bad("signed denominator");
        BigInt n(num), d(den);
        if (d == 0) return bad("zero denominator");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        return bad("not an integer ratio");
    }
}

/// Canonical text form: "p" when integral, else "p/q" with q > 0.
inline std::string format_rational(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) raise(errc::invalid_input, "non-finite double");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    int64_t m = static_cast<int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(m);
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

/// Best rational approximation of |x - p/q| with q <= max_den, by continued
/// fractions (with the usual semiconvergent at the cut-off).
inline Rational approximate_rational(double x, uint64_t max_den) {
    if (max_den == 0) raise(errc::invalid_input, "max_den = 0");
    if (!std::isfinite(x)) raise(errc::invalid_input, "non-finite double");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // Convergents p/q of the continued fraction of v.
    uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fa = std::floor(frac);
        if (fa > 9e18) break;
        uint64_t a = static_cast<uint64_t>(fa);
        if (q1 != 0 && a > (max_den - q0) / q1) {
            // Take the largest semiconvergent that still fits.
            uint64_t a_cut = (max_den - q0) / q1;
            if (a_cut > 0) {
                p0 = p0 + a_cut * p1;
                q0 = q0 + a_cut * q1;
            }
            break;
        }
        uint64_t p2 = p0 + a * p1;
        uint64_t q2 = q0 + a * q1;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fa;
        if (rem < 1e-18) { p0 = p1; q0 = q1; break; }
        frac = 1.0 / rem;
    }
    // p1/q1 is the last full convergent; p0/q0 the runner-up (or the
    // semiconvergent). Pick whichever is closer among those that fit.
    Rational best;
    bool have = false;
    auto consider = [&](uint64_t p, uint64_t q) {
        if (q == 0 || q > max_den) return;
        Rational cand{BigInt(p), BigInt(q)};
        if (!have || std::fabs(to_double(cand) - v) < std::fabs(to_double(best) - v)) {
            best = cand;
            have = true;
        }
    };
    consider(p1, q1);
    consider(p0, q0);
    if (!have) best = Rational(static_cast<int64_t>(std::llround(v)));
    return neg ? Rational(-best) : best;
}

}  // namespace payreg

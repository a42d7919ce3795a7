#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "payreg/rational.hpp"

namespace payreg {

/// Checks that d is squarefree and >= 2, so that sqrt(d) is irrational and
/// the (a, b) representation below is unique.
inline bool is_valid_discriminant(int64_t d) {
    if (d < 2) return false;
    for (int64_t p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) return false;
    }
    return true;
}

/// Exact element of the real quadratic field Q(sqrt(d)): value a + b*sqrt(d)
/// with rational a, b. Values with b = 0 are plain rationals and combine with
/// any discriminant; mixing two distinct irrational discriminants throws.
///
/// Sign determination never touches floating point: sign(a + b*sqrt(d)) is
/// resolved from the signs of a and b, falling back to the sign of
/// a^2 - d*b^2 when they disagree.
class QuadScalar {
public:
    QuadScalar() : a_(0), b_(0), d_(2) {}
    QuadScalar(Rational rational) : a_(std::move(rational)), b_(0), d_(2) {}  // NOLINT(google-explicit-constructor)
    QuadScalar(int64_t n) : a_(n), b_(0), d_(2) {}                            // NOLINT(google-explicit-constructor)

    QuadScalar(Rational a, Rational b, int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (!is_valid_discriminant(d)) {
            raise(errc::invalid_input, "discriminant must be squarefree and >= 2, got " + std::to_string(d));
        }
    }

    static QuadScalar sqrt_d(int64_t d) { return QuadScalar(Rational(0), Rational(1), d); }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    int64_t discriminant() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    Sign sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa < 0 ? Sign::negative : (sa > 0 ? Sign::positive : Sign::zero);
        if (sa == 0) return sb < 0 ? Sign::negative : Sign::positive;
        if (sa == sb) return sa < 0 ? Sign::negative : Sign::positive;
        // a and b pull in opposite directions: compare |a| with |b|*sqrt(d)
        // via squares. a^2 - d b^2 has the sign of (|a| - |b| sqrt(d)).
        Rational disc = a_ * a_ - Rational(d_) * b_ * b_;
        int sd = disc.sign();
        if (sd == 0) return Sign::zero;  // impossible for squarefree d, kept for safety
        // sa > 0: value > 0 iff |a| > |b| sqrt(d) iff disc > 0.
        int s = (sa > 0) ? sd : -sd;
        return s < 0 ? Sign::negative : Sign::positive;
    }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadScalar operator-() const { return QuadScalar(-a_, -b_, d_, unchecked{}); }

    QuadScalar& operator+=(const QuadScalar& o) {
        int64_t d = joint_discriminant(o);
        a_ += o.a_;
        b_ += o.b_;
        d_ = d;
        return *this;
    }
    QuadScalar& operator-=(const QuadScalar& o) { return *this += -o; }

    QuadScalar& operator*=(const QuadScalar& o) {
        int64_t d = joint_discriminant(o);
        Rational na = a_ * o.a_ + Rational(d) * b_ * o.b_;
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        d_ = d;
        return *this;
    }

    QuadScalar& operator/=(const QuadScalar& o) {
        int64_t d = joint_discriminant(o);
        if (o.is_zero()) raise(errc::invalid_input, "division by zero");
        // 1/(c + e sqrt(d)) = (c - e sqrt(d)) / (c^2 - d e^2)
        Rational denom = o.a_ * o.a_ - Rational(d) * o.b_ * o.b_;
        QuadScalar conj(o.a_, -o.b_, d, unchecked{});
        *this *= conj;
        a_ /= denom;
        b_ /= denom;
        return *this;
    }

    friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
    friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
    friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
    friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        if (x.a_ != y.a_ || x.b_ != y.b_) return false;
        if (x.b_ != 0) x.joint_discriminant(y);  // same (a,b) but check field compatibility
        return true;
    }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
    friend bool operator<(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() == Sign::negative; }
    friend bool operator>(const QuadScalar& x, const QuadScalar& y) { return y < x; }
    friend bool operator<=(const QuadScalar& x, const QuadScalar& y) { return !(y < x); }
    friend bool operator>=(const QuadScalar& x, const QuadScalar& y) { return !(x < y); }

    double to_double() const {
        double v = payreg::to_double(a_);
        if (b_ != 0) v += payreg::to_double(b_) * std::sqrt(static_cast<double>(d_));
        return v;
    }

    long double to_long_double() const {
        long double v = a_.convert_to<long double>();
        if (b_ != 0) v += b_.convert_to<long double>() * sqrtl(static_cast<long double>(d_));
        return v;
    }

    /// "3/2", "v2" for sqrt(2), "1/2+3v2" for 1/2 + 3*sqrt(2), etc. The 'v'
    /// stands in for the radical; meant for logs and test failure messages.
    std::string str() const {
        if (b_ == 0) return format_rational(a_);
        std::string radical = (b_ == 1 ? "" : (b_ == -1 ? "-" : format_rational(b_))) + "v" + std::to_string(d_);
        if (a_ == 0) return radical;
        return format_rational(a_) + (b_.sign() > 0 ? "+" : "") + radical;
    }

private:
    struct unchecked {};
    QuadScalar(Rational a, Rational b, int64_t d, unchecked) : a_(std::move(a)), b_(std::move(b)), d_(d) {}

    int64_t joint_discriminant(const QuadScalar& o) const {
        if (d_ == o.d_ || o.b_ == 0) return d_;
        if (b_ == 0) return o.d_;
        raise(errc::field_mismatch,
              "cannot combine sqrt(" + std::to_string(d_) + ") with sqrt(" + std::to_string(o.d_) + ")");
    }

    Rational a_, b_;
    int64_t d_;
};

inline Sign compare(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign(); }

/// Rational bracket lo <= sqrt(d) <= hi with hi - lo <= 2^-bits, by bisection.
inline std::pair<Rational, Rational> sqrt_bracket(int64_t d, int bits) {
    int64_t root = 1;
    while ((root + 1) * (root + 1) <= d) ++root;
    Rational lo(root), hi(root + 1);
    Rational dd(d);
    for (int i = 0; i < bits; ++i) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid <= dd)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

/// Exact rational bounds on the value of x, tight to ~|b| * 2^-bits.
inline Rational quad_lower_bound(const QuadScalar& x, int bits) {
    if (x.is_rational()) return x.rational_part();
    auto [lo, hi] = sqrt_bracket(x.discriminant(), bits);
    return x.rational_part() + x.radical_part() * (x.radical_part().sign() >= 0 ? lo : hi);
}

inline Rational quad_upper_bound(const QuadScalar& x, int bits) {
    if (x.is_rational()) return x.rational_part();
    auto [lo, hi] = sqrt_bracket(x.discriminant(), bits);
    return x.rational_part() + x.radical_part() * (x.radical_part().sign() >= 0 ? hi : lo);
}

}  // namespace payreg

#pragma once

#include <string>
#include <utility>

#include "dioph/errors.hpp"
#include "dioph/rational.hpp"

namespace dioph {

namespace detail {

// Extracts the largest square factor found by trial division: n = f*f*rest.
// Trial division is capped; callers only see moderate radicands.
inline std::pair<Int, Int> extract_square(const Int& n) {
    Int f = 1, rest = n;
    for (Int p = 2; p * p <= rest && p < 100000; ++p) {
        Int pp = p * p;
        while (rest % pp == 0) {
            rest /= pp;
            f *= p;
        }
    }
    Int s = isqrt(rest);
    if (s * s == rest) {
        f *= s;
        rest = 1;
    }
    return {f, rest};
}

}  // namespace detail

// Exact element of the real quadratic field Q(sqrt(c)): value (p + q*sqrt(c)) / r.
// Canonical: r > 0, gcd(p, q, r) = 1, c square-free-as-found and c > 1 iff q != 0
// (purely rational values store c = 0, q = 0). Arithmetic between two operands
// requires a common radicand; rationals mix with everything.
class QuadSurd {
  public:
    QuadSurd() : p_(0), q_(0), r_(1), c_(0) {}
    QuadSurd(int v) : p_(v), q_(0), r_(1), c_(0) {}
    QuadSurd(const Rat& v) : p_(num(v)), q_(0), r_(den(v)), c_(0) {}

    // (a + b*sqrt(c)) / d with integer parts.
    static QuadSurd make(const Int& a, const Int& b, const Int& c, const Int& d) {
        if (d == 0) fail(Errc::Domain, "quad_surd with zero denominator");
        if (c < 0) fail(Errc::Domain, "quad_surd with negative radicand");
        QuadSurd s;
        auto [f, rest] = detail::extract_square(c);
        s.p_ = a;
        s.q_ = b * f;
        s.c_ = rest;
        s.r_ = d;
        if (s.c_ == 1 || b == 0) {  // collapses to a rational
            s.p_ += (s.c_ == 1) ? s.q_ : 0;
            s.q_ = 0;
            s.c_ = 0;
        }
        s.normalize();
        return s;
    }

    static QuadSurd sqrt_of(const Int& n) { return make(0, 1, n, 1); }

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    const Int& c() const { return c_; }

    bool is_rational() const { return q_ == 0; }
    Rat rational_part() const { return Rat(p_, r_); }
    Rat as_rational() const {
        if (!is_rational()) fail(Errc::Domain, "surd is irrational");
        return Rat(p_, r_);
    }

    QuadSurd operator-() const {
        QuadSurd s = *this;
        s.p_ = -s.p_;
        s.q_ = -s.q_;
        return s;
    }

    friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
        Int c = common_radicand(x, y);
        QuadSurd s;
        s.p_ = x.p_ * y.r_ + y.p_ * x.r_;
        s.q_ = x.q_ * y.r_ + y.q_ * x.r_;
        s.r_ = x.r_ * y.r_;
        s.c_ = s.q_ == 0 ? Int(0) : c;
        s.normalize();
        return s;
    }
    friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }

    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
        Int c = common_radicand(x, y);
        QuadSurd s;
        s.p_ = x.p_ * y.p_ + x.q_ * y.q_ * c;
        s.q_ = x.p_ * y.q_ + x.q_ * y.p_;
        s.r_ = x.r_ * y.r_;
        s.c_ = s.q_ == 0 ? Int(0) : c;
        s.normalize();
        return s;
    }

    friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) {
        if (y.sign() == 0) fail(Errc::Domain, "division by zero surd");
        // 1/((p + q sqrt(c))/r) = r (p - q sqrt(c)) / (p^2 - q^2 c)
        Int c = common_radicand(x, y);
        QuadSurd inv;
        Int norm = y.p_ * y.p_ - y.q_ * y.q_ * c;
        inv.p_ = y.r_ * y.p_;
        inv.q_ = -y.r_ * y.q_;
        inv.r_ = norm;
        inv.c_ = inv.q_ == 0 ? Int(0) : c;
        inv.normalize();
        return x * inv;
    }

    QuadSurd& operator+=(const QuadSurd& o) { return *this = *this + o; }
    QuadSurd& operator-=(const QuadSurd& o) { return *this = *this - o; }
    QuadSurd& operator*=(const QuadSurd& o) { return *this = *this * o; }
    QuadSurd& operator/=(const QuadSurd& o) { return *this = *this / o; }

    // Sign of p + q*sqrt(c) (r > 0 after normalization).
    int sign() const {
        if (q_ == 0) return p_ == 0 ? 0 : (p_ > 0 ? 1 : -1);
        if (p_ >= 0 && q_ > 0) return 1;
        if (p_ <= 0 && q_ < 0) return -1;
        Int lhs = p_ * p_, rhs = q_ * q_ * c_;
        if (p_ > 0) return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);  // q < 0
        return rhs > lhs ? 1 : (rhs < lhs ? -1 : 0);              // p < 0, q > 0
    }

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() == 0; }
    friend bool operator!=(const QuadSurd& x, const QuadSurd& y) { return !(x == y); }
    friend bool operator<(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() >= 0; }

    // Exact rational enclosure of width <= 2^-bits.
    void enclose(unsigned bits, Rat& lo, Rat& hi) const {
        if (q_ == 0) {
            lo = hi = Rat(p_, r_);
            return;
        }
        Int scale = pow2(bits + 2);
        Int s = isqrt(c_ * scale * scale);  // floor(sqrt(c) * 2^(bits+2))
        Rat root_lo(s, scale), root_hi(s + 1, scale);
        if (q_ > 0) {
            lo = Rat(p_, r_) + Rat(q_, r_) * root_lo;
            hi = Rat(p_, r_) + Rat(q_, r_) * root_hi;
        } else {
            lo = Rat(p_, r_) + Rat(q_, r_) * root_hi;
            hi = Rat(p_, r_) + Rat(q_, r_) * root_lo;
        }
    }

    double to_double() const {
        if (q_ == 0) return Rat(p_, r_).convert_to<double>();
        Rat lo, hi;
        enclose(80, lo, hi);
        return ((lo + hi) / 2).convert_to<double>();
    }

    std::string str() const {
        if (q_ == 0) return rat_to_string(Rat(p_, r_));
        std::string s = "(" + p_.str() + (q_ >= 0 ? "+" : "") + q_.str() + "*sqrt(" + c_.str() + "))";
        if (r_ != 1) s += "/" + r_.str();
        return s;
    }

  private:
    static Int common_radicand(const QuadSurd& x, const QuadSurd& y) {
        if (x.q_ == 0) return y.c_;
        if (y.q_ == 0) return x.c_;
        if (x.c_ != y.c_) fail(Errc::Domain, "mixed radicands " + x.c_.str() + " and " + y.c_.str());
        return x.c_;
    }

    void normalize() {
        if (r_ < 0) {
            r_ = -r_;
            p_ = -p_;
            q_ = -q_;
        }
        Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(int_abs(p_), int_abs(q_)), r_);
        if (g > 1) {
            p_ /= g;
            q_ /= g;
            r_ /= g;
        }
        if (q_ == 0) c_ = 0;
    }

    Int p_, q_, r_, c_;
};

// --- Scalar trait: the exact ordered fields the piecewise-linear machinery runs over.

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static Rat from_rat(const Rat& r) { return r; }
    static bool is_rational(const Rat&) { return true; }
    static Rat to_rat(const Rat& r) { return r; }
    static double to_double(const Rat& r) { return dioph::to_double(r); }
    static std::string str(const Rat& r) { return rat_to_string(r); }
};

template <>
struct scalar_traits<QuadSurd> {
    static QuadSurd from_rat(const Rat& r) { return QuadSurd(r); }
    static bool is_rational(const QuadSurd& s) { return s.is_rational(); }
    static Rat to_rat(const QuadSurd& s) { return s.as_rational(); }
    static double to_double(const QuadSurd& s) { return s.to_double(); }
    static std::string str(const QuadSurd& s) { return s.str(); }
};

}  // namespace dioph

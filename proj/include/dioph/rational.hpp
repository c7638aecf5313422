#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "dioph/errors.hpp"

namespace dioph {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat make_rat(const Int& p, const Int& q) {
    if (q == 0) fail(Errc::Domain, "zero denominator");
    return Rat(p, q);
}

inline Int pow2(unsigned k) { return Int(1) << k; }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Int int_abs(const Int& n) { return n < 0 ? Int(-n) : n; }

// floor(p/q) for exact rationals.
inline Int rat_floor(const Rat& r) {
    Int p = num(r), q = den(r);
    Int d = p / q;
    if (p % q != 0 && p < 0) --d;
    return d;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Nearest integer, ties rounded half up (towards +inf).
inline Int rat_round(const Rat& r) { return rat_floor(r + Rat(1, 2)); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Integer square root (floor). Boost provides sqrt for cpp_int.
inline Int isqrt(const Int& n) {
    if (n < 0) fail(Errc::Domain, "isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

// Integer cube root (floor), Newton iteration.
inline Int icbrt(const Int& n) {
    if (n < 0) fail(Errc::Domain, "icbrt of negative");
    if (n == 0) return 0;
    Int x = Int(1) << static_cast<unsigned>((boost::multiprecision::msb(n) / 3) + 1);
    for (;;) {
        Int y = (2 * x + n / (x * x)) / 3;
        if (y >= x) break;
        x = y;
    }
    while (x * x * x > n) --x;
    while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
    return x;
}

// Renders "p" when the denominator is 1, otherwise "p/q".
inline std::string rat_to_string(const Rat& r) {
    Int p = num(r), q = den(r);
    std::string s = p.str();
    if (q != 1) s += "/" + q.str();
    return s;
}

// Parses "<int>" or "<int>/<uint>". Strict: no whitespace, no empty parts.
inline Rat parse_rat(const std::string& text) {
    auto is_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int(text, true)) fail(Errc::Syntax, "not a rational: '" + text + "'");
        return Rat(Int(text));
    }
    std::string ps = text.substr(0, slash), qs = text.substr(slash + 1);
    if (!is_int(ps, true) || !is_int(qs, false))
        fail(Errc::Syntax, "not a rational: '" + text + "'");
    Int q(qs);
    if (q == 0) fail(Errc::Domain, "zero denominator: '" + text + "'");
    return Rat(Int(ps), q);
}

// Simplest rational in [lo, hi]: smallest denominator, continued-fraction descent.
// Requires lo <= hi.
inline Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
    if (lo > hi) fail(Errc::Domain, "empty interval");
    if (lo <= 0 && hi >= 0) return Rat(0);
    if (hi < 0) return -simplest_rational_in(-hi, -lo);
    Int c = rat_ceil(lo);
    if (Rat(c) <= hi) return Rat(c);
    Int f = rat_floor(lo);  // == floor(hi); no integer inside the interval
    Rat inner = simplest_rational_in(Rat(1) / (hi - Rat(f)), Rat(1) / (lo - Rat(f)));
    return Rat(f) + Rat(1) / inner;
}

}  // namespace dioph

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dioph/certlog.hpp"
#include "dioph/errors.hpp"
#include "dioph/quadsurd.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// Exact symbolic description of a real number. Every RealExpr denotes exactly
// one real; certified rational enclosures of any width are available on demand.
class RealExpr {
  public:
    enum class Kind { Rational, Sqrt, Cbrt, QuadSurdK, Decimal, PeriodicCf };

    static RealExpr rational(const Rat& v) {
        RealExpr e(Kind::Rational);
        e.rat_ = v;
        return e;
    }

    static RealExpr sqrt_of(const Int& n) {
        if (n < 0) fail(Errc::Domain, "sqrt of negative");
        RealExpr e(Kind::Sqrt);
        e.n_ = n;
        return e;
    }

    static RealExpr cbrt_of(const Int& n) {
        if (n < 0) fail(Errc::Domain, "cbrt of negative");
        RealExpr e(Kind::Cbrt);
        e.n_ = n;
        return e;
    }

    // (a + b*sqrt(c)) / d
    static RealExpr quad_surd(const Int& a, const Int& b, const Int& c, const Int& d) {
        if (d == 0) fail(Errc::Domain, "quad_surd with zero denominator");
        if (c < 0) fail(Errc::Domain, "quad_surd with negative radicand");
        if (b != 0) {
            Int s = isqrt(c);
            if (s * s == c) fail(Errc::Domain, "quad_surd radicand must not be a perfect square");
        }
        RealExpr e(Kind::QuadSurdK);
        e.surd_ = QuadSurd::make(a, b, c, d);
        return e;
    }

    // Exact rational digits * 10^exp10; the digit string denotes itself, not a
    // nearby unknown real.
    static RealExpr decimal(const std::string& digits, long exp10) {
        if (digits.empty()) fail(Errc::Syntax, "empty digit string");
        for (char ch : digits)
            if (ch < '0' || ch > '9') fail(Errc::Syntax, "bad digit in decimal");
        RealExpr e(Kind::Decimal);
        e.digits_ = digits;
        e.exp10_ = exp10;
        return e;
    }

    static RealExpr periodic_cf(std::vector<Int> pre, std::vector<Int> per) {
        if (pre.empty()) fail(Errc::Domain, "continued fraction needs a0");
        if (per.empty()) fail(Errc::Domain, "continued fraction period must be non-empty");
        if (pre[0] < 0) fail(Errc::Domain, "a0 must be >= 0");
        for (std::size_t i = 1; i < pre.size(); ++i)
            if (pre[i] < 1) fail(Errc::Domain, "partial quotients must be >= 1");
        for (const Int& p : per)
            if (p < 1) fail(Errc::Domain, "partial quotients must be >= 1");
        RealExpr e(Kind::PeriodicCf);
        e.pre_ = std::move(pre);
        e.per_ = std::move(per);
        return e;
    }

    Kind kind() const { return kind_; }

    bool is_rational_value() const {
        switch (kind_) {
            case Kind::Rational:
            case Kind::Decimal: return true;
            case Kind::Sqrt: {
                Int s = isqrt(n_);
                return s * s == n_;
            }
            case Kind::Cbrt: {
                Int s = icbrt(n_);
                return s * s * s == n_;
            }
            case Kind::QuadSurdK: return surd_.is_rational();
            case Kind::PeriodicCf: return false;  // infinite continued fraction
        }
        return false;
    }

    Rat rational_value() const {
        switch (kind_) {
            case Kind::Rational: return rat_;
            case Kind::Decimal: {
                Rat v(Int(digits_));
                if (exp10_ >= 0)
                    for (long i = 0; i < exp10_; ++i) v *= 10;
                else
                    for (long i = 0; i < -exp10_; ++i) v /= 10;
                return v;
            }
            case Kind::Sqrt: {
                Int s = isqrt(n_);
                if (s * s != n_) fail(Errc::Domain, "irrational sqrt");
                return Rat(s);
            }
            case Kind::Cbrt: {
                Int s = icbrt(n_);
                if (s * s * s != n_) fail(Errc::Domain, "irrational cbrt");
                return Rat(s);
            }
            case Kind::QuadSurdK: return surd_.as_rational();
            case Kind::PeriodicCf: fail(Errc::Domain, "continued fraction value is irrational");
        }
        fail(Errc::Domain, "unreachable");
    }

    bool is_zero() const { return is_rational_value() && rational_value() == 0; }

    // True when the value lies in a real quadratic field (or in Q).
    bool is_quadratic() const { return kind_ != Kind::Cbrt || is_rational_value(); }

    QuadSurd as_quad_surd() const {
        switch (kind_) {
            case Kind::Rational: return QuadSurd(rat_);
            case Kind::Decimal: return QuadSurd(rational_value());
            case Kind::Sqrt: return QuadSurd::sqrt_of(n_);
            case Kind::QuadSurdK: return surd_;
            case Kind::PeriodicCf: return cf_value();
            case Kind::Cbrt:
                if (is_rational_value()) return QuadSurd(rational_value());
                fail(Errc::Domain, "cbrt value is not quadratic");
        }
        fail(Errc::Domain, "unreachable");
    }

    // First k+1 continued-fraction convergents h_i/g_i (continued-fraction kinds).
    std::vector<Rat> convergents(std::size_t count) const {
        if (kind_ != Kind::PeriodicCf) fail(Errc::Domain, "convergents need a continued fraction");
        std::vector<Rat> out;
        Int h0 = 1, h1 = pre_[0], g0 = 0, g1 = 1;
        out.push_back(Rat(h1, g1));
        std::size_t i = 1;
        while (out.size() < count) {
            const Int& a = i < pre_.size() ? pre_[i] : per_[(i - pre_.size()) % per_.size()];
            Int h2 = a * h1 + h0, g2 = a * g1 + g0;
            out.push_back(Rat(h2, g2));
            h0 = h1;
            h1 = h2;
            g0 = g1;
            g1 = g2;
            ++i;
        }
        return out;
    }

    // Certified enclosure of width <= eps. Working precision doubles per retry,
    // capped at 16 retries.
    Enclosure enclose(const Rat& eps) const {
        if (eps <= 0) fail(Errc::Domain, "enclose needs eps > 0");
        if (is_rational_value()) {
            Rat v = rational_value();
            return {v, v};
        }
        unsigned bits = 16;
        for (int retry = 0; retry <= 16; ++retry, bits *= 2) {
            Enclosure e = enclose_bits(bits);
            if (e.width() <= eps) return e;
        }
        fail(Errc::PrecisionBudget, "enclosure width did not reach eps within retry cap");
    }

    // Integer A with |value * 2^bits - A| <= 1.
    Int fixed_point(unsigned bits) const {
        Enclosure e = enclose(Rat(1, pow2(bits + 2)));
        return rat_round(e.mid() * Rat(pow2(bits)));
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Rational: return num(rat_).str() + "/" + den(rat_).str();
            case Kind::Sqrt: return "sqrt(" + n_.str() + ")";
            case Kind::Cbrt: return "cbrt(" + n_.str() + ")";
            case Kind::QuadSurdK: return surd_.str();
            case Kind::Decimal:
                return "dec:" + digits_ + (exp10_ != 0 ? "e" + std::to_string(exp10_) : "");
            case Kind::PeriodicCf: {
                std::string s = "cf:[" + pre_[0].str() + ";";
                for (std::size_t i = 1; i < pre_.size(); ++i)
                    s += (i > 1 ? "," : "") + pre_[i].str();
                s += "|";
                for (std::size_t i = 0; i < per_.size(); ++i)
                    s += (i > 0 ? "," : "") + per_[i].str();
                return s + "]";
            }
        }
        return "?";
    }

  private:
    explicit RealExpr(Kind k) : kind_(k) {}

    Enclosure enclose_bits(unsigned bits) const {
        switch (kind_) {
            case Kind::Sqrt: {
                Int scale = pow2(bits);
                Int s = isqrt(n_ * scale * scale);
                return {Rat(s, scale), Rat(s + 1, scale)};
            }
            case Kind::Cbrt: {
                Int scale = pow2(bits);
                Int s = icbrt(n_ * scale * scale * scale);
                return {Rat(s, scale), Rat(s + 1, scale)};
            }
            case Kind::QuadSurdK:
            case Kind::PeriodicCf: {
                QuadSurd s = kind_ == Kind::QuadSurdK ? surd_ : cf_value();
                Enclosure e;
                s.enclose(bits, e.lo, e.hi);
                return e;
            }
            default: {
                Rat v = rational_value();
                return {v, v};
            }
        }
    }

    // Exact value of the periodic continued fraction as a quadratic surd.
    QuadSurd cf_value() const {
        // Purely periodic tail y = [p1; p2, ..., pm, y]: y = (Ay + B)/(Cy + D)
        // gives Cy^2 + (D - A)y - B = 0, y > 1 the positive root.
        Int A = 1, B = 0, C = 0, D = 1;
        for (const Int& p : per_) {
            Int nA = A * p + B, nC = C * p + D;
            B = A;
            D = C;
            A = nA;
            C = nC;
        }
        Int disc = (A - D) * (A - D) + 4 * B * C;
        QuadSurd y = QuadSurd::make(A - D, 1, disc, 2 * C);
        // Apply the preperiod as a Moebius transform.
        Int P0 = 1, P1 = 0, Q0 = 0, Q1 = 1;
        for (const Int& a : pre_) {
            Int nP0 = P0 * a + P1, nQ0 = Q0 * a + Q1;
            P1 = P0;
            Q1 = Q0;
            P0 = nP0;
            Q0 = nQ0;
        }
        return (QuadSurd(Rat(P0)) * y + QuadSurd(Rat(P1))) /
               (QuadSurd(Rat(Q0)) * y + QuadSurd(Rat(Q1)));
    }

    Kind kind_;
    Rat rat_;
    Int n_ = 0;
    QuadSurd surd_;
    std::string digits_;
    long exp10_ = 0;
    std::vector<Int> pre_, per_;
};

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

inline bool parse_int_str(const std::string& s, Int& out) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    if (!all_digits(t)) return false;
    out = Int(t);
    if (neg) out = -out;
    return true;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

}  // namespace detail

// Grammar: sqrt(<uint>) | cbrt(<uint>) | <int>/<uint> | dec:<digits>[e<int>]
//          | cf:[a0;a1,...|p1,...]
// Total on the grammar; everything else is a SyntaxError. Values violating a
// domain rule (zero denominator, negative radicand) raise DomainError.
inline RealExpr parse_real(const std::string& text) {
    using detail::all_digits;
    using detail::parse_int_str;

    auto prefix = [&](const char* p) { return text.rfind(p, 0) == 0; };
    if (text.empty()) fail(Errc::Syntax, "empty real expression");

    if ((prefix("sqrt(") || prefix("cbrt(")) && text.size() >= 7 && text.back() == ')') {
        std::string inner = text.substr(5, text.size() - 6);
        Int n;
        if (!parse_int_str(inner, n)) fail(Errc::Syntax, "malformed radicand: '" + text + "'");
        if (n < 0) fail(Errc::Domain, "negative radicand: '" + text + "'");
        return text[0] == 's' ? RealExpr::sqrt_of(n) : RealExpr::cbrt_of(n);
    }

    if (prefix("dec:")) {
        std::string body = text.substr(4);
        long exp10 = 0;
        auto epos = body.find('e');
        if (epos != std::string::npos) {
            Int e;
            if (!parse_int_str(body.substr(epos + 1), e))
                fail(Errc::Syntax, "malformed exponent: '" + text + "'");
            if (e > 1000000 || e < -1000000) fail(Errc::Domain, "exponent out of range");
            exp10 = e.convert_to<long>();
            body = body.substr(0, epos);
        }
        if (!all_digits(body)) fail(Errc::Syntax, "malformed digits: '" + text + "'");
        return RealExpr::decimal(body, exp10);
    }

    if (prefix("cf:[") && text.back() == ']') {
        std::string body = text.substr(4, text.size() - 5);
        auto semi = body.find(';');
        auto bar = body.find('|');
        if (semi == std::string::npos || bar == std::string::npos || bar < semi)
            fail(Errc::Syntax, "malformed continued fraction: '" + text + "'");
        std::vector<Int> pre, per;
        Int a0;
        if (!parse_int_str(body.substr(0, semi), a0))
            fail(Errc::Syntax, "malformed a0: '" + text + "'");
        pre.push_back(a0);
        std::string mid = body.substr(semi + 1, bar - semi - 1);
        if (!mid.empty()) {
            for (const std::string& part : detail::split(mid, ',')) {
                Int a;
                if (!parse_int_str(part, a))
                    fail(Errc::Syntax, "malformed partial quotient: '" + text + "'");
                pre.push_back(a);
            }
        }
        for (const std::string& part : detail::split(body.substr(bar + 1), ',')) {
            Int p;
            if (!parse_int_str(part, p))
                fail(Errc::Syntax, "malformed period entry: '" + text + "'");
            per.push_back(p);
        }
        return RealExpr::periodic_cf(std::move(pre), std::move(per));
    }

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int p, q;
        if (!parse_int_str(text.substr(0, slash), p) ||
            !all_digits(text.substr(slash + 1)))
            fail(Errc::Syntax, "not a rational: '" + text + "'");
        q = Int(text.substr(slash + 1));
        if (q == 0) fail(Errc::Domain, "zero denominator: '" + text + "'");
        return RealExpr::rational(Rat(p, q));
    }

    fail(Errc::Syntax, "unrecognized real expression: '" + text + "'");
}

// Nearest integer to the enclosed value. Certain only when the width is below
// 1/2 and the interval stays strictly inside (n - 1/2, n + 1/2).
inline std::pair<Int, bool> nearest_int(const Enclosure& v) {
    Int n = rat_round(v.mid());
    bool certain = v.width() < Rat(1, 2) && v.lo > Rat(2 * n - 1, 2) && v.hi < Rat(2 * n + 1, 2);
    return {n, certain};
}

}  // namespace dioph

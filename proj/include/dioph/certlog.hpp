#pragma once

#include <utility>

#include "dioph/errors.hpp"
#include "dioph/rational.hpp"

namespace dioph {

// Rational interval [lo, hi] certified to contain a real value.
struct Enclosure {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

namespace detail {

// atanh(z) = z + z^3/3 + z^5/5 + ... for |z| < 1, with an outward-rounded tail
// bound 2|z|^(2k+3) / ((2k+3)(1-z^2)). All arithmetic exact.
inline Enclosure atanh_series(const Rat& z, const Rat& eps) {
    Rat z2 = z * z;
    if (z2 >= 1) fail(Errc::Domain, "atanh argument out of range");
    Rat term = z, sum = z;
    Rat tail_factor = Rat(1) / (Rat(1) - z2);
    for (int k = 1; k < 4000; ++k) {
        term *= z2;
        sum += term / (2 * k + 1);
        Rat tail = rat_abs(term) * z2 * tail_factor / (2 * k + 3);
        if (tail <= eps / 2) {
            return {sum - tail, sum + tail};
        }
    }
    fail(Errc::PrecisionBudget, "atanh series did not converge");
}

// ln 2 = 2*atanh(1/3), cached to width <= 2^-160.
inline const Enclosure& ln2_enclosure() {
    static const Enclosure e = [] {
        Enclosure a = atanh_series(Rat(1, 3), Rat(1, pow2(162)));
        return Enclosure{2 * a.lo, 2 * a.hi};
    }();
    return e;
}

}  // namespace detail

// Certified enclosure of ln(x) for a positive rational x, width <= eps.
// Argument reduction x = 2^e * s with s in [3/4, 3/2), then the atanh series;
// s is first rounded outward to denominator 2^160 so the series operands stay small.
inline Enclosure cert_ln(const Rat& x, const Rat& eps) {
    if (x <= 0) fail(Errc::Domain, "cert_ln of non-positive value");
    if (eps <= 0) fail(Errc::Domain, "cert_ln with non-positive eps");

    long e = 0;
    {
        Int p = num(x), q = den(x);
        e = static_cast<long>(boost::multiprecision::msb(p)) -
            static_cast<long>(boost::multiprecision::msb(q));
    }
    Rat s = x / (e >= 0 ? Rat(pow2(static_cast<unsigned>(e)))
                        : Rat(1, pow2(static_cast<unsigned>(-e))));
    while (s >= Rat(3, 2)) {
        s /= 2;
        ++e;
    }
    while (s < Rat(3, 4)) {
        s *= 2;
        --e;
    }

    // Outward fixed-point rounding of s: |ln s - ln s'| <= |s - s'| / min(s) <= 2^-158.
    const unsigned kBits = 160;
    Int scale = pow2(kBits);
    Int lo_num = rat_floor(s * Rat(scale));
    Rat s_lo(lo_num, scale), s_hi(lo_num + 1, scale);
    Rat round_err = Rat(2, pow2(kBits));  // covers the 1/min(s) <= 4/3 factor

    auto half_ln = [&](const Rat& v) {
        Rat z = (v - 1) / (v + 1);
        return detail::atanh_series(z, eps / 8);
    };
    Enclosure a = half_ln(s_lo), b = half_ln(s_hi);
    Rat ln_s_lo = 2 * a.lo - round_err, ln_s_hi = 2 * b.hi + round_err;

    const Enclosure& l2 = detail::ln2_enclosure();
    Rat e_lo, e_hi;
    if (e >= 0) {
        e_lo = Rat(e) * l2.lo;
        e_hi = Rat(e) * l2.hi;
    } else {
        e_lo = Rat(e) * l2.hi;
        e_hi = Rat(e) * l2.lo;
    }
    return {ln_s_lo + e_lo, ln_s_hi + e_hi};
}

// Certified enclosure of ln of a positive real known to lie in [v.lo, v.hi].
inline Enclosure cert_ln(const Enclosure& v, const Rat& eps) {
    if (v.lo <= 0) fail(Errc::Domain, "cert_ln of enclosure touching zero");
    Enclosure a = cert_ln(v.lo, eps / 2);
    Enclosure b = cert_ln(v.hi, eps / 2);
    return {a.lo, b.hi};
}

}  // namespace dioph

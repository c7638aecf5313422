#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dioph/errors.hpp"
#include "dioph/plfunction.hpp"
#include "dioph/quadsurd.hpp"
#include "dioph/rational.hpp"

namespace dioph {

namespace detail {

// Index of the first change point considered part of the asymptotic tail:
// the first 20% of change points are regarded as transient.
inline std::size_t tail_start_index(std::size_t n) { return n / 5; }

// Exact limit of a sequence that is eventually constant: true when the newest
// half of the list holds a single repeated value.
template <typename S>
std::optional<S> constant_tail_limit(const std::vector<S>& xs) {
    if (xs.empty()) return std::nullopt;
    std::size_t half = (xs.size() + 1) / 2;
    const S& cand = xs.back();
    for (std::size_t i = xs.size() - half; i < xs.size(); ++i)
        if (!(xs[i] == cand)) return std::nullopt;
    return cand;
}

// Detects two-sided geometric contraction of a rational sequence: the newest
// half's envelope lies strictly inside the older half's and is at most half as
// wide. Returns the simplest rational inside the envelope extrapolated by the
// observed contraction rate; sound for sequences converging geometrically.
inline std::optional<Rat> contraction_limit(const std::vector<Rat>& xs) {
    if (xs.size() < 8) return std::nullopt;
    std::size_t half = xs.size() / 2;
    auto env = [&](std::size_t from, std::size_t to) {
        Rat lo = xs[from], hi = xs[from];
        for (std::size_t i = from + 1; i < to; ++i) {
            if (xs[i] < lo) lo = xs[i];
            if (xs[i] > hi) hi = xs[i];
        }
        return std::pair<Rat, Rat>(lo, hi);
    };
    auto [lo1, hi1] = env(0, xs.size() - half);
    auto [lo2, hi2] = env(xs.size() - half, xs.size());
    Rat w1 = hi1 - lo1, w2 = hi2 - lo2;
    if (!(lo1 < lo2 && hi2 < hi1)) return std::nullopt;  // not nested inside
    if (w1 == 0 || 2 * w2 > w1) return std::nullopt;     // not contracting fast
    Rat rate = w2 / w1;
    Rat margin = w2 * rate / (Rat(1) - rate);
    return simplest_rational_in(lo2 - margin, hi2 + margin);
}

template <typename S>
std::optional<S> sequence_limit(const std::vector<S>& xs) {
    if (auto c = constant_tail_limit(xs)) return c;
    if constexpr (std::is_same_v<S, Rat>) {
        if (auto c = contraction_limit(xs)) return c;
    }
    return std::nullopt;
}

// Translation-periodic vertex tail: the last 3p+1 vertices repeat with a fixed
// offset (dq, dv) for some period p. All relevant ratios then tend to dv/dq.
template <typename S>
std::optional<S> translation_periodic_limit(const std::vector<PLVertex<S>>& vs) {
    std::size_t m = vs.size();
    for (std::size_t p = 1; 3 * p + 1 <= m && p <= 16; ++p) {
        S dq = vs[m - 1].q - vs[m - 1 - p].q;
        S dv = vs[m - 1].v - vs[m - 1 - p].v;
        if (!(dq > S(0)) || !(dv > S(0))) continue;
        bool ok = true;
        for (std::size_t i = m - 1 - 3 * p; i + p < m && ok; ++i) {
            if (!(vs[i + p].q - vs[i].q == dq) || !(vs[i + p].v - vs[i].v == dv)) ok = false;
        }
        if (ok) return S(dv / dq);
    }
    return std::nullopt;
}

}  // namespace detail

// Finite-horizon value of psi_sup = limsup P(q)/q, evaluated over the tail
// change points; a detected translation-periodic or convergent tail upgrades
// the statistic to the exact limit.
template <typename S>
S psi_sup(const PLFunction<S>& f) {
    auto cps = f.change_points();
    if (cps.size() < 3) fail(Errc::InsufficientData, "need at least 3 change points");
    if (auto t = detail::translation_periodic_limit(f.vertices())) return *t;
    std::size_t start = detail::tail_start_index(cps.size());
    std::vector<S> ratios;
    for (std::size_t i = start; i < cps.size(); ++i) ratios.push_back(S(cps[i].v / cps[i].q));
    if (auto lim = detail::sequence_limit(ratios)) return *lim;
    S best = ratios[0];
    for (const S& r : ratios)
        if (r > best) best = r;
    return best;
}

// Finite-horizon value of psi_inf = liminf P(q)/q, evaluated at the tail local
// minima of P(q)/q (vertices whose incoming slope is 0, plus the horizon end).
template <typename S>
S psi_inf(const PLFunction<S>& f) {
    auto cps = f.change_points();
    if (cps.size() < 3) fail(Errc::InsufficientData, "need at least 3 change points");
    if (auto t = detail::translation_periodic_limit(f.vertices())) return *t;
    const auto& vs = f.vertices();
    std::size_t start = detail::tail_start_index(cps.size());
    const S& q_cut = cps[start].q;
    std::vector<S> ratios;
    for (std::size_t i = 1; i < vs.size(); ++i) {
        bool flat_end = f.piece_slope(i - 1) == 0;
        if (flat_end && vs[i].q >= q_cut && vs[i].q > S(0)) ratios.push_back(S(vs[i].v / vs[i].q));
    }
    if (ratios.empty()) ratios.push_back(S(vs.back().v / vs.back().q));
    if (auto lim = detail::sequence_limit(ratios)) return *lim;
    S best = ratios[0];
    for (const S& r : ratios)
        if (r < best) best = r;
    return best;
}

// Everything the definition of kappa_alpha produces on the horizon.
template <typename S>
struct KappaReport {
    S alpha;
    std::vector<S> peak_q;       // surviving change-point abscissas q_{i,alpha}
    std::vector<S> peak_v;       // P(q_{i,alpha})
    std::vector<S> r_abscissa;   // r_{i,alpha}, one per consecutive pair
    std::vector<S> ratios;       // P(q_{i,alpha}) / r_{i,alpha}
    std::size_t tail_begin = 0;  // first ratio index counted in the tail
    S kappa_alpha;               // min ratio over the tail
    S psi_sup_value;
    S psi_inf_value;
};

template <typename S>
KappaReport<S> kappa_alpha(const PLFunction<S>& f, const S& alpha) {
    auto cps = f.change_points();
    if (cps.size() < 3) fail(Errc::InsufficientData, "need at least 3 change points");
    KappaReport<S> rep;
    rep.alpha = alpha;
    rep.psi_sup_value = psi_sup(f);
    rep.psi_inf_value = psi_inf(f);
    if (!(alpha < rep.psi_sup_value))
        fail(Errc::AlphaTooLarge, "alpha is not below the finite-horizon psi_sup");

    for (const auto& cp : cps) {
        if (cp.v >= alpha * cp.q) {
            rep.peak_q.push_back(cp.q);
            rep.peak_v.push_back(cp.v);
        }
    }
    if (rep.peak_q.empty()) fail(Errc::AlphaTooLarge, "no change point has ratio >= alpha");
    if (rep.peak_q.size() < 3)
        fail(Errc::InsufficientData, "fewer than 3 surviving change points");

    for (std::size_t i = 0; i + 1 < rep.peak_q.size(); ++i) {
        // Horizontal line through peak i meets the slope-1 line through peak i+1.
        S r = rep.peak_q[i + 1] - rep.peak_v[i + 1] + rep.peak_v[i];
        rep.r_abscissa.push_back(r);
        rep.ratios.push_back(S(rep.peak_v[i] / r));
    }

    // Tail cut by abscissa, independent of alpha, so that kappa_alpha values at
    // different alpha are computed over a common asymptotic window.
    const S& q_cut = cps[detail::tail_start_index(cps.size())].q;
    std::size_t tb = 0;
    while (tb < rep.ratios.size() && rep.peak_q[tb] < q_cut) ++tb;
    if (tb >= rep.ratios.size())
        fail(Errc::InsufficientData, "no surviving pairs in the tail window");
    rep.tail_begin = tb;
    S best = rep.ratios[tb];
    for (std::size_t i = tb; i < rep.ratios.size(); ++i)
        if (rep.ratios[i] < best) best = rep.ratios[i];
    rep.kappa_alpha = best;
    return rep;
}

template <typename S>
struct KappaGridEntry {
    S alpha;
    std::optional<S> value;
    std::size_t survivors = 0;
};

template <typename S>
struct KappaLimit {
    S value;
    bool converged = false;
    std::vector<KappaGridEntry<S>> grid;
};

// kappa(P) = lim_{alpha -> psi_sup} kappa_alpha(P), estimated on the geometric
// grid alpha_m = psi_sup * (1 - 2^-m), m = 1..depth. The deepest computable
// grid entry is returned; a detected convergent tail upgrades it to the exact
// limit.
template <typename S>
KappaLimit<S> kappa(const PLFunction<S>& f, int depth = 8) {
    S bar = psi_sup(f);
    KappaLimit<S> out;
    std::optional<KappaReport<S>> deepest;
    for (int m = 1; m <= depth; ++m) {
        S alpha = S(bar * S(Rat(pow2(m) - 1, pow2(m))));
        KappaGridEntry<S> entry;
        entry.alpha = alpha;
        try {
            KappaReport<S> rep = kappa_alpha(f, alpha);
            entry.value = rep.kappa_alpha;
            entry.survivors = rep.peak_q.size();
            deepest = std::move(rep);
        } catch (const Error&) {
            entry.survivors = 0;
        }
        out.grid.push_back(entry);
    }
    if (!deepest) fail(Errc::InsufficientData, "no computable grid entry");

    std::vector<S> tail(deepest->ratios.begin() + static_cast<long>(deepest->tail_begin),
                        deepest->ratios.end());
    if (auto lim = detail::sequence_limit(tail)) {
        out.value = *lim;
        out.converged = true;
        return out;
    }
    out.value = deepest->kappa_alpha;
    std::vector<S> computed;
    for (const auto& e : out.grid)
        if (e.value) computed.push_back(*e.value);
    out.converged = computed.size() >= 2 && computed[computed.size() - 1] == computed[computed.size() - 2];
    return out;
}

// Dual functions have slopes 0 and -1 and non-positive values; kappa* is
// defined by conjugation. The input is given by its vertex list.
template <typename S>
PLFunction<S> negate_dual(const std::vector<PLVertex<S>>& dual_vertices,
                          std::optional<int> final_slope = std::nullopt) {
    std::vector<PLVertex<S>> neg;
    neg.reserve(dual_vertices.size());
    for (std::size_t i = 1; i < dual_vertices.size(); ++i) {
        S dq = dual_vertices[i].q - dual_vertices[i - 1].q;
        S dv = dual_vertices[i].v - dual_vertices[i - 1].v;
        if (!(dv == S(0) || dv == S(S(0) - dq)))
            fail(Errc::Domain, "dual function must have slopes 0 and -1");
    }
    for (const auto& v : dual_vertices) neg.push_back({v.q, S(S(0) - v.v)});
    return PLFunction<S>::from_vertices(std::move(neg), final_slope);
}

template <typename S>
S kappa_star_alpha(const std::vector<PLVertex<S>>& dual_vertices, const S& alpha) {
    PLFunction<S> neg = negate_dual(dual_vertices);
    return S(S(0) - kappa_alpha(neg, S(S(0) - alpha)).kappa_alpha);
}

template <typename S>
S kappa_star(const std::vector<PLVertex<S>>& dual_vertices, int depth = 8) {
    PLFunction<S> neg = negate_dual(dual_vertices);
    return S(S(0) - kappa(neg, depth).value);
}

}  // namespace dioph

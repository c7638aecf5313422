#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dioph/errors.hpp"
#include "dioph/quadsurd.hpp"
#include "dioph/rational.hpp"

namespace dioph {

template <typename S>
struct PLVertex {
    S q, v;
};

// Continuous piecewise-linear function with slopes exactly 0 or 1 and exact
// scalar breakpoints. Domain is [q0, qend] when final_slope is absent, else
// [q0, +inf) with the given slope on the unbounded last piece. Canonical form:
// abscissas strictly increasing, no two adjacent pieces with equal slope.
template <typename S>
class PLFunction {
  public:
    PLFunction() = default;

    static PLFunction from_vertices(std::vector<PLVertex<S>> vs,
                                    std::optional<int> final_slope = std::nullopt) {
        if (vs.size() < 2 && !final_slope) fail(Errc::Domain, "need at least two vertices");
        if (vs.empty()) fail(Errc::Domain, "need at least one vertex");
        if (final_slope && *final_slope != 0 && *final_slope != 1)
            fail(Errc::Domain, "final slope must be 0 or 1");
        // Drop exact duplicates, validate monotone abscissas and unit slopes.
        std::vector<PLVertex<S>> clean;
        clean.push_back(vs[0]);
        for (std::size_t i = 1; i < vs.size(); ++i) {
            const auto& prev = clean.back();
            if (vs[i].q == prev.q) {
                if (vs[i].v == prev.v) continue;
                fail(Errc::Domain, "two values at one abscissa");
            }
            if (vs[i].q < prev.q) fail(Errc::Domain, "abscissas not increasing");
            S dq = vs[i].q - prev.q, dv = vs[i].v - prev.v;
            if (!(dv == S(0) || dv == dq))
                fail(Errc::Domain, "piece slope is neither 0 nor 1");
            clean.push_back(vs[i]);
        }
        // Merge adjacent pieces of equal slope.
        auto slope_of = [](const PLVertex<S>& a, const PLVertex<S>& b) {
            return (b.v - a.v) == (b.q - a.q) ? 1 : 0;
        };
        std::vector<PLVertex<S>> merged;
        for (const auto& v : clean) {
            while (merged.size() >= 2 &&
                   slope_of(merged[merged.size() - 2], merged.back()) ==
                       slope_of(merged.back(), v))
                merged.pop_back();
            merged.push_back(v);
        }
        // A last piece whose slope matches final_slope is redundant.
        while (final_slope && merged.size() >= 2 &&
               slope_of(merged[merged.size() - 2], merged.back()) == *final_slope)
            merged.pop_back();
        PLFunction f;
        f.verts_ = std::move(merged);
        f.final_slope_ = final_slope;
        return f;
    }

    const std::vector<PLVertex<S>>& vertices() const { return verts_; }
    const S& q0() const { return verts_.front().q; }
    const S& qend() const { return verts_.back().q; }
    std::optional<int> final_slope() const { return final_slope_; }

    // Slope of piece i, between vertices i and i+1.
    int piece_slope(std::size_t i) const {
        return (verts_[i + 1].v - verts_[i].v) == (verts_[i + 1].q - verts_[i].q) ? 1 : 0;
    }
    std::size_t piece_count() const { return verts_.size() - 1; }

    S eval(const S& q) const {
        if (q < q0()) fail(Errc::OutOfDomain, "abscissa below q0");
        if (q > qend()) {
            if (!final_slope_) fail(Errc::OutOfDomain, "abscissa beyond horizon");
            return *final_slope_ == 1 ? S(verts_.back().v + (q - qend())) : verts_.back().v;
        }
        // Binary search for the piece containing q.
        std::size_t lo = 0, hi = verts_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (verts_[mid].q <= q)
                lo = mid;
            else
                hi = mid;
        }
        if (q == verts_[hi].q) return verts_[hi].v;
        return piece_slope(lo) == 1 ? S(verts_[lo].v + (q - verts_[lo].q)) : verts_[lo].v;
    }

    // Abscissas where the slope changes from 1 to 0, in increasing order.
    std::vector<PLVertex<S>> change_points() const {
        std::vector<PLVertex<S>> out;
        for (std::size_t i = 1; i + 1 < verts_.size(); ++i)
            if (piece_slope(i - 1) == 1 && piece_slope(i) == 0) out.push_back(verts_[i]);
        if (final_slope_ && verts_.size() >= 2 && *final_slope_ == 0 &&
            piece_slope(verts_.size() - 2) == 1)
            out.push_back(verts_.back());
        return out;
    }

  private:
    std::vector<PLVertex<S>> verts_;
    std::optional<int> final_slope_;
};

// Deterministic pseudo-random displacement of the 1->0 vertices, moving each
// along its incoming slope-1 line by at most `bound` in value (clamped so the
// vertex stays strictly between its neighbours). Pointwise |f' - f| <= bound.
inline PLFunction<Rat> perturb(const PLFunction<Rat>& f, const Rat& bound, std::uint64_t seed) {
    if (bound < 0) fail(Errc::Domain, "perturb bound must be >= 0");
    if (bound == 0) return f;
    std::mt19937_64 rng(seed);
    auto vs = f.vertices();
    std::vector<PLVertex<Rat>> out;
    out.reserve(vs.size());
    out.push_back(vs.front());
    for (std::size_t i = 1; i < vs.size(); ++i) {
        PLVertex<Rat> v = vs[i];
        bool is_peak = i + 1 < vs.size() && f.piece_slope(i - 1) == 1 && f.piece_slope(i) == 0;
        if (is_peak) {
            // Signed fraction in [-1, 1] at resolution 2^-16.
            std::int64_t raw = static_cast<std::int64_t>(rng() % 131073) - 65536;
            Rat frac(raw, 65536);
            Rat room_left = (v.q - out.back().q) / 2;
            Rat room_right = (vs[i + 1].q - v.q) / 2;
            Rat scale = bound;
            if (room_left < scale) scale = room_left;
            if (room_right < scale) scale = room_right;
            Rat delta = frac * scale;
            v.q += delta;
            v.v += delta;
        }
        out.push_back(v);
    }
    return PLFunction<Rat>::from_vertices(std::move(out), f.final_slope());
}

}  // namespace dioph

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dioph/errors.hpp"
#include "dioph/plfunction.hpp"
#include "dioph/quadsurd.hpp"

namespace dioph {

// The triple (P1, P2, P3) of sorted component functions on a common domain.
template <typename S>
struct ThreeSystem {
    std::array<PLFunction<S>, 3> comp;

    const S& q0() const { return comp[0].q0(); }
    const S& horizon() const { return comp[0].qend(); }
};

struct Violation {
    int axiom;  // 0 = domain mismatch, 1..3 = the definition's conditions
    std::string where;
    std::string detail;
};

namespace detail {

// Walks the merged breakpoints of all three components, reporting values and
// slopes of each component interval by interval.
template <typename S, typename Fn>
void walk_system(const ThreeSystem<S>& sys, Fn&& visit) {
    std::array<std::size_t, 3> idx = {0, 0, 0};
    S q = sys.q0();
    bool first = true;
    S prev = q;
    for (;;) {
        // Advance piece indices so vertex[idx] <= q < vertex[idx+1].
        for (int c = 0; c < 3; ++c) {
            const auto& vs = sys.comp[c].vertices();
            while (idx[c] + 1 < vs.size() && vs[idx[c] + 1].q <= q) ++idx[c];
        }
        std::array<S, 3> val = {S(0), S(0), S(0)};
        std::array<int, 3> slope_after = {-1, -1, -1};
        for (int c = 0; c < 3; ++c) {
            const auto& f = sys.comp[c];
            const auto& vs = f.vertices();
            std::size_t i = idx[c];
            int sl = i + 1 < vs.size() ? f.piece_slope(i) : -1;
            val[c] = sl == 1 ? S(vs[i].v + (q - vs[i].q)) : vs[i].v;
            slope_after[c] = sl;
        }
        visit(q, val, slope_after, first ? std::optional<S>() : std::optional<S>(prev));
        // Next merged breakpoint.
        std::optional<S> next;
        for (int c = 0; c < 3; ++c) {
            const auto& vs = sys.comp[c].vertices();
            for (std::size_t i = idx[c]; i < vs.size(); ++i) {
                if (vs[i].q > q) {
                    if (!next || vs[i].q < *next) next = vs[i].q;
                    break;
                }
            }
        }
        if (!next) break;
        prev = q;
        first = false;
        q = *next;
    }
}

}  // namespace detail

// Exact validation of the three axioms: ordering and sum (1), a single rising
// component on every open interval (2), and junction equality when the rising
// index increases across a breakpoint (3). Never throws; problems are
// reported as violations.
template <typename S>
std::pair<bool, std::vector<Violation>> validate(const ThreeSystem<S>& sys) {
    std::vector<Violation> out;
    auto note = [&](int axiom, const S& q, const std::string& detail) {
        if (out.size() < 32)
            out.push_back({axiom, scalar_traits<S>::str(q), detail});
    };

    for (int c = 1; c < 3; ++c) {
        if (!(sys.comp[c].q0() == sys.comp[0].q0()) ||
            !(sys.comp[c].qend() == sys.comp[0].qend()))
            out.push_back({0, scalar_traits<S>::str(sys.comp[c].q0()),
                           "components do not share the domain"});
    }
    if (!out.empty()) return {false, out};

    int prev_riser = -1;

    detail::walk_system(sys, [&](const S& q, const std::array<S, 3>& val,
                                 const std::array<int, 3>& slope_after,
                                 const std::optional<S>& /*prev_q*/) {
        // Axiom 1 at the breakpoint.
        if (val[0] < S(0)) note(1, q, "P1 < 0");
        if (val[1] < val[0]) note(1, q, "P2 < P1");
        if (val[2] < val[1]) note(1, q, "P3 < P2");
        if (!(val[0] + val[1] + val[2] == q)) note(1, q, "P1+P2+P3 != q");

        // Axiom 2 on the interval starting here (absent at the horizon).
        int riser = -1;
        if (slope_after[0] >= 0 || slope_after[1] >= 0 || slope_after[2] >= 0) {
            int ones = 0;
            for (int c = 0; c < 3; ++c) {
                if (slope_after[c] == 1) {
                    ones++;
                    riser = c;
                }
            }
            if (ones != 1) note(2, q, ones == 0 ? "no rising component" : "several rising components");
        }

        // Axiom 3: rising index moves upward across this breakpoint.
        if (prev_riser >= 0 && riser >= 0 && prev_riser < riser) {
            for (int c = prev_riser; c < riser; ++c) {
                if (!(val[c] == val[c + 1])) {
                    note(3, q, "P" + std::to_string(prev_riser + 1) + ".." +
                                   "P" + std::to_string(riser + 1) + " not equal at junction");
                    break;
                }
            }
        }
        if (riser >= 0) prev_riser = riser;
    });

    return {out.empty(), out};
}

}  // namespace dioph

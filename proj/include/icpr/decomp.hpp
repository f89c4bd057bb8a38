#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icpr/spanning.hpp"
#include "icpr/squares.hpp"

// Constructive factorization A = B B^T for 2x2 doubly nonnegative integer
// matrices, with at most 10 nonnegative integer columns. The pipeline reduces
// A to c >= a >= b, races the applicable construction routes, and lifts the
// winning certificate back through the reduction trace.

namespace icpr::decomp {

class NotDnnError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class TraceMismatchError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class WidthOverflowError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class RepairGapError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Entry bound keeping every product of two entries inside 64-bit range.
inline constexpr std::int64_t kEntryLimit = std::int64_t{1} << 31;

// Symmetric matrix ((a, b), (b, c)) with nonnegative integer entries.
struct SymMat2 {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    bool operator==(const SymMat2&) const = default;
};

inline std::string to_string(const SymMat2& m) {
    return "((" + std::to_string(m.a) + "," + std::to_string(m.b) + "),(" +
           std::to_string(m.b) + "," + std::to_string(m.c) + "))";
}

inline void validate_entries(const SymMat2& m) {
    for (std::int64_t e : {m.a, m.b, m.c}) {
        if (e < 0)
            throw std::domain_error("SymMat2: negative entry in " + to_string(m));
        if (e >= kEntryLimit)
            throw std::domain_error("SymMat2: entry exceeds 2^31-1 in " +
                                    to_string(m));
    }
}

// Doubly nonnegative: entrywise nonnegative and b^2 <= ac.
inline bool check_dnn(const SymMat2& m) {
    validate_entries(m);
    return m.b * m.b <= m.a * m.c;
}

inline std::int64_t det(const SymMat2& m) { return m.a * m.c - m.b * m.b; }

struct ReductionStep {
    enum Kind { Swap, Shear } kind;

    bool operator==(const ReductionStep&) const = default;
};

struct ReductionTrace {
    SymMat2 original;
    SymMat2 reduced;
    std::vector<ReductionStep> steps;
};

// Forward replay of one step. Swap exchanges the diagonal; Shear subtracts
// the first row/column pair and requires b > a (so b stays nonnegative).
inline SymMat2 apply_step(const SymMat2& m, ReductionStep s) {
    if (s.kind == ReductionStep::Swap) return SymMat2{m.c, m.b, m.a};
    return SymMat2{m.a, m.b - m.a, m.a + m.c - 2 * m.b};
}

// Drives A to normal form c >= a >= b >= 0. Each shear strictly decreases b
// and preserves the determinant; every intermediate matrix stays DNN.
inline std::pair<SymMat2, ReductionTrace> reduce(const SymMat2& A) {
    if (!check_dnn(A)) throw NotDnnError("reduce: " + to_string(A) + " is not DNN");
    ReductionTrace trace;
    trace.original = A;
    SymMat2 m = A;
    if (m.a > m.c) {
        m = apply_step(m, {ReductionStep::Swap});
        trace.steps.push_back({ReductionStep::Swap});
    }
    while (m.b > m.a) {
        m = apply_step(m, {ReductionStep::Shear});
        trace.steps.push_back({ReductionStep::Shear});
        if (m.a > m.c) {
            m = apply_step(m, {ReductionStep::Swap});
            trace.steps.push_back({ReductionStep::Swap});
        }
    }
    trace.reduced = m;
    return {m, trace};
}

// One column (x, y) of the factor B.
struct Col {
    std::int64_t x = 0;
    std::int64_t y = 0;

    bool operator==(const Col&) const = default;
    // lexicographic, used descending for the canonical column order
    bool operator<(const Col& o) const {
        return x != o.x ? x < o.x : y < o.y;
    }
};

enum class Route { Zero, BZero, AEqB, BSqLeC, Witness, Mod8 };

inline std::string_view route_name(Route r) {
    switch (r) {
        case Route::Zero: return "Zero";
        case Route::BZero: return "BZero";
        case Route::AEqB: return "AEqB";
        case Route::BSqLeC: return "BSqLeC";
        case Route::Witness: return "Witness";
        case Route::Mod8: return "Mod8";
    }
    return "?";
}

struct Decomposition {
    std::vector<Col> columns;  // lexicographically non-increasing, no zero col
    Route route = Route::Zero;
    std::optional<squares::RepairPair> repair;

    int width() const { return static_cast<int>(columns.size()); }
};

// Exact check that the columns reproduce A. Sums are accumulated in 128 bits
// so arbitrary externally supplied certificates cannot overflow.
inline bool verify(const SymMat2& A, const Decomposition& D) {
    unsigned __int128 sa = 0, sb = 0, sc = 0;
    for (const Col& col : D.columns) {
        if (col.x < 0 || col.y < 0) return false;
        sa += static_cast<unsigned __int128>(col.x) * col.x;
        sb += static_cast<unsigned __int128>(col.x) * col.y;
        sc += static_cast<unsigned __int128>(col.y) * col.y;
    }
    if (A.a < 0 || A.b < 0 || A.c < 0) return false;
    return sa == static_cast<unsigned __int128>(A.a) &&
           sb == static_cast<unsigned __int128>(A.b) &&
           sc == static_cast<unsigned __int128>(A.c);
}

namespace detail {

inline void canonicalize(std::vector<Col>& cols) {
    cols.erase(std::remove(cols.begin(), cols.end(), Col{0, 0}), cols.end());
    std::sort(cols.begin(), cols.end(), [](const Col& l, const Col& r) {
        return r < l;
    });
}

inline void push_axis_cols(std::vector<Col>& cols, std::int64_t n, bool x_side) {
    for (std::int64_t s : squares::squares_rep(n, 4).terms)
        cols.push_back(x_side ? Col{s, 0} : Col{0, s});
}

inline void push_diag_cols(std::vector<Col>& cols, std::int64_t n) {
    for (std::int64_t s : squares::squares_rep(n, 4).terms)
        cols.push_back(Col{s, s});
}

}  // namespace detail

// Maps a certificate of trace.reduced back to one of trace.original with the
// same width: shears invert to (x, y) -> (x, x+y), swaps exchange coordinates.
inline Decomposition lift(const Decomposition& B, const ReductionTrace& trace) {
    SymMat2 replay = trace.original;
    for (const ReductionStep& s : trace.steps) replay = apply_step(replay, s);
    if (!(replay == trace.reduced))
        throw TraceMismatchError("lift: trace does not replay to its reduced matrix");
    if (!verify(trace.reduced, B))
        throw TraceMismatchError(
            "lift: decomposition does not verify against reduced matrix " +
            to_string(trace.reduced));
    Decomposition out = B;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        for (Col& col : out.columns) {
            if (it->kind == ReductionStep::Swap)
                std::swap(col.x, col.y);
            else
                col.y += col.x;
        }
    }
    detail::canonicalize(out.columns);
    return out;
}

namespace detail {

// Spanning vectors for a = 1..64, built once. Index 33 stays empty; the
// witness route falls back to the representation search there.
inline const std::optional<spanning::UVec>& spanning_vector_upto64(
    std::int64_t a) {
    static const auto cache = [] {
        std::array<std::optional<spanning::UVec>, 65> table;
        for (std::int64_t n = 1; n <= 64; ++n)
            table[n] = spanning::find_spanning_vector(n);
        return table;
    }();
    return cache[a];
}

struct WitnessData {
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> v;
};

inline std::optional<WitnessData> small_a_witness(std::int64_t a,
                                                  std::int64_t b) {
    const auto& cached = spanning_vector_upto64(a);
    if (cached) {
        auto v = spanning::span_witness(*cached, b);
        if (v) {
            auto e = cached->entries();
            return WitnessData{{e.begin(), e.end()}, std::move(*v)};
        }
        return std::nullopt;
    }
    auto w = spanning::find_witness_pair(a, b);
    if (!w) return std::nullopt;
    auto e = w->u.entries();
    return WitnessData{{e.begin(), e.end()}, std::move(w->v)};
}

inline int msc(std::int64_t n) { return squares::min_squares_count(n); }

// One evaluated construction for the reduced matrix: enough data to rebuild
// the columns of the winner without having materialized every candidate.
struct RouteCand {
    Route route;
    int width;
    std::optional<squares::RepairPair> repair;  // Mod8 only
    std::optional<WitnessData> witness;         // Witness only
};

inline std::vector<Col> build_columns(const SymMat2& r, const RouteCand& cand) {
    std::vector<Col> cols;
    switch (cand.route) {
        case Route::Zero:
            break;
        case Route::BZero:
            push_axis_cols(cols, r.a, true);
            push_axis_cols(cols, r.c, false);
            break;
        case Route::AEqB:
            push_diag_cols(cols, r.b);
            push_axis_cols(cols, r.c - r.b, false);
            break;
        case Route::BSqLeC:
            cols.push_back(Col{1, r.b});
            push_axis_cols(cols, r.a - 1, true);
            push_axis_cols(cols, r.c - r.b * r.b, false);
            break;
        case Route::Witness: {
            const WitnessData& w = *cand.witness;
            std::int64_t vv = 0;
            for (std::size_t i = 0; i < w.u.size(); ++i) {
                cols.push_back(Col{w.u[i], w.v[i]});
                vv += w.v[i] * w.v[i];
            }
            push_axis_cols(cols, r.c - vv, false);
            break;
        }
        case Route::Mod8: {
            std::int64_t m = r.b, aside = r.a - r.b, cside = r.c - r.b;
            if (cand.repair) {
                std::int64_t x = cand.repair->x, y = cand.repair->y;
                cols.push_back(Col{x, y});
                m = r.b - x * y;
                aside = r.a - x * x - m;
                cside = r.c - y * y - m;
            }
            push_diag_cols(cols, m);
            push_axis_cols(cols, aside, true);
            push_axis_cols(cols, cside, false);
            break;
        }
    }
    canonicalize(cols);
    return cols;
}

// Width of the Mod8 split for an optional repair pair, or nullopt when the
// subtraction would drive some part negative.
inline std::optional<int> mod8_width(const SymMat2& r,
                                     std::optional<squares::RepairPair> p) {
    std::int64_t m = r.b, aside = r.a - r.b, cside = r.c - r.b;
    int base = 0;
    if (p) {
        m = r.b - std::int64_t{p->x} * p->y;
        aside = r.a - std::int64_t{p->x} * p->x - m;
        cside = r.c - std::int64_t{p->y} * p->y - m;
        base = 1;
    }
    if (m < 0 || aside < 0 || cside < 0) return std::nullopt;
    return base + msc(m) + msc(aside) + msc(cside);
}

// Route competition on a reduced matrix (c >= a >= b >= 0): evaluate every
// applicable construction, keep the smallest width, ties broken by route
// order. Within Mod8 the canonical repair pair is tried first, then the
// no-repair split, then the remaining pool, so ties land on the pair the
// mod-8 argument itself would use.
inline Decomposition decompose_reduced(const SymMat2& r) {
    std::vector<RouteCand> cands;
    if (r.a == 0 && r.b == 0 && r.c == 0) {
        cands.push_back({Route::Zero, 0, std::nullopt, std::nullopt});
    }
    if (r.b == 0 && !(r.a == 0 && r.c == 0)) {
        cands.push_back({Route::BZero, msc(r.a) + msc(r.c), std::nullopt,
                         std::nullopt});
    }
    if (r.b > 0 && r.a == r.b) {
        cands.push_back({Route::AEqB, msc(r.b) + msc(r.c - r.b), std::nullopt,
                         std::nullopt});
    }
    if (r.b > 0 && r.b * r.b <= r.c) {
        cands.push_back({Route::BSqLeC,
                         1 + msc(r.a - 1) + msc(r.c - r.b * r.b), std::nullopt,
                         std::nullopt});
    }
    if (r.b > 0 && r.b < r.a && r.a <= 64) {
        auto w = small_a_witness(r.a, r.b);
        if (w) {
            std::int64_t vv = 0;
            for (std::int64_t vi : w->v) vv += vi * vi;
            int width = static_cast<int>(w->u.size()) + msc(r.c - vv);
            cands.push_back({Route::Witness, width, std::nullopt, std::move(w)});
        }
    }
    if (r.b > 0) {
        std::optional<squares::RepairPair> best_pair;
        std::optional<int> best;
        auto consider = [&](std::optional<squares::RepairPair> p) {
            auto w = mod8_width(r, p);
            if (w && (!best || *w < *best)) {
                best = w;
                best_pair = p;
            }
        };
        squares::Triplet t = squares::make_triplet(r.a, r.b, r.c);
        std::optional<squares::RepairPair> canonical;
        if (squares::classify_triplet(t).kind == squares::TripletClass::Bad) {
            auto rep = squares::find_repair(t, squares::extended_repair_pool());
            if (rep) canonical = rep->pair;
        }
        if (canonical) consider(canonical);
        consider(std::nullopt);
        for (const auto& p : squares::extended_repair_pool()) {
            if (canonical && p == *canonical) continue;
            consider(p);
        }
        cands.push_back({Route::Mod8, *best, best_pair, std::nullopt});
    }

    const RouteCand* winner = nullptr;
    for (const auto& cand : cands)
        if (!winner || cand.width < winner->width) winner = &cand;
    if (!winner)
        throw std::logic_error("decompose: no applicable route for " +
                               to_string(r));

    Decomposition d;
    d.route = winner->route;
    d.repair = winner->repair;
    d.columns = build_columns(r, *winner);
    return d;
}

}  // namespace detail

inline Decomposition decompose(const SymMat2& A) {
    if (!check_dnn(A))
        throw NotDnnError("decompose: " + to_string(A) + " is not DNN");
    auto [reduced, trace] = reduce(A);
    Decomposition d = detail::decompose_reduced(reduced);
    if (!verify(reduced, d))
        throw std::logic_error("decompose: certificate failed self-check on " +
                               to_string(reduced));
    d = lift(d, trace);
    if (!verify(A, d))
        throw std::logic_error("decompose: lifted certificate failed on " +
                               to_string(A));
    int cap = 10;
    if (d.route == Route::BSqLeC || d.route == Route::Witness) cap = 9;
    if (d.route == Route::BZero || d.route == Route::AEqB) cap = 8;
    if (d.width() > cap)
        throw WidthOverflowError("decompose: width " + std::to_string(d.width()) +
                                 " exceeds cap " + std::to_string(cap) +
                                 " on route " + std::string(route_name(d.route)) +
                                 " for " + to_string(A));
    return d;
}

// One row of the regenerated repair table: a Bad residue triplet, the pair
// chosen from the extended pool, the repaired (VeryGood) triplet, and whether
// the base eight-pair list would already have sufficed.
struct Table3Row {
    squares::Triplet triplet;
    squares::RepairPair pair;
    squares::Triplet repaired;
    bool base_pool_sufficed = false;
};

// Enumerates all 512 residue triplets in lexicographic order; both
// orientations are generated rather than assuming the gamma <= alpha symmetry.
inline std::vector<Table3Row> table3_regenerate() {
    std::vector<Table3Row> rows;
    for (int alpha = 0; alpha < 8; ++alpha)
        for (int beta = 0; beta < 8; ++beta)
            for (int gamma = 0; gamma < 8; ++gamma) {
                squares::Triplet t{alpha, beta, gamma};
                if (squares::classify_triplet(t).kind !=
                    squares::TripletClass::Bad)
                    continue;
                auto rep = squares::find_repair(t, squares::extended_repair_pool());
                if (!rep)
                    throw RepairGapError(
                        "table3: no repair pair for bad triplet (" +
                        std::to_string(alpha) + "," + std::to_string(beta) +
                        "," + std::to_string(gamma) + ")");
                bool base_ok =
                    squares::find_repair(t, squares::base_repair_pool())
                        .has_value();
                rows.push_back(Table3Row{t, rep->pair, rep->repaired, base_ok});
            }
    return rows;
}

}  // namespace icpr::decomp

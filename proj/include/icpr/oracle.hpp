#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "icpr/decomp.hpp"
#include "icpr/squares.hpp"

// Exact integer CP rank by iterative-deepening search over canonical
// (lexicographically non-increasing) column sequences. Ground truth for the
// constructive pipeline; exponential in general, fast at desk scale.

namespace icpr::oracle {

struct SearchBudget {
    int width_cap = 10;
    std::uint64_t node_cap = 100'000'000;
};

// The tail-DNN prune is an optimization, never an assumption; tests disable
// it to confirm results are unchanged.
struct SearchOptions {
    bool dnn_prune = true;
};

enum class SearchStatus {
    Found,             // exact minimum width determined
    WidthCapReached,   // search complete: no decomposition within width_cap
    NodeCapReached,    // inconclusive: node budget exhausted
};

struct IcprResult {
    SearchStatus status = SearchStatus::WidthCapReached;
    int icpr = -1;  // valid when status == Found
    std::uint64_t nodes = 0;
};

namespace detail {

struct Search2x2 {
    std::uint64_t node_cap;
    bool dnn_prune;
    std::uint64_t nodes = 0;
    bool aborted = false;

    // Can (a, b, c) be written with at most t columns, each lexicographically
    // at most (xb, yb)? Once b hits zero the remainder splits into axis
    // columns, so the minimal tail width is closed-form.
    bool dfs(std::int64_t a, std::int64_t b, std::int64_t c, int t,
             std::int64_t xb, std::int64_t yb) {
        if (b == 0) {
            int need = (a ? squares::min_squares_count(a) : 0) +
                       (c ? squares::min_squares_count(c) : 0);
            return need <= t;
        }
        if (t == 0) return false;
        std::int64_t xmax = std::min(xb, squares::isqrt(a));
        for (std::int64_t x = xmax; x >= 1; --x) {
            if (x * x * t < a) break;  // later columns have x' <= x
            std::int64_t ymax = std::min(b / x, squares::isqrt(c));
            if (x == xb) ymax = std::min(ymax, yb);
            for (std::int64_t y = ymax; y >= 0; --y) {
                if (++nodes > node_cap) {
                    aborted = true;
                    return false;
                }
                std::int64_t a2 = a - x * x;
                std::int64_t b2 = b - x * y;
                std::int64_t c2 = c - y * y;
                if (dnn_prune && b2 * b2 > a2 * c2) continue;
                if (dfs(a2, b2, c2, t - 1, x, y)) return true;
                if (aborted) return false;
            }
        }
        return false;
    }
};

}  // namespace detail

// Exact minimum k <= width_cap with A = B B^T over nonnegative integers.
inline IcprResult exact_icpr_2x2(const decomp::SymMat2& A,
                                 SearchBudget budget = {},
                                 SearchOptions opts = {}) {
    if (budget.width_cap < 1 || budget.node_cap < 1)
        throw std::domain_error("exact_icpr_2x2: budget caps must be >= 1");
    if (!decomp::check_dnn(A))
        throw decomp::NotDnnError("exact_icpr_2x2: " + decomp::to_string(A) +
                                  " is not DNN");
    if (A.a == 0 && A.b == 0 && A.c == 0)
        return IcprResult{SearchStatus::Found, 0, 0};
    detail::Search2x2 search{budget.node_cap, opts.dnn_prune};
    std::int64_t big = std::max(A.a, A.c) + 1;
    for (int k = 1; k <= budget.width_cap; ++k) {
        if (search.dfs(A.a, A.b, A.c, k, big, big))
            return IcprResult{SearchStatus::Found, k, search.nodes};
        if (search.aborted)
            return IcprResult{SearchStatus::NodeCapReached, -1, search.nodes};
    }
    return IcprResult{SearchStatus::WidthCapReached, -1, search.nodes};
}

using SqMatrix = std::vector<std::vector<std::int64_t>>;

struct ExistsResult {
    SearchStatus status = SearchStatus::WidthCapReached;
    bool exists = false;  // valid when status == Found
    std::uint64_t nodes = 0;
};

namespace detail {

struct SearchNxN {
    std::uint64_t node_cap;
    std::uint64_t nodes = 0;
    bool aborted = false;
    int n = 0;

    // Remaining matrix must stay a plausible Gram remainder: nonnegative
    // entries, Cauchy-Schwarz on every pair, no nonzero row with a zero
    // diagonal.
    bool plausible(const SqMatrix& R) const {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (R[i][j] < 0) return false;
                if (R[i][j] * R[i][j] > R[i][i] * R[j][j]) return false;
            }
        return true;
    }

    bool is_zero(const SqMatrix& R) const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (R[i][j] != 0) return false;
        return true;
    }

    bool dfs(SqMatrix& R, int t, const std::vector<std::int64_t>& bound) {
        if (is_zero(R)) return true;
        if (t == 0) return false;
        std::vector<std::int64_t> g(n, 0);
        return enumerate(R, t, bound, g, 0, true);
    }

    // Builds candidate columns coordinate by coordinate in lexicographically
    // descending order; tight marks a prefix equal to the bound so far.
    bool enumerate(SqMatrix& R, int t, const std::vector<std::int64_t>& bound,
                   std::vector<std::int64_t>& g, int i, bool tight) {
        if (i == n) {
            if (++nodes > node_cap) {
                aborted = true;
                return false;
            }
            bool nonzero = false;
            for (auto v : g)
                if (v) nonzero = true;
            if (!nonzero) return false;
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    R[r][s] -= g[r] * g[s];
            bool ok = plausible(R) && dfs(R, t - 1, g);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    R[r][s] += g[r] * g[s];
            return ok;
        }
        std::int64_t hi = squares::isqrt(R[i][i]);
        if (tight) hi = std::min(hi, bound[i]);
        for (std::int64_t v = hi; v >= 0; --v) {
            g[i] = v;
            if (enumerate(R, t, bound, g, i + 1, tight && v == bound[i]))
                return true;
            if (aborted) return false;
        }
        g[i] = 0;
        return false;
    }
};

}  // namespace detail

inline SearchBudget default_nxn_budget(const SqMatrix& M) {
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < M.size(); ++i) tr += M[i][i];
    // every nonzero integer column adds at least 1 to the trace
    return SearchBudget{static_cast<int>(std::max<std::int64_t>(tr, 1)),
                        SearchBudget{}.node_cap};
}

// Does a nonnegative integer factorization M = B B^T exist with at most
// width_cap columns? With the trace cap this is a complete decision.
inline ExistsResult exists_decomposition_nxn(const SqMatrix& M,
                                             SearchBudget budget) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return ExistsResult{SearchStatus::Found, true, 0};
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != n)
            throw std::domain_error("exists_decomposition_nxn: non-square input");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (M[i][j] < 0)
                throw std::domain_error(
                    "exists_decomposition_nxn: negative entry");
            if (M[i][j] != M[j][i])
                throw std::domain_error(
                    "exists_decomposition_nxn: input not symmetric");
        }
    detail::SearchNxN search{budget.node_cap};
    search.n = n;
    SqMatrix R = M;
    if (!search.plausible(R))
        return ExistsResult{SearchStatus::Found, false, 0};
    std::int64_t big = 0;
    for (int i = 0; i < n; ++i) big = std::max(big, M[i][i]);
    std::vector<std::int64_t> bound(n, big + 1);
    bool found = search.dfs(R, budget.width_cap, bound);
    if (search.aborted)
        return ExistsResult{SearchStatus::NodeCapReached, false, search.nodes};
    return ExistsResult{SearchStatus::Found, found, search.nodes};
}

inline ExistsResult exists_decomposition_nxn(const SqMatrix& M) {
    return exists_decomposition_nxn(M, default_nxn_budget(M));
}

struct SubadditivityReport {
    IcprResult a1;
    IcprResult a2;
    IcprResult sum;
    std::optional<bool> holds;  // set when all three searches completed
};

inline SubadditivityReport icpr_subadditivity_check(const decomp::SymMat2& A1,
                                                    const decomp::SymMat2& A2,
                                                    SearchBudget budget = {}) {
    SubadditivityReport rep;
    rep.a1 = exact_icpr_2x2(A1, budget);
    rep.a2 = exact_icpr_2x2(A2, budget);
    decomp::SymMat2 s{A1.a + A2.a, A1.b + A2.b, A1.c + A2.c};
    rep.sum = exact_icpr_2x2(s, budget);
    if (rep.a1.status == SearchStatus::Found &&
        rep.a2.status == SearchStatus::Found &&
        rep.sum.status == SearchStatus::Found)
        rep.holds = rep.sum.icpr <= rep.a1.icpr + rep.a2.icpr;
    return rep;
}

}  // namespace icpr::oracle

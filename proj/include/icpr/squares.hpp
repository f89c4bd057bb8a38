#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Sums-of-squares core: minimal representation counts (Lagrange/Legendre),
// canonical representations, mod-8 goodness and triplet repair.

namespace icpr::squares {

// floor(sqrt(n)) for 0 <= n < 2^62, exact.
inline std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw std::domain_error("isqrt: negative input");
    if (n == 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(std::int64_t n) {
    if (n < 0) return false;
    std::int64_t r = isqrt(n);
    return r * r == n;
}

// True iff n = 4^k (8m+7), the numbers with no 3-square representation.
inline bool is_legendre_exception(std::int64_t n) {
    if (n <= 0) return false;
    while (n % 4 == 0) n /= 4;
    return n % 8 == 7;
}

// Minimum k such that n is a sum of k positive perfect squares (0 for n = 0).
// Always <= 4; equals 4 exactly on the 4^k(8m+7) set.
inline int min_squares_count(std::int64_t n) {
    if (n < 0) throw std::domain_error("min_squares_count: negative input");
    if (n == 0) return 0;
    if (is_perfect_square(n)) return 1;
    for (std::int64_t x = 1; 2 * x * x <= n; ++x)
        if (is_perfect_square(n - x * x)) return 2;
    if (is_legendre_exception(n)) return 4;
    return 3;
}

// A multiset of positive integers whose squares sum to target, stored
// non-increasing. At most 4 terms.
struct SquaresRep {
    std::int64_t target = 0;
    std::vector<std::int64_t> terms;
};

class NotRepresentableError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

// Lexicographically greatest non-increasing sequence of exactly k positive
// terms with squares summing to n, each term <= bound. DFS descending, so
// the first complete branch is the answer.
inline bool rep_exact(std::int64_t n, int k, std::int64_t bound,
                      std::vector<std::int64_t>& out) {
    if (k == 0) return n == 0;
    if (k == 1) {
        std::int64_t r = isqrt(n);
        if (r >= 1 && r <= bound && r * r == n) {
            out.push_back(r);
            return true;
        }
        return false;
    }
    std::int64_t hi = std::min(bound, isqrt(n));
    for (std::int64_t t = hi; t >= 1; --t) {
        if (t * t * k < n) break;  // k terms <= t cannot reach n
        out.push_back(t);
        if (rep_exact(n - t * t, k - 1, t, out)) return true;
        out.pop_back();
    }
    return false;
}

}  // namespace detail

// Canonical representation of n with at most max_terms squares: minimal term
// count, ties broken by the lexicographically greatest term list.
inline SquaresRep squares_rep(std::int64_t n, int max_terms) {
    if (n < 0) throw std::domain_error("squares_rep: negative input");
    if (max_terms < 0 || max_terms > 4)
        throw std::domain_error("squares_rep: max_terms must be in 0..4");
    int k = min_squares_count(n);
    if (k > max_terms)
        throw NotRepresentableError("squares_rep: " + std::to_string(n) +
                                    " needs " + std::to_string(k) +
                                    " squares, " + std::to_string(max_terms) +
                                    " allowed");
    SquaresRep rep;
    rep.target = n;
    if (n == 0) return rep;
    bool found = detail::rep_exact(n, k, isqrt(n), rep.terms);
    if (!found)
        throw std::logic_error("squares_rep: count/search disagreement");
    return rep;
}

// Enumerates every non-increasing positive-term representation of n with at
// most max_terms squares, in lexicographically descending order. f receives a
// span over the terms and returns true to stop; returns whether f stopped.
template <class F>
inline bool for_each_rep(std::int64_t n, int max_terms, F&& f) {
    std::vector<std::int64_t> terms;
    auto dfs = [&](auto&& self, std::int64_t rem, std::int64_t bound) -> bool {
        if (rem == 0)
            return f(std::span<const std::int64_t>(terms));
        if (static_cast<int>(terms.size()) == max_terms) return false;
        std::int64_t hi = std::min(bound, isqrt(rem));
        std::int64_t left = max_terms - static_cast<std::int64_t>(terms.size());
        for (std::int64_t t = hi; t >= 1; --t) {
            if (t * t * left < rem) break;
            terms.push_back(t);
            if (self(self, rem - t * t, t)) return true;
            terms.pop_back();
        }
        return false;
    };
    if (n == 0) return f(std::span<const std::int64_t>(terms));
    return dfs(dfs, n, isqrt(n));
}

// Good numbers (Definition-6 style): residue mod 8 in {1,2,3,5,6}. These are
// exactly the residues whose every representative has a 3-square form.
inline bool is_good(std::int64_t n) {
    if (n < 0) throw std::domain_error("is_good: negative input");
    int r = static_cast<int>(n % 8);
    return r == 1 || r == 2 || r == 3 || r == 5 || r == 6;
}

// Residues mod 8 of the three entries of a symmetric 2x2 matrix.
struct Triplet {
    int alpha = 0;
    int beta = 0;
    int gamma = 0;

    bool operator==(const Triplet&) const = default;
};

inline Triplet make_triplet(std::int64_t a, std::int64_t b, std::int64_t c) {
    return Triplet{static_cast<int>(a % 8), static_cast<int>(b % 8),
                   static_cast<int>(c % 8)};
}

struct TripletClass {
    enum Kind { Bad, Good, VeryGood };
    Kind kind = Bad;
    int good_count = 0;  // good values among (alpha-beta)%8, beta, (gamma-beta)%8

    bool operator==(const TripletClass&) const = default;
};

namespace detail {
inline int mod8(int v) { return ((v % 8) + 8) % 8; }
}  // namespace detail

// Classification over the components ((alpha-beta), beta, (gamma-beta)) mod 8:
// Bad with at most one good component, VeryGood with all three.
inline TripletClass classify_triplet(Triplet t) {
    if (t.alpha < 0 || t.alpha > 7 || t.beta < 0 || t.beta > 7 || t.gamma < 0 ||
        t.gamma > 7)
        throw std::domain_error("classify_triplet: residues must be in 0..7");
    int comps[3] = {detail::mod8(t.alpha - t.beta), t.beta,
                    detail::mod8(t.gamma - t.beta)};
    int good = 0;
    for (int c : comps)
        if (is_good(c)) ++good;
    TripletClass::Kind kind = good <= 1 ? TripletClass::Bad
                              : good == 2 ? TripletClass::Good
                                          : TripletClass::VeryGood;
    return TripletClass{kind, good};
}

// Rank-one column residues subtracted from a triplet. x, y >= 1 and xy <= 7.
struct RepairPair {
    int x = 0;
    int y = 0;

    bool operator==(const RepairPair&) const = default;
};

inline Triplet apply_repair(Triplet t, RepairPair p) {
    return Triplet{detail::mod8(t.alpha - p.x * p.x),
                   detail::mod8(t.beta - p.x * p.y),
                   detail::mod8(t.gamma - p.y * p.y)};
}

// The eight pairs tried first; enough for every bad triplet except (6,7,2).
inline const std::vector<RepairPair>& base_repair_pool() {
    static const std::vector<RepairPair> pool = {
        {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 1}, {2, 3}};
    return pool;
}

// Base pool first, then the remaining pairs with xy <= 7 in lexicographic
// order, so lookups stay total beyond the base list.
inline const std::vector<RepairPair>& extended_repair_pool() {
    static const std::vector<RepairPair> pool = [] {
        std::vector<RepairPair> all = base_repair_pool();
        for (int x = 1; x <= 7; ++x)
            for (int y = 1; x * y <= 7; ++y) {
                RepairPair p{x, y};
                bool seen = false;
                for (const auto& q : all)
                    if (q == p) seen = true;
                if (!seen) all.push_back(p);
            }
        return all;
    }();
    return pool;
}

struct RepairResult {
    RepairPair pair;
    Triplet repaired;
};

// First pair in pool order whose repair classifies VeryGood.
inline std::optional<RepairResult> find_repair(
    Triplet t, std::span<const RepairPair> pool) {
    for (const auto& p : pool) {
        Triplet r = apply_repair(t, p);
        if (classify_triplet(r).kind == TripletClass::VeryGood)
            return RepairResult{p, r};
    }
    return std::nullopt;
}

}  // namespace icpr::squares

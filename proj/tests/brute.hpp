#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Test-only reference implementations, kept independent of the library code
// they check: plain nested loops, no Legendre shortcut, no bitsets.

namespace brute {

// Smallest k in 0..4 with n a sum of k positive squares, by exhaustive
// enumeration; 5 means "not representable with up to 4" (never happens).
inline int min_squares_count(std::int64_t n) {
    if (n == 0) return 0;
    for (std::int64_t x = 1; x * x <= n; ++x)
        if (x * x == n) return 1;
    for (std::int64_t x = 1; x * x < n; ++x)
        for (std::int64_t y = x; x * x + y * y <= n; ++y)
            if (x * x + y * y == n) return 2;
    for (std::int64_t x = 1; x * x < n; ++x)
        for (std::int64_t y = x; x * x + y * y < n; ++y)
            for (std::int64_t z = y; x * x + y * y + z * z <= n; ++z)
                if (x * x + y * y + z * z == n) return 3;
    for (std::int64_t x = 1; x * x < n; ++x)
        for (std::int64_t y = x; x * x + y * y < n; ++y)
            for (std::int64_t z = y; x * x + y * y + z * z < n; ++z)
                for (std::int64_t w = z;
                     x * x + y * y + z * z + w * w <= n; ++w)
                    if (x * x + y * y + z * z + w * w == n) return 4;
    return 5;
}

// All non-increasing representations of n with exactly k positive terms,
// sorted descending by term list (enumeration order).
inline std::vector<std::vector<std::int64_t>> all_reps_exact(std::int64_t n,
                                                             int k) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t rem, int left,
                   std::int64_t bound) -> void {
        if (left == 0) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (std::int64_t t = bound; t >= 1; --t) {
            if (t * t > rem) continue;
            cur.push_back(t);
            self(self, rem - t * t, left - 1, t);
            cur.pop_back();
        }
    };
    std::int64_t b = 0;
    while ((b + 1) * (b + 1) <= n) ++b;
    rec(rec, n, k, b);
    return out;
}

// Every v with 0 <= v <= u componentwise and v.u == b, by odometer
// enumeration. Used to cross-check witness search and spanning claims.
inline std::optional<std::vector<std::int64_t>> dot_witness(
    const std::vector<std::int64_t>& u, std::int64_t b) {
    std::vector<std::int64_t> v(u.size(), 0);
    for (;;) {
        std::int64_t dot = 0;
        for (std::size_t i = 0; i < u.size(); ++i) dot += v[i] * u[i];
        if (dot == b) return v;
        std::size_t i = 0;
        while (i < u.size() && v[i] == u[i]) v[i++] = 0;
        if (i == u.size()) return std::nullopt;
        ++v[i];
    }
}

inline bool is_spanning(const std::vector<std::int64_t>& u) {
    std::int64_t norm = 0;
    for (auto e : u) norm += e * e;
    for (std::int64_t b = 0; b <= norm; ++b)
        if (!dot_witness(u, b)) return false;
    return true;
}

}  // namespace brute

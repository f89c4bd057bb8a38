#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "icpr/squares.hpp"

// Spanning vectors: u spans when every b <= u.u is a dot product v.u with
// 0 <= v <= u componentwise. Reachability is a bounded-knapsack bitset DP.

namespace icpr::spanning {

class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class BadRangeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Length cap used by the witness-pair searches (five slots).
inline constexpr int kMaxSearchLen = 5;

// Largest reachability table we are willing to allocate, in sums.
inline constexpr std::int64_t kMaxSpanNorm = std::int64_t{1} << 28;

// Positive, non-increasing integer vector together with its squared norm.
class UVec {
public:
    explicit UVec(std::vector<std::int64_t> entries)
        : entries_(std::move(entries)) {
        if (entries_.empty())
            throw std::invalid_argument("UVec: empty entry list");
        unsigned __int128 norm = 0;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i] <= 0)
                throw std::invalid_argument("UVec: entries must be positive");
            if (i > 0 && entries_[i] > entries_[i - 1])
                throw std::invalid_argument("UVec: entries must be non-increasing");
            norm += static_cast<unsigned __int128>(entries_[i]) * entries_[i];
        }
        if (norm > static_cast<unsigned __int128>(kMaxSpanNorm))
            throw std::length_error("UVec: squared norm too large");
        norm_sq_ = static_cast<std::int64_t>(norm);
    }

    std::span<const std::int64_t> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::int64_t norm_sq() const { return norm_sq_; }

    bool operator==(const UVec& o) const { return entries_ == o.entries_; }

private:
    std::vector<std::int64_t> entries_;
    std::int64_t norm_sq_ = 0;
};

namespace detail {

// Plain word-array bitset sized at construction; supports the shifted-or
// expansion the reachability DP needs.
class BitRow {
public:
    explicit BitRow(std::int64_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::int64_t size() const { return nbits_; }

    void set(std::int64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    bool test(std::int64_t i) const {
        if (i < 0 || i >= nbits_) return false;
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    // this |= this << (shift bits), truncated at nbits.
    void or_shift_self(std::int64_t shift) {
        if (shift <= 0 || shift >= nbits_) return;
        const std::int64_t word_shift = shift >> 6;
        const int bit_shift = static_cast<int>(shift & 63);
        const std::int64_t n = static_cast<std::int64_t>(words_.size());
        if (bit_shift == 0) {
            for (std::int64_t i = n - 1; i >= word_shift; --i)
                words_[i] |= words_[i - word_shift];
        } else {
            for (std::int64_t i = n - 1; i >= word_shift; --i) {
                std::uint64_t v = words_[i - word_shift] << bit_shift;
                if (i - word_shift - 1 >= 0)
                    v |= words_[i - word_shift - 1] >> (64 - bit_shift);
                words_[i] |= v;
            }
        }
        // Bits past nbits stay as garbage in the top word; mask them off.
        int tail = static_cast<int>(nbits_ & 63);
        if (tail) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    bool all_set() const {
        const std::int64_t full = nbits_ >> 6;
        for (std::int64_t i = 0; i < full; ++i)
            if (words_[i] != ~std::uint64_t{0}) return false;
        int tail = static_cast<int>(nbits_ & 63);
        if (tail) {
            std::uint64_t mask = (std::uint64_t{1} << tail) - 1;
            if ((words_.back() & mask) != mask) return false;
        }
        return true;
    }

private:
    std::int64_t nbits_;
    std::vector<std::uint64_t> words_;
};

// Expands row to additionally allow 0..count copies of value. Doubling keeps
// the shift count logarithmic in count.
inline void add_bounded_item(BitRow& row, std::int64_t value,
                             std::int64_t count) {
    std::int64_t have = 0;  // copies already allowed
    std::int64_t step = 1;
    while (have < count) {
        std::int64_t take = std::min(step, count - have);
        row.or_shift_self(take * value);
        have += take;
        step *= 2;
    }
}

// Reachable dot products of entries[from..) as a bitset over 0..norm(from..).
inline BitRow suffix_reach(std::span<const std::int64_t> entries,
                           std::size_t from) {
    std::int64_t norm = 0;
    for (std::size_t i = from; i < entries.size(); ++i)
        norm += entries[i] * entries[i];
    BitRow row(norm + 1);
    row.set(0);
    for (std::size_t i = entries.size(); i-- > from;)
        add_bounded_item(row, entries[i], entries[i]);
    return row;
}

}  // namespace detail

// Step vectors: smallest entry 1, consecutive sorted entries differ by 0 or 1.
inline bool is_step_vector(const UVec& u) {
    auto e = u.entries();
    if (e.back() != 1) return false;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        std::int64_t d = e[i] - e[i + 1];
        if (d != 0 && d != 1) return false;
    }
    return true;
}

inline bool is_spanning(const UVec& u) {
    detail::BitRow row = detail::suffix_reach(u.entries(), 0);
    return row.all_set();
}

// Deterministic witness for b = v.u with 0 <= v <= u: maximize each
// coordinate in turn, feasibility checked against suffix reachability.
inline std::optional<std::vector<std::int64_t>> span_witness(const UVec& u,
                                                             std::int64_t b) {
    if (b < 0 || b > u.norm_sq())
        throw OutOfRangeError("span_witness: b outside 0..norm_sq");
    auto e = u.entries();
    const std::size_t n = e.size();
    std::vector<detail::BitRow> reach;
    reach.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        reach.push_back(detail::suffix_reach(e, i));
    if (!reach[0].test(b)) return std::nullopt;
    std::vector<std::int64_t> v(n, 0);
    std::int64_t rem = b;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::int64_t k = std::min(e[i], rem / e[i]); k >= 0; --k) {
            if (reach[i + 1].test(rem - k * e[i])) {
                v[i] = k;
                rem -= k * e[i];
                break;
            }
        }
    }
    if (rem != 0)
        throw std::logic_error("span_witness: reachability/backtrack mismatch");
    return v;
}

// First spanning representation of a as a sum of at most max_len squares,
// visiting representations in lexicographically descending order.
inline std::optional<UVec> find_spanning_vector(std::int64_t a,
                                                int max_len = kMaxSearchLen) {
    if (a < 1) throw std::domain_error("find_spanning_vector: a must be >= 1");
    if (max_len < 1 || max_len > kMaxSearchLen)
        throw std::domain_error("find_spanning_vector: max_len must be in 1..5");
    std::optional<UVec> found;
    squares::for_each_rep(a, max_len, [&](std::span<const std::int64_t> terms) {
        UVec u(std::vector<std::int64_t>(terms.begin(), terms.end()));
        if (is_spanning(u)) {
            found = std::move(u);
            return true;
        }
        return false;
    });
    return found;
}

struct WitnessPair {
    UVec u;
    std::vector<std::int64_t> v;
};

// Searches every <=max_len-term representation of a (decreasing largest term)
// for one that reaches b. This covers values like a = 33 that have no single
// spanning vector.
inline std::optional<WitnessPair> find_witness_pair(
    std::int64_t a, std::int64_t b, int max_len = kMaxSearchLen) {
    if (a < 1) throw std::domain_error("find_witness_pair: a must be >= 1");
    if (b < 0 || b >= a)
        throw BadRangeError("find_witness_pair: requires 0 <= b < a");
    if (max_len < 1 || max_len > kMaxSearchLen)
        throw std::domain_error("find_witness_pair: max_len must be in 1..5");
    std::optional<WitnessPair> found;
    squares::for_each_rep(a, max_len, [&](std::span<const std::int64_t> terms) {
        UVec u(std::vector<std::int64_t>(terms.begin(), terms.end()));
        auto v = span_witness(u, b);
        if (v) {
            found = WitnessPair{std::move(u), std::move(*v)};
            return true;
        }
        return false;
    });
    return found;
}

struct SylvesterReport {
    bool spanning = false;
    std::int64_t norm_sq = 0;
    double seconds = 0.0;
};

// Positive half of the largest-spanning-vector remark: (1806,42,6,2,1) spans
// its full norm 3263441. Maximality is not attempted here.
inline SylvesterReport verify_sylvester_bound() {
    UVec u(std::vector<std::int64_t>{1806, 42, 6, 2, 1});
    auto start = std::chrono::steady_clock::now();
    bool ok = is_spanning(u);
    auto stop = std::chrono::steady_clock::now();
    return SylvesterReport{
        ok, u.norm_sq(),
        std::chrono::duration<double>(stop - start).count()};
}

}  // namespace icpr::spanning

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "icpr/decomp.hpp"

// Exhaustive certificate scan over all integer DNN matrices with c <= max_c
// (canonically a <= c). Workers claim c-values from a shared counter and
// merge order-independent partial results, so the report does not depend on
// the worker count.

namespace icpr::scan {

struct Violation {
    decomp::SymMat2 matrix;
    int width = 0;
    std::string reason;
};

struct ScanReport {
    std::int64_t max_c = 0;
    int assert_width = 0;
    int jobs = 1;
    std::uint64_t scanned = 0;
    std::map<int, std::uint64_t> width_histogram;
    int max_width = 0;
    // largest width among matrices whose reduced smaller diagonal is <= 64
    int max_width_small_diag = 0;
    std::vector<Violation> violations;
    double wall_seconds = 0.0;
};

namespace detail {

struct Partial {
    std::uint64_t scanned = 0;
    std::map<int, std::uint64_t> histogram;
    int max_width = 0;
    int max_width_small_diag = 0;
    std::vector<Violation> violations;
};

inline void scan_one(const decomp::SymMat2& A, int assert_width, Partial& p) {
    ++p.scanned;
    decomp::Decomposition d;
    try {
        d = decomp::decompose(A);
    } catch (const std::exception& e) {
        p.violations.push_back({A, -1, std::string("decompose threw: ") + e.what()});
        return;
    }
    if (!decomp::verify(A, d)) {
        p.violations.push_back({A, d.width(), "certificate does not verify"});
        return;
    }
    int w = d.width();
    ++p.histogram[w];
    p.max_width = std::max(p.max_width, w);
    std::int64_t small_diag = decomp::reduce(A).first.a;
    if (small_diag <= 64)
        p.max_width_small_diag = std::max(p.max_width_small_diag, w);
    if (w > assert_width)
        p.violations.push_back(
            {A, w, "width exceeds asserted bound " + std::to_string(assert_width)});
}

}  // namespace detail

inline ScanReport run_scan(std::int64_t max_c, int assert_width, int jobs) {
    if (max_c < 1) throw std::domain_error("run_scan: max_c must be >= 1");
    if (jobs < 1) jobs = 1;
    auto start = std::chrono::steady_clock::now();

    std::atomic<std::int64_t> next_c{1};
    std::mutex merge_mutex;
    ScanReport report;
    report.max_c = max_c;
    report.assert_width = assert_width;
    report.jobs = jobs;

    auto worker = [&] {
        detail::Partial local;
        for (;;) {
            std::int64_t c = next_c.fetch_add(1);
            if (c > max_c) break;
            for (std::int64_t a = 0; a <= c; ++a) {
                std::int64_t bmax = squares::isqrt(a * c);
                for (std::int64_t b = 0; b <= bmax; ++b)
                    detail::scan_one(decomp::SymMat2{a, b, c}, assert_width,
                                     local);
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        report.scanned += local.scanned;
        for (const auto& [w, n] : local.histogram)
            report.width_histogram[w] += n;
        report.max_width = std::max(report.max_width, local.max_width);
        report.max_width_small_diag =
            std::max(report.max_width_small_diag, local.max_width_small_diag);
        report.violations.insert(report.violations.end(),
                                 local.violations.begin(),
                                 local.violations.end());
    };

    std::vector<std::thread> pool;
    for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& l, const Violation& r) {
                  auto key = [](const Violation& v) {
                      return std::tuple(v.matrix.c, v.matrix.a, v.matrix.b);
                  };
                  return key(l) < key(r);
              });
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace icpr::scan

#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "icpr/decomp.hpp"
#include "icpr/scan.hpp"
#include "icpr/spanning.hpp"

// Machine-readable output: certificate JSON (sorted keys, canonical column
// order, no timestamps in the body) and the regenerated tables as CSV.

namespace icpr::serialize {

inline nlohmann::json certificate_json(const decomp::SymMat2& A,
                                       const decomp::Decomposition& D) {
    nlohmann::json j;
    j["matrix"] = {{"a", A.a}, {"b", A.b}, {"c", A.c}};
    auto cols = nlohmann::json::array();
    for (const auto& col : D.columns)
        cols.push_back(nlohmann::json::array({col.x, col.y}));
    j["columns"] = cols;
    j["width"] = D.width();
    j["route"] = decomp::route_name(D.route);
    if (D.repair)
        j["repair"] = nlohmann::json::array({D.repair->x, D.repair->y});
    else
        j["repair"] = nullptr;
    j["verified"] = decomp::verify(A, D);
    return j;
}

inline nlohmann::json scan_report_json(const scan::ScanReport& r) {
    nlohmann::json j;
    j["range"] = "c<=" + std::to_string(r.max_c);
    j["assert_width"] = r.assert_width;
    j["jobs"] = r.jobs;
    j["scanned"] = r.scanned;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [w, n] : r.width_histogram) hist[std::to_string(w)] = n;
    j["width_histogram"] = hist;
    j["max_width"] = r.max_width;
    j["max_width_small_diag"] = r.max_width_small_diag;
    auto viols = nlohmann::json::array();
    for (const auto& v : r.violations)
        viols.push_back({{"a", v.matrix.a},
                         {"b", v.matrix.b},
                         {"c", v.matrix.c},
                         {"width", v.width},
                         {"reason", v.reason}});
    j["violations"] = viols;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

namespace detail {

inline std::string join_entries(std::span<const std::int64_t> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace detail

// a, has_spanning, vector-or-empty for a = 1..64.
inline std::string table1_csv() {
    std::ostringstream out;
    out << "a,has_spanning,vector\n";
    for (std::int64_t a = 1; a <= 64; ++a) {
        auto u = spanning::find_spanning_vector(a);
        out << a << ',' << (u ? "true" : "false") << ','
            << (u ? detail::join_entries(u->entries()) : "") << '\n';
    }
    return out.str();
}

// b, u, v witnesses for a = 33, b = 1..32.
inline std::string table2_csv() {
    std::ostringstream out;
    out << "b,u,v\n";
    for (std::int64_t b = 1; b <= 32; ++b) {
        auto w = spanning::find_witness_pair(33, b);
        if (!w) throw std::logic_error("table2: missing witness for b=" +
                                       std::to_string(b));
        out << b << ',' << detail::join_entries(w->u.entries()) << ','
            << detail::join_entries(w->v) << '\n';
    }
    return out.str();
}

// One row per Bad triplet with the chosen repair and its result.
inline std::string table3_csv() {
    std::ostringstream out;
    out << "alpha,beta,gamma,x,y,alpha_prime,beta_prime,gamma_prime,"
           "base_pool_sufficed\n";
    for (const auto& row : decomp::table3_regenerate()) {
        out << row.triplet.alpha << ',' << row.triplet.beta << ','
            << row.triplet.gamma << ',' << row.pair.x << ',' << row.pair.y
            << ',' << row.repaired.alpha << ',' << row.repaired.beta << ','
            << row.repaired.gamma << ','
            << (row.base_pool_sufficed ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace icpr::serialize

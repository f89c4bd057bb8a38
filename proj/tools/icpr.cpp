// Command-line surface for the integer CP rank toolkit: constructive
// decomposition, exact solving, spanning queries, table regeneration, range
// scans and certificate verification.
//
// Exit codes: 0 success, 1 a checked property failed (bound violated, icpr
// search exceeded, certificate mismatch), 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "icpr/decomp.hpp"
#include "icpr/oracle.hpp"
#include "icpr/scan.hpp"
#include "icpr/serialize.hpp"
#include "icpr/spanning.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitInvalidInput = 2;

int default_jobs() {
    if (const char* env = std::getenv("ICPR_JOBS")) {
        try {
            int j = std::stoi(env);
            if (j >= 1) return j;
        } catch (...) {
        }
        std::cerr << "warning: ignoring invalid ICPR_JOBS value\n";
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::vector<std::int64_t> parse_vector(const std::string& text) {
    std::vector<std::int64_t> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("trailing junk");
        entries.push_back(v);
    }
    if (entries.empty()) throw std::invalid_argument("empty vector");
    return entries;
}

std::string format_vector(std::span<const std::int64_t> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

int cmd_decompose(std::int64_t a, std::int64_t b, std::int64_t c, bool json) {
    icpr::decomp::SymMat2 A{a, b, c};
    icpr::decomp::Decomposition d;
    try {
        d = icpr::decomp::decompose(A);
    } catch (const icpr::decomp::NotDnnError&) {
        std::cerr << "error: " << icpr::decomp::to_string(A)
                  << " is not doubly nonnegative\n";
        return kExitInvalidInput;
    }
    if (json) {
        std::cout << icpr::serialize::certificate_json(A, d).dump(2) << "\n";
    } else {
        std::cout << "matrix: " << a << " " << b << " " << c << "\n";
        std::cout << "route: " << icpr::decomp::route_name(d.route) << "\n";
        std::cout << "width: " << d.width() << "\n";
        if (d.repair)
            std::cout << "repair: (" << d.repair->x << "," << d.repair->y
                      << ")\n";
        std::cout << "columns:";
        for (const auto& col : d.columns)
            std::cout << " (" << col.x << "," << col.y << ")";
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_exact(std::int64_t a, std::int64_t b, std::int64_t c, int cap,
              std::uint64_t nodes, bool json) {
    icpr::decomp::SymMat2 A{a, b, c};
    icpr::oracle::IcprResult res;
    try {
        res = icpr::oracle::exact_icpr_2x2(
            A, icpr::oracle::SearchBudget{cap, nodes});
    } catch (const icpr::decomp::NotDnnError&) {
        std::cerr << "error: " << icpr::decomp::to_string(A)
                  << " is not doubly nonnegative\n";
        return kExitInvalidInput;
    }
    if (res.status == icpr::oracle::SearchStatus::Found) {
        if (json) {
            nlohmann::json j{{"icpr", res.icpr},
                             {"nodes", res.nodes},
                             {"status", "found"}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << res.icpr << "\n";
        }
        return kExitOk;
    }
    const char* why = res.status == icpr::oracle::SearchStatus::WidthCapReached
                          ? "width cap"
                          : "node cap";
    if (json) {
        nlohmann::json j{{"icpr", nullptr},
                         {"nodes", res.nodes},
                         {"status", std::string("exceeded: ") + why}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Exceeded (" << why << ")\n";
    }
    return kExitPropertyFailed;
}

int cmd_span_check(const std::string& vec, bool json) {
    icpr::spanning::UVec u(parse_vector(vec));
    bool ok = icpr::spanning::is_spanning(u);
    if (json)
        std::cout << nlohmann::json{{"spanning", ok}}.dump(2) << "\n";
    else
        std::cout << (ok ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_span_find(std::int64_t a, int max_len, bool json) {
    auto u = icpr::spanning::find_spanning_vector(a, max_len);
    if (json) {
        nlohmann::json j;
        if (u) {
            j["vector"] = std::vector<std::int64_t>(u->entries().begin(),
                                                    u->entries().end());
        } else {
            j["vector"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (u ? format_vector(u->entries()) : "none") << "\n";
    }
    return kExitOk;
}

int cmd_span_witness(std::int64_t a, std::int64_t b, bool json) {
    auto w = icpr::spanning::find_witness_pair(a, b);
    if (json) {
        nlohmann::json j;
        if (w) {
            j["u"] = std::vector<std::int64_t>(w->u.entries().begin(),
                                               w->u.entries().end());
            j["v"] = w->v;
        } else {
            j["u"] = nullptr;
            j["v"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
    } else if (w) {
        std::cout << "u=" << format_vector(w->u.entries())
                  << " v=" << format_vector(w->v) << "\n";
    } else {
        std::cout << "none\n";
    }
    return kExitOk;
}

int cmd_tables(const std::string& which, const std::string& out_path) {
    std::string csv;
    if (which == "t1")
        csv = icpr::serialize::table1_csv();
    else if (which == "t2")
        csv = icpr::serialize::table2_csv();
    else
        csv = icpr::serialize::table3_csv();
    if (out_path.empty()) {
        std::cout << csv;
        return kExitOk;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitInvalidInput;
    }
    out << csv;
    return out.good() ? kExitOk : kExitInvalidInput;
}

int cmd_scan(std::int64_t max_c, int assert_width, int jobs,
             const std::string& report_path, bool json) {
    auto report = icpr::scan::run_scan(max_c, assert_width, jobs);
    nlohmann::json j = icpr::serialize::scan_report_json(report);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return kExitInvalidInput;
        }
        out << j.dump(2) << "\n";
    }
    if (json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "scanned " << report.scanned << " DNN matrices with c<="
                  << report.max_c << " using " << report.jobs << " jobs in "
                  << report.wall_seconds << "s\n";
        std::cout << "width histogram:";
        for (const auto& [w, n] : report.width_histogram)
            std::cout << " " << w << ":" << n;
        std::cout << "\n";
        std::cout << "max width: " << report.max_width
                  << " (reduced diag <=64: " << report.max_width_small_diag
                  << ")\n";
        for (const auto& v : report.violations)
            std::cout << "violation: " << icpr::decomp::to_string(v.matrix)
                      << " " << v.reason << "\n";
    }
    return report.violations.empty() ? kExitOk : kExitPropertyFailed;
}

int cmd_verify(std::int64_t a, std::int64_t b, std::int64_t c,
               const std::string& columns_path) {
    std::ifstream in(columns_path);
    if (!in) {
        std::cerr << "error: cannot read " << columns_path << "\n";
        return kExitInvalidInput;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON in " << columns_path << ": " << e.what()
                  << "\n";
        return kExitInvalidInput;
    }
    // accept either a bare [[x,y],...] array or a full certificate object
    nlohmann::json cols = j.is_object() && j.contains("columns") ? j["columns"] : j;
    icpr::decomp::Decomposition d;
    if (!cols.is_array()) {
        std::cerr << "error: expected a JSON array of [x,y] columns\n";
        return kExitInvalidInput;
    }
    try {
        for (const auto& col : cols) {
            if (!col.is_array() || col.size() != 2)
                throw std::invalid_argument("column is not a pair");
            d.columns.push_back({col[0].get<std::int64_t>(),
                                 col[1].get<std::int64_t>()});
        }
    } catch (const std::exception& e) {
        std::cerr << "error: bad column data: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    icpr::decomp::SymMat2 A{a, b, c};
    if (icpr::decomp::verify(A, d)) {
        std::cout << "ok\n";
        return kExitOk;
    }
    std::cout << "mismatch\n";
    return kExitPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integer CP rank toolkit for 2x2 doubly nonnegative matrices"};
    app.require_subcommand(1);

    bool json = false;
    app.add_flag("--json", json, "machine-readable JSON output");

    std::int64_t a = 0, b = 0, c = 0;
    auto* dec = app.add_subcommand("decompose",
                                   "factor A=BB^T with at most 10 columns");
    dec->add_option("a", a)->required();
    dec->add_option("b", b)->required();
    dec->add_option("c", c)->required();

    int cap = 10;
    std::uint64_t node_cap = icpr::oracle::SearchBudget{}.node_cap;
    auto* exact = app.add_subcommand("exact", "exact integer CP rank by search");
    exact->add_option("a", a)->required();
    exact->add_option("b", b)->required();
    exact->add_option("c", c)->required();
    exact->add_option("--cap", cap, "width cap for the search");
    exact->add_option("--nodes", node_cap, "search node budget");

    auto* span = app.add_subcommand("span", "spanning vector queries");
    span->require_subcommand(1);
    std::string vec_text;
    auto* span_check = span->add_subcommand("check", "is the vector spanning?");
    span_check->add_option("vector", vec_text,
                           "comma-separated descending entries")
        ->required();
    std::int64_t span_a = 0, span_b = 0;
    int max_len = icpr::spanning::kMaxSearchLen;
    auto* span_find =
        span->add_subcommand("find", "find a spanning vector with norm a");
    span_find->add_option("a", span_a)->required();
    span_find->add_option("--max-len", max_len, "term limit (<=5)");
    auto* span_witness =
        span->add_subcommand("witness", "find u,v with uu^T=a, vu^T=b, v<=u");
    span_witness->add_option("a", span_a)->required();
    span_witness->add_option("b", span_b)->required();

    std::string which, out_path;
    auto* tables = app.add_subcommand("tables", "regenerate tables as CSV");
    tables->add_option("which", which, "t1, t2 or t3")
        ->required()
        ->check(CLI::IsMember({"t1", "t2", "t3"}));
    tables->add_option("--out", out_path, "output file (default stdout)");

    std::int64_t max_c = 0;
    int assert_width = 10;
    int jobs = default_jobs();
    std::string report_path;
    auto* scan = app.add_subcommand("scan",
                                    "decompose every DNN matrix with c<=max-c");
    scan->add_option("--max-c", max_c)->required();
    scan->add_option("--assert-width", assert_width,
                     "fail if any width exceeds this");
    scan->add_option("--jobs", jobs, "worker threads (default ICPR_JOBS)");
    scan->add_option("--report", report_path, "write JSON report here");

    std::string columns_path;
    auto* verify = app.add_subcommand("verify", "check a certificate file");
    verify->add_option("a", a)->required();
    verify->add_option("b", b)->required();
    verify->add_option("c", c)->required();
    verify->add_option("columns", columns_path,
                       "JSON file: certificate or [[x,y],...]")
        ->required();

    // let --json (defined on the app) be given after a subcommand name
    for (auto* sub : {dec, exact, span, tables, scan, verify})
        sub->fallthrough();
    for (auto* sub : {span_check, span_find, span_witness})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (dec->parsed()) return cmd_decompose(a, b, c, json);
        if (exact->parsed()) return cmd_exact(a, b, c, cap, node_cap, json);
        if (span->parsed()) {
            if (span_check->parsed()) return cmd_span_check(vec_text, json);
            if (span_find->parsed()) return cmd_span_find(span_a, max_len, json);
            return cmd_span_witness(span_a, span_b, json);
        }
        if (tables->parsed()) return cmd_tables(which, out_path);
        if (scan->parsed())
            return cmd_scan(max_c, assert_width, jobs, report_path, json);
        if (verify->parsed()) return cmd_verify(a, b, c, columns_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

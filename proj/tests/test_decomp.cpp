#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "icpr/decomp.hpp"

using namespace icpr::decomp;
using icpr::squares::RepairPair;
using icpr::squares::Triplet;
using icpr::squares::TripletClass;
using icpr::squares::classify_triplet;

namespace {

std::vector<Col> cols(std::initializer_list<std::pair<std::int64_t, std::int64_t>> v) {
    std::vector<Col> out;
    for (auto [x, y] : v) out.push_back({x, y});
    return out;
}

// all intermediate matrices along a trace, original included
std::vector<SymMat2> replay(const ReductionTrace& t) {
    std::vector<SymMat2> ms{t.original};
    for (const auto& s : t.steps) ms.push_back(apply_step(ms.back(), s));
    return ms;
}

}  // namespace

TEST_CASE("check_dnn") {
    CHECK(check_dnn({8, 1, 8}));
    CHECK_FALSE(check_dnn({1, 2, 1}));
    CHECK_FALSE(check_dnn({0, 1, 5}));
    CHECK(check_dnn({0, 0, 0}));
    CHECK_THROWS_AS(check_dnn({-1, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(check_dnn({std::int64_t{1} << 31, 0, 0}), std::domain_error);
}

TEST_CASE("reduce reaches normal form and preserves the determinant") {
    auto [r1, t1] = reduce({2, 3, 5});
    CHECK(r1 == SymMat2{1, 1, 2});
    CHECK(t1.steps == std::vector<ReductionStep>{{ReductionStep::Shear},
                                                 {ReductionStep::Swap}});

    auto [r2, t2] = reduce({5, 2, 6});
    CHECK(r2 == SymMat2{5, 2, 6});
    CHECK(t2.steps.empty());

    auto [r3, t3] = reduce({1, 2, 5});
    CHECK(r3 == SymMat2{1, 1, 2});
    CHECK(t3.steps == std::vector<ReductionStep>{{ReductionStep::Shear}});

    CHECK_THROWS_AS(reduce({1, 2, 1}), NotDnnError);
}

TEST_CASE("reduce keeps every intermediate DNN with equal determinant") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::int64_t> entry(0, 400);
    int tried = 0;
    while (tried < 3000) {
        SymMat2 A{entry(rng), entry(rng), entry(rng)};
        if (!check_dnn(A)) continue;
        ++tried;
        auto [r, trace] = reduce(A);
        CHECK(r.b <= r.a);
        CHECK(r.a <= r.c);
        CHECK(r.b >= 0);
        for (const auto& m : replay(trace)) {
            REQUIRE(check_dnn(m));
            REQUIRE(det(m) == det(A));
        }
        CHECK(replay(trace).back() == r);
    }
}

TEST_CASE("lift maps reduced certificates to the original matrix") {
    // hand-built trace: one shear carries (2,1,1) back to (2,3,5)
    ReductionTrace trace;
    trace.original = {2, 3, 5};
    trace.reduced = {2, 1, 1};
    trace.steps = {{ReductionStep::Shear}};

    Decomposition B;
    B.columns = cols({{1, 1}, {1, 0}});
    B.route = Route::Witness;
    REQUIRE(verify(trace.reduced, B));

    Decomposition lifted = lift(B, trace);
    CHECK(verify(trace.original, lifted));
    CHECK(lifted.width() == B.width());
    CHECK(lifted.columns == cols({{1, 2}, {1, 1}}));
    CHECK(lifted.route == Route::Witness);

    // empty trace = identity
    ReductionTrace id;
    id.original = trace.reduced;
    id.reduced = trace.reduced;
    Decomposition same = lift(B, id);
    CHECK(same.columns == B.columns);

    // mismatched certificate is rejected
    Decomposition bad;
    bad.columns = cols({{1, 1}});
    CHECK_THROWS_AS(lift(bad, trace), TraceMismatchError);

    // inconsistent trace is rejected too
    ReductionTrace broken = trace;
    broken.reduced = {9, 9, 9};
    CHECK_THROWS_AS(lift(B, broken), TraceMismatchError);
}

TEST_CASE("verify") {
    Decomposition d;
    d.columns = cols({{1, 2}, {1, 1}});
    CHECK(verify({2, 3, 5}, d));
    d.columns = cols({{1, 1}});
    CHECK_FALSE(verify({2, 3, 5}, d));
    Decomposition empty;
    CHECK(verify({0, 0, 0}, empty));
    CHECK_FALSE(verify({1, 0, 0}, empty));
    Decomposition neg;
    neg.columns = cols({{-1, 2}});
    CHECK_FALSE(verify({1, -2, 4}, neg));
}

TEST_CASE("decompose frozen certificates") {
    SECTION("zero matrix") {
        auto d = decompose({0, 0, 0});
        CHECK(d.width() == 0);
        CHECK(d.route == Route::Zero);
        CHECK(d.columns.empty());
    }
    SECTION("rank-one all-ones") {
        auto d = decompose({1, 1, 1});
        CHECK(d.width() == 1);
        CHECK(d.route == Route::AEqB);
        CHECK(d.columns == cols({{1, 1}}));
    }
    SECTION("diag(7,7) needs four squares per side") {
        auto d = decompose({7, 0, 7});
        CHECK(d.width() == 8);
        CHECK(d.route == Route::BZero);
        CHECK(verify({7, 0, 7}, d));
    }
    SECTION("the (8,1;1,8) lower-bound witness") {
        auto d = decompose({8, 1, 8});
        CHECK(d.width() == 9);
        CHECK(d.route == Route::BSqLeC);
        CHECK(verify({8, 1, 8}, d));
        CHECK(d.columns == cols({{2, 0}, {1, 1}, {1, 0}, {1, 0}, {1, 0},
                                 {0, 2}, {0, 1}, {0, 1}, {0, 1}}));
    }
    SECTION("mod-8 route with repair") {
        auto d = decompose({70, 63, 75});
        CHECK(verify({70, 63, 75}, d));
        CHECK(d.route == Route::Mod8);
        // evaluating every feasible pair finds (1,4): 59 + 10 + 0 split
        CHECK(d.width() == 6);
        REQUIRE(d.repair);
        CHECK(*d.repair == RepairPair{1, 4});
        CHECK(d.columns == cols({{7, 7}, {3, 3}, {3, 0}, {1, 4}, {1, 1},
                                 {1, 0}}));
    }
    SECTION("not DNN") {
        CHECK_THROWS_AS(decompose({1, 2, 1}), NotDnnError);
    }
}

TEST_CASE("decompose certificates verify and respect the width caps") {
    std::mt19937 rng(20240810);
    std::uniform_int_distribution<std::int64_t> entry(0, 5000);
    int tried = 0;
    while (tried < 4000) {
        SymMat2 A{entry(rng), entry(rng), entry(rng)};
        if (!check_dnn(A)) continue;
        ++tried;
        auto d = decompose(A);
        INFO(to_string(A) << " route " << route_name(d.route));
        REQUIRE(verify(A, d));
        REQUIRE(d.width() <= 10);
        auto [r, trace] = reduce(A);
        if (r.a <= 64) REQUIRE(d.width() <= 9);
        // canonical column order, no zero columns
        for (std::size_t i = 0; i < d.columns.size(); ++i) {
            REQUIRE_FALSE(d.columns[i] == Col{0, 0});
            if (i) REQUIRE_FALSE(d.columns[i - 1] < d.columns[i]);
        }
        // route-specific caps
        switch (d.route) {
            case Route::Zero: REQUIRE(d.width() == 0); break;
            case Route::BZero:
            case Route::AEqB: REQUIRE(d.width() <= 8); break;
            case Route::BSqLeC:
            case Route::Witness: REQUIRE(d.width() <= 9); break;
            case Route::Mod8: REQUIRE(d.width() <= 10); break;
        }
    }
}

TEST_CASE("round trip: decompose the reduction, lift, verify") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::int64_t> entry(0, 900);
    int tried = 0;
    while (tried < 2000) {
        SymMat2 A{entry(rng), entry(rng), entry(rng)};
        if (!check_dnn(A)) continue;
        ++tried;
        auto [r, trace] = reduce(A);
        auto d = detail::decompose_reduced(r);
        REQUIRE(verify(r, d));
        auto lifted = lift(d, trace);
        REQUIRE(verify(A, lifted));
        REQUIRE(lifted.width() == d.width());
    }
}

TEST_CASE("mod-8 residue eligibility is invariant under +8 shifts") {
    auto eligible = [](const SymMat2& m) {
        std::vector<RepairPair> out;
        Triplet t = icpr::squares::make_triplet(m.a, m.b, m.c);
        for (const auto& p : icpr::squares::extended_repair_pool())
            if (classify_triplet(icpr::squares::apply_repair(t, p)).kind ==
                TripletClass::VeryGood)
                out.push_back(p);
        return out;
    };
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::int64_t> entry(65, 4000);
    int tried = 0;
    while (tried < 500) {
        SymMat2 A{entry(rng), entry(rng), entry(rng)};
        if (!check_dnn(A)) continue;
        auto [r, trace] = reduce(A);
        if (r.a <= 64) continue;
        ++tried;
        auto base = eligible(r);
        for (SymMat2 shifted : {SymMat2{r.a + 8, r.b, r.c},
                                SymMat2{r.a, r.b + 8, r.c},
                                SymMat2{r.a, r.b, r.c + 8}}) {
            CHECK(eligible(shifted) == base);
        }
    }
}

TEST_CASE("table3 covers every bad triplet and repairs it") {
    auto rows = table3_regenerate();
    REQUIRE(rows.size() == 162);
    int base_count = 0;
    bool saw777 = false;
    for (const auto& row : rows) {
        CHECK(classify_triplet(row.triplet).kind == TripletClass::Bad);
        CHECK(classify_triplet(row.repaired).kind == TripletClass::VeryGood);
        CHECK(icpr::squares::apply_repair(row.triplet, row.pair) ==
              row.repaired);
        CHECK(row.pair.x * row.pair.y <= 7);
        if (row.base_pool_sufficed) ++base_count;
        if (row.triplet == Triplet{7, 7, 7}) {
            saw777 = true;
            CHECK(row.pair == RepairPair{1, 2});
            CHECK(row.repaired == Triplet{6, 5, 3});
        }
    }
    CHECK(saw777);
    // the base eight-pair list covers all bad triplets except (6,7,2),
    // where only mirrored pairs like (4,1) reach VeryGood
    CHECK(base_count == 161);
    for (const auto& row : rows) {
        if (row.triplet == Triplet{6, 7, 2}) {
            CHECK_FALSE(row.base_pool_sufficed);
            CHECK(row.pair == RepairPair{4, 1});
            CHECK(row.repaired == Triplet{6, 3, 1});
        } else {
            CHECK(row.base_pool_sufficed);
        }
    }
}

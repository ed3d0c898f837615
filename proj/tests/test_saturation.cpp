#include "doctest.h"

#include "hypergrid/chain_cover.hpp"
#include "hypergrid/flow.hpp"
#include "hypergrid/rng.hpp"
#include "hypergrid/saturation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

using namespace hypergrid;

namespace {

std::vector<Point> level_union(const GridShape& s, const std::vector<int>& ranks) {
    std::vector<Point> out;
    for (int r : ranks)
        for (auto& p : level_points(s, r)) out.push_back(p);
    return out;
}

// Staircase maximal chain of [t]^2: up the second coordinate, then the first.
std::vector<Point> staircase(int t) {
    std::vector<Point> out;
    for (int b = 0; b < t; ++b) out.push_back({0, b});
    for (int a = 1; a < t; ++a) out.push_back({a, t - 1});
    return out;
}

void check_cover(const GridShape& s, const ChainPartition& part) {
    std::vector<Point> all;
    for (auto& c : part.chains) {
        CHECK(!c.empty());
        for (size_t i = 0; i < c.size(); ++i) {
            CHECK(in_shape(s, c[i]));
            if (i) CHECK((leq(c[i - 1], c[i]) && c[i - 1] != c[i]));
        }
        for (auto& p : c) all.push_back(p);
    }
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    auto ground = all_points(s);
    std::sort(ground.begin(), ground.end());
    CHECK(all == ground);
}

size_t min_chain_len(const ChainPartition& part) {
    size_t best = SIZE_MAX;
    for (auto& c : part.chains) best = std::min(best, c.size());
    return best;
}

// Independent oracle: enumerate antichains of [a] x [b] by DFS over cells in
// lex order, extending only with cells incomparable to everything chosen.
long long antichain_bruteforce(long a, long b) {
    std::vector<std::pair<long, long>> cells;
    for (long i = 0; i < a; ++i)
        for (long j = 0; j < b; ++j) cells.push_back({i, j});
    auto comp = [](std::pair<long, long> p, std::pair<long, long> q) {
        return (p.first <= q.first && p.second <= q.second) ||
               (q.first <= p.first && q.second <= p.second);
    };
    long long count = 0;
    std::vector<std::pair<long, long>> chosen;
    std::function<void(size_t)> rec = [&](size_t start) {
        ++count;
        for (size_t c = start; c < cells.size(); ++c) {
            bool ok = true;
            for (auto& x : chosen)
                if (comp(x, cells[c])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(cells[c]);
            rec(c + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return count;
}

// Second oracle: downsets of [a] x [b] counted as non-increasing column
// height sequences via DP (antichain <-> downset bijection).
Int downset_count_dp(long a, long b) {
    if (a == 0 || b == 0) return 1;
    std::vector<Int> ways((size_t)a + 1, Int(1));
    for (long col = 2; col <= b; ++col) {
        std::vector<Int> next((size_t)a + 1, Int(0));
        Int acc = 0;
        for (long h = a; h >= 0; --h) {
            acc += ways[(size_t)h];
            next[(size_t)h] = acc;
        }
        ways = next;
    }
    Int total = 0;
    for (auto& w : ways) total += w;
    return total;
}

}  // namespace

TEST_SUITE("saturation") {

TEST_CASE("comp_max_degree basics") {
    GridShape s{2, 4};
    CHECK(comp_max_degree(s, {}) == 0);
    CHECK(comp_max_degree(s, {{1, 0, 1, 0}}) == 0);
    CHECK(comp_max_degree(s, level_points(s, 2)) == 0);
    CHECK(is_antichain(s, level_points(s, 2)));

    GridShape line{5, 1};
    CHECK(comp_max_degree(line, all_points(line)) == 4);
    CHECK_FALSE(is_antichain(line, all_points(line)));
}

TEST_CASE("comp_max_degree on the two middle levels of [2]^4") {
    GridShape s{2, 4};
    auto a = level_union(s, {2, 3});
    CHECK(comp_max_degree(s, a) == 3);
    CHECK_FALSE(is_antichain(s, a));
}

TEST_CASE("uniform chain partition of a path") {
    auto part = uniform_chain_partition({5, 1});
    CHECK(part.chains.size() == 1);
    CHECK(part.chains[0].size() == 5);
    CHECK(part.bound_met);
    CHECK(part.min_length_bound == Rat(2));
    check_cover({5, 1}, part);
}

TEST_CASE("uniform chain partition small shapes") {
    auto p1 = uniform_chain_partition({2, 3});
    CHECK(p1.chains.size() == 3);
    CHECK(p1.min_length_bound == make_rat(5, 6));
    CHECK(p1.bound_met);
    CHECK(min_chain_len(p1) >= 1);
    check_cover({2, 3}, p1);

    auto p2 = uniform_chain_partition({3, 2});
    CHECK(p2.chains.size() == 3);
    CHECK(p2.min_length_bound == Rat(1));
    CHECK(p2.bound_met);
    check_cover({3, 2}, p2);
}

TEST_CASE("uniform chain partition with rebalancing") {
    auto p1 = uniform_chain_partition({2, 6});
    CHECK(p1.chains.size() == 20);
    CHECK(p1.min_length_bound == make_rat(11, 10));
    CHECK(p1.bound_met);
    CHECK(min_chain_len(p1) >= 2);
    check_cover({2, 6}, p1);

    auto p2 = uniform_chain_partition({3, 4});
    CHECK(p2.chains.size() == 19);
    CHECK(p2.min_length_bound == make_rat(31, 19));
    CHECK(p2.bound_met);
    CHECK(min_chain_len(p2) >= 2);
    check_cover({3, 4}, p2);

    auto p3 = uniform_chain_partition({4, 3});
    CHECK(p3.chains.size() == 12);
    CHECK(p3.min_length_bound == make_rat(13, 6));
    CHECK(p3.bound_met);
    CHECK(min_chain_len(p3) >= 3);
    check_cover({4, 3}, p3);
}

TEST_CASE("chain cover size equals width across shapes") {
    std::vector<GridShape> shapes = {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                                     {3, 2}, {3, 3}, {4, 2}, {5, 2}};
    for (auto s : shapes) {
        CAPTURE(shape_str(s));
        auto part = uniform_chain_partition(s);
        CHECK(Int((long)part.chains.size()) == width(s));
        CHECK(part.bound_met);
        check_cover(s, part);
    }
}

TEST_CASE("rectangle partition of [2]^2") {
    auto part = rectangle_partition({2, 2});
    CHECK(part.n1 == 1);
    CHECK(part.n2 == 1);
    CHECK(part.rectangles.size() == 1);
    CHECK(part.rectangles[0].a() == 2);
    CHECK(part.rectangles[0].b() == 2);
    CHECK(part.u == 6);
    CHECK(part.to_json().find("\"u\":6") != std::string::npos);
}

TEST_CASE("rectangle partition covers [3]^4 and [2]^6") {
    auto p1 = rectangle_partition({3, 4});
    Int total1 = 0;
    for (auto& r : p1.rectangles) {
        CHECK(r.a() >= 1);
        CHECK(r.b() >= 1);
        CHECK(Rat(r.a()) <= make_rat(9, 3));
        CHECK(Rat(r.b()) <= make_rat(9, 3));
        total1 += Int(r.a()) * Int(r.b());
    }
    CHECK(total1 == 81);
    CHECK(p1.u == 3 * 3);

    auto p2 = rectangle_partition({2, 6});
    Int total2 = 0;
    long max_side = 0;
    for (auto& r : p2.rectangles) {
        CHECK(r.a() >= 1);
        CHECK(r.b() >= 1);
        max_side = std::max({max_side, r.a(), r.b()});
        total2 += Int(r.a()) * Int(r.b());
    }
    CHECK(total2 == 64);
    CHECK(p2.u == 3 * max_side);
}

TEST_CASE("rectangle partition half-split override") {
    auto p1 = rectangle_partition({2, 3}, 1);
    auto p2 = rectangle_partition({2, 3}, 2);
    Int t1 = 0, t2 = 0;
    for (auto& r : p1.rectangles) t1 += Int(r.a()) * Int(r.b());
    for (auto& r : p2.rectangles) t2 += Int(r.a()) * Int(r.b());
    CHECK(t1 == 8);
    CHECK(t2 == 8);
    CHECK_THROWS_AS(rectangle_partition({2, 3}, 3), std::invalid_argument);
    CHECK_THROWS_AS(rectangle_partition({3, 1}), std::invalid_argument);
}

TEST_CASE("rectangle antichain count") {
    CHECK(rectangle_antichain_count(2, 2) == 6);
    CHECK(rectangle_antichain_count(3, 5) == 56);
    CHECK(rectangle_antichain_count(1, 1) == 2);
    CHECK(rectangle_antichain_count(0, 4) == 1);
    for (long t = 1; t <= 40; ++t)
        CHECK(rectangle_antichain_count(t, t) <= pow2(2 * (unsigned long)t));
}

TEST_CASE("rectangle antichain count matches brute force up to 6x6") {
    for (long a = 1; a <= 6; ++a)
        for (long b = 1; b <= 6; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            Int expect = rectangle_antichain_count(a, b);
            CHECK(expect == Int((long)antichain_bruteforce(a, b)));
            CHECK(expect == downset_count_dp(a, b));
        }
}

TEST_CASE("rectangle bound check") {
    auto rep = rectangle_bound_check(2, 2, 6, 1.0 / 3.0);
    CHECK(rep.count == 6);
    CHECK(rep.count_ok);
    CHECK(rep.size == 2);
    CHECK(rep.size_count == 1);
    CHECK(rep.pass);

    auto rep0 = rectangle_bound_check(2, 2, 6, 0.0);
    CHECK(rep0.size == 0);
    CHECK(rep0.size_count == 1);
    CHECK(rep0.pass);

    auto rep2 = rectangle_bound_check(4, 5, 15, 0.2);
    CHECK(rep2.size == 3);
    CHECK(rep2.size_count == 40);
    CHECK(rep2.pass);

    CHECK_THROWS_AS(rectangle_bound_check(4, 5, 11, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(rectangle_bound_check(2, 2, 6, 0.4), std::invalid_argument);

    for (long a = 1; a <= 6; ++a)
        for (long b = 1; b <= 6; ++b)
            for (double beta : {0.0, 0.1, 0.2, 1.0 / 3.0}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(beta);
                CHECK(rectangle_bound_check(a, b, 3 * std::max(a, b), beta).pass);
            }
}

TEST_CASE("rectangle saturation direct branch") {
    // Maximal chains have degree 2t-2; the full grid has a corner comparable
    // to everything, so its degree is t^2-1.
    auto chain8 = check_rectangle_saturation(8, staircase(8));
    CHECK_FALSE(chain8.proof_chain);
    CHECK(chain8.delta == 14);
    CHECK(chain8.pass);

    auto chain4 = check_rectangle_saturation(4, staircase(4));
    CHECK(chain4.delta == 6);
    CHECK(chain4.pass);

    auto full8 = check_rectangle_saturation(8, all_points({8, 2}));
    CHECK_FALSE(full8.proof_chain);
    CHECK(full8.delta == 63);
    CHECK(full8.pass);

    auto full4 = check_rectangle_saturation(4, all_points({4, 2}));
    CHECK_FALSE(full4.proof_chain);
    CHECK(full4.delta == 15);
    CHECK(full4.pass);

    std::vector<Point> rows;
    for (int b = 0; b < 8; ++b) {
        rows.push_back({2, b});
        rows.push_back({5, b});
    }
    auto two_rows = check_rectangle_saturation(8, rows);
    CHECK(two_rows.delta >= 1);
    CHECK(two_rows.delta == 15);
    CHECK(two_rows.pass);

    CHECK_THROWS_AS(check_rectangle_saturation(8, std::vector<Point>{{0, 0}, {1, 1}}),
                    std::invalid_argument);
}

TEST_CASE("rectangle saturation proof branch") {
    auto full = check_rectangle_saturation(32, all_points({32, 2}));
    CHECK(full.proof_chain);
    CHECK(full.k == 2);
    CHECK(full.s == 16);
    CHECK(full.delta == 1023);
    CHECK(full.class_size == 64);
    CHECK(full.witness_external == 60);
    CHECK(full.pass);

    auto full16 = check_rectangle_saturation(16, all_points({16, 2}));
    CHECK(full16.proof_chain);
    CHECK(full16.k == 1);
    CHECK(full16.pass);

    auto pts = all_points({32, 2});
    Rng rng(31, 0);
    for (int trial = 0; trial < 20; ++trial) {
        auto pool = pts;
        rng.shuffle(pool);
        std::vector<Point> a(pool.begin(), pool.begin() + 600);
        auto res = check_rectangle_saturation(32, a);
        CHECK(res.proof_chain);
        CHECK(res.k == 1);
        CHECK(res.pass);
        CHECK(2 * res.delta >= res.k * res.k);
    }
}

TEST_CASE("strong saturation examples") {
    GridShape s{2, 4};
    Rat w = max_good_weight(s).value;
    CHECK(w == 1);
    auto res = check_strong_saturation(s, level_union(s, {1, 2}), 1, Rat(1), w);
    CHECK(res.holds);
    CHECK(res.delta == 3);
    CHECK(res.weight == 2);
    CHECK(res.bound == make_rat(1, 2));

    GridShape s3{3, 3};
    Rat w3 = max_good_weight(s3).value;
    auto res3 = check_strong_saturation(s3, level_union(s3, {2, 3}), 1, Rat(1), w3);
    CHECK(res3.holds);
    CHECK(res3.weight == 2);
    CHECK(res3.delta >= 1);

    CHECK_THROWS_AS(check_strong_saturation(s, {{1, 1, 0, 0}}, 1, Rat(1), w),
                    std::invalid_argument);
}

TEST_CASE("strong saturation random qualifying sweep") {
    std::vector<GridShape> shapes = {{2, 4}, {2, 5}, {3, 3}, {4, 2}};
    for (auto s : shapes) {
        CAPTURE(shape_str(s));
        Rat w = max_good_weight(s).value;
        auto pts = all_points(s);
        Rng rng(21, (std::uint64_t)(s.t * 100 + s.n));
        long long failures = 0, done = 0, deep = 0;
        while (done < 10000) {
            std::vector<Point> a;
            for (auto& p : pts)
                if (rng.next() & 1) a.push_back(p);
            Rat lw = lym_weight(s, a);
            if (lw <= 1) continue;
            ++done;
            auto res = check_strong_saturation(s, a, 1, lw - 1, w);
            if (!res.holds) ++failures;
            if (lw > 2) {
                ++deep;
                auto res2 = check_strong_saturation(s, a, 2, lw - 2, w);
                if (!res2.holds) ++failures;
            }
        }
        CHECK(failures == 0);
        CHECK(deep > 0);
    }
}

TEST_CASE("weak saturation") {
    GridShape s{2, 4};
    auto a = level_points(s, 2);
    a.push_back({1, 0, 0, 0});
    auto res = check_weak_saturation(s, a);
    CHECK(res.delta >= 1);
    CHECK(res.ratio == make_rat(7, 6));
    CHECK(res.scaled == Rat((long)res.delta) * make_rat(36, 49));

    GridShape s5{2, 5};
    auto mid = level_union(s5, {1, 2, 3});
    auto res5 = check_weak_saturation(s5, mid);
    CHECK(res5.delta == 10);
    CHECK(res5.ratio == make_rat(5, 2));
    CHECK(res5.scaled == make_rat(8, 5));

    CHECK_THROWS_AS(check_weak_saturation(s5, level_points(s5, 2)), std::invalid_argument);

    GridShape s33{3, 3};
    auto pts = all_points(s33);
    Rng rng(22, 0);
    for (int trial = 0; trial < 50; ++trial) {
        auto pool = pts;
        rng.shuffle(pool);
        std::vector<Point> sub(pool.begin(), pool.begin() + 14);
        CHECK(check_weak_saturation(s33, sub).delta >= 1);
    }
}

TEST_CASE("chain partition json") {
    auto part = uniform_chain_partition({2, 2});
    auto js = part.to_json();
    CHECK(js.find("\"chains\":") != std::string::npos);
    CHECK(js.find("\"bound_met\":true") != std::string::npos);
}

}  // TEST_SUITE

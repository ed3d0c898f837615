#include "doctest.h"
#include "hypergrid/grid.hpp"
#include "hypergrid/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace hypergrid;

namespace {

// Independent oracle: maximum antichain size by scanning every subset.
long long max_antichain_bruteforce(const GridShape& s) {
    std::vector<Point> pts = all_points(s);
    int n = (int)pts.size();
    REQUIRE(n <= 24);
    std::vector<std::uint32_t> incomp(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !comparable(pts[i], pts[j])) incomp[i] |= 1u << j;
    long long best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if ((mask >> i) & 1u)
                if ((mask & ~(incomp[i] | (1u << i))) != 0) ok = false;
        if (ok) best = std::max<long long>(best, __builtin_popcount(mask));
    }
    return best;
}

std::vector<Point> random_maximal_antichain(const GridShape& s, const std::vector<Point>& pts,
                                            Rng& rng) {
    std::vector<int> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) order[i] = (int)i;
    rng.shuffle(order);
    std::vector<Point> a;
    for (int idx : order) {
        bool ok = true;
        for (const Point& y : a)
            if (comparable(pts[idx], y)) {
                ok = false;
                break;
            }
        if (ok) a.push_back(pts[idx]);
    }
    return a;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("level sizes, small shapes") {
    LevelProfile p = level_sizes({3, 2});
    CHECK(p.sizes == std::vector<Int>{1, 2, 3, 2, 1});
    LevelProfile q = level_sizes({2, 4});
    CHECK(q.sizes == std::vector<Int>{1, 4, 6, 4, 1});
    CHECK(q.to_json() == "[\"1\",\"4\",\"6\",\"4\",\"1\"]");
}

TEST_CASE("level sizes of [10]^6") {
    LevelProfile p = level_sizes({10, 6});
    CHECK(p.total() == ipow(10, 6));
    CHECK(p.argmax() == 27);
    CHECK(p.is_symmetric());
    CHECK(is_log_concave(p.sizes));
}

TEST_CASE("profile invariants for every shape with t^n <= 10^6") {
    for (int t = 2; t <= 10; ++t) {
        for (int n = 1; n <= 20; ++n) {
            GridShape s{t, n};
            if (s.element_count() > 1000000) break;
            LevelProfile p = level_sizes(s);
            CHECK(p.total() == s.element_count());
            CHECK(p.is_symmetric());
            CHECK(is_log_concave(p.sizes));
            CHECK((long)p.sizes.size() == s.level_count());
        }
    }
}

TEST_CASE("width matches brute force on tiny shapes") {
    CHECK(width({3, 2}) == 3);
    CHECK(width({ 2, 4 }) == 6);
    CHECK(width({4, 2}) == 4);
    for (GridShape s : {GridShape{2, 2}, GridShape{3, 2}, GridShape{2, 3}, GridShape{4, 2},
                        GridShape{2, 4}}) {
        CHECK(width(s) == Int((long)max_antichain_bruteforce(s)));
    }
}

TEST_CASE("log concavity") {
    CHECK(is_log_concave({Int(1), Int(2), Int(3), Int(2), Int(1)}));
    CHECK(!is_log_concave({Int(1), Int(1), Int(2), Int(1)}));
    CHECK(is_log_concave(level_sizes({7, 5}).sizes));
}

TEST_CASE("comparability and covers") {
    CHECK(comparable({0, 1}, {1, 1}));
    CHECK(!comparable({0, 1}, {1, 0}));
    GridShape s{4, 2};
    std::vector<Point> up = covers_up(s, {2, 0});
    CHECK(up == std::vector<Point>{{3, 0}, {2, 1}});
    CHECK(covers_up(s, {3, 3}).empty());
}

TEST_CASE("point enumeration is lexicographic and dense") {
    GridShape s{4, 3};
    std::vector<Point> pts = all_points(s);
    REQUIRE((long long)pts.size() == 64);
    for (long long i = 0; i < 64; ++i) {
        CHECK(point_index(s, pts[i]) == i);
        CHECK(point_at(s, i) == pts[i]);
        if (i > 0) CHECK(std::lexicographical_compare(pts[i - 1].begin(), pts[i - 1].end(),
                                                      pts[i].begin(), pts[i].end()));
    }
    LevelProfile p = level_sizes(s);
    for (long r = 0; r <= s.max_rank(); ++r)
        CHECK(Int((long)level_points(s, r).size()) == p.at(r));
}

TEST_CASE("lym weight") {
    GridShape s{3, 2};
    CHECK(lym_weight(s, level_points(s, s.mid())) == Rat(1));
    CHECK(lym_weight(s, {}) == Rat(0));
    CHECK(lym_weight(s, {{0, 0}, {1, 1}}) == make_rat(4, 3));
}

TEST_CASE("lym inequality on random antichains") {
    for (GridShape s : {GridShape{3, 2}, GridShape{2, 4}, GridShape{4, 2}}) {
        std::vector<Point> pts = all_points(s);
        Rng rng(2026, (std::uint64_t)s.t * 100 + s.n);
        for (int it = 0; it < 10000; ++it) {
            std::vector<Point> a = random_maximal_antichain(s, pts, rng);
            CHECK(lym_weight(s, a) <= Rat(1));
        }
    }
}

TEST_CASE("good levels") {
    GridShape s{3, 4};
    CHECK(good_levels(s).all_of(s));

    LevelRange r = good_levels({10, 100});
    CHECK(r.lo == 292);
    CHECK(r.hi == 608);
    CHECK(is_good_rank({10, 100}, 450));
    CHECK(!is_good_rank({10, 100}, 291));
}

TEST_CASE("normal prefix predicate") {
    GridShape s{3, 100};
    Point zero(100, 0);
    CHECK(!is_normal_prefix(s, zero, 100));
    Point mid(100, 1);
    CHECK(is_normal_prefix(s, mid, 100));
    CHECK(is_normal_prefix(s, zero, 1));
}

TEST_CASE("level tail bound") {
    TailCheckResult res = level_tail_check({2, 20}, 5);
    REQUIRE(res.levels == std::vector<long>{5});
    CHECK(res.exact[0] == binom(20, 5));
    CHECK(res.exact[0] == 15504);
    double expected = std::pow(2.0, 19) * std::exp(-25.0 / 152.0);
    CHECK(std::fabs(res.bound - expected) < 1e-6 * expected);
    CHECK(res.holds);

    CHECK(level_tail_check({3, 10}, 4).holds);
    CHECK_THROWS_AS(level_tail_check({2, 4}, 2), std::invalid_argument);
}

TEST_CASE("level tail bound sweep, t <= 3") {
    for (int t = 2; t <= 3; ++t) {
        for (int n = 2; n <= 20; ++n) {
            GridShape s{t, n};
            for (long r = t + 1; r <= s.max_rank() / 2; ++r) CHECK(level_tail_check(s, r).holds);
        }
    }
}

TEST_CASE("odd total rank checks both middle offsets") {
    GridShape s{2, 5};
    TailCheckResult res = level_tail_check(s, 3);
    CHECK(res.levels == std::vector<long>{-1, 0});
    CHECK(res.exact == std::vector<Int>{0, 1});
    CHECK(res.holds);
}

TEST_CASE("normalized matching, exhaustive") {
    CHECK(normalized_matching_bruteforce({3, 2}, 0));
    CHECK(normalized_matching_bruteforce({3, 2}, 1));
    CHECK(normalized_matching_bruteforce({2, 4}, 1));
    CHECK(normalized_matching_bruteforce({2, 6}, 2));
    CHECK_THROWS_AS(normalized_matching_bruteforce({3, 5}, 7), std::invalid_argument);
}

TEST_CASE("vertex sets") {
    GridShape s{3, 2};
    VertexSet vs = make_vertex_set(s, {{0, 0}, {1, 1}, {2, 1}});
    CHECK(vs.per_level_counts() == std::vector<long long>{1, 0, 1, 1, 0});
    CHECK_THROWS_AS(make_vertex_set(s, {{3, 0}}), std::invalid_argument);
}

TEST_CASE("point parsing") {
    GridShape s{4, 3};
    CHECK(parse_point(s, "1,0,3") == Point{1, 0, 3});
    CHECK_THROWS_AS(parse_point(s, "1,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(s, "1,0,4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(s, "1,x,3"), std::invalid_argument);
}

}  // TEST_SUITE

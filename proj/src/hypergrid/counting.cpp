#include "hypergrid/counting.hpp"

#include "hypergrid/rng.hpp"
#include "hypergrid/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hypergrid {

long max_count_cells() {
    long v = env_guard("HYPERGRID_MAX_COUNT", 36);
    return std::min(v, 64L);
}

namespace {

Int dfs_count(const GridShape& s, long max_size) {
    validate(s);
    Int cells = s.element_count();
    require(cells <= Int(max_count_cells()), "counting: shape exceeds the cell guard");
    auto pts = all_points(s);
    int np = (int)pts.size();
    std::vector<std::uint64_t> after(np, 0);
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j)
            if (comparable(pts[i], pts[j])) after[i] |= 1ull << j;

    long long count = 0;
    std::function<void(int, std::uint64_t, long)> rec = [&](int i, std::uint64_t forbidden,
                                                            long left) {
        if (i == np) {
            ++count;
            return;
        }
        rec(i + 1, forbidden, left);
        if (left > 0 && !((forbidden >> i) & 1)) rec(i + 1, forbidden | after[i], left - 1);
    };
    rec(0, 0, max_size < 0 ? (long)np : max_size);
    return Int((long)count);
}

// Non-increasing sequences of given length over [0..t], lex order.
std::vector<std::vector<int>> monotone_states(int t, int len) {
    std::vector<std::vector<int>> states;
    std::vector<int> cur(len);
    std::function<void(int, int)> rec = [&](int pos, int hi) {
        if (pos == len) {
            states.push_back(cur);
            return;
        }
        for (int h = hi; h >= 0; --h) {
            cur[pos] = h;
            rec(pos + 1, h);
        }
    };
    rec(0, t);
    return states;
}

}  // namespace

Int count_antichains_transfer(const GridShape& s) {
    validate(s);
    if (s.n == 1) return Int(s.t + 1);
    if (s.n == 2) {
        // Downsets as non-increasing height sequences h_1 >= ... >= h_t over
        // [0..t]; suffix sums give each column transition in O(t).
        std::vector<Int> ways((size_t)s.t + 1, Int(1));
        for (int col = 2; col <= s.t; ++col) {
            Int acc = 0;
            for (int h = s.t; h >= 0; --h) {
                acc += ways[(size_t)h];
                ways[(size_t)h] = acc;
            }
        }
        Int total = 0;
        for (auto& w : ways) total += w;
        return total;
    }
    require(s.n == 3, "count_antichains_transfer: n must be <= 3");
    require(s.t <= 6, "count_antichains_transfer: n = 3 capped at t = 6");
    // Layers indexed by the first coordinate; state = heights along the
    // second coordinate, non-increasing; successive states dominate pointwise.
    auto states = monotone_states(s.t, s.t);
    size_t ns = states.size();
    std::vector<Int> ways(ns, Int(1));
    for (int layer = 2; layer <= s.t; ++layer) {
        std::vector<Int> next(ns, Int(0));
        for (size_t a = 0; a < ns; ++a)
            for (size_t b = 0; b < ns; ++b) {
                bool dom = true;
                for (int i = 0; i < s.t; ++i)
                    if (states[b][i] > states[a][i]) {
                        dom = false;
                        break;
                    }
                if (dom) next[b] += ways[a];
            }
        ways = std::move(next);
    }
    Int total = 0;
    for (auto& w : ways) total += w;
    return total;
}

Int count_antichains_dfs(const GridShape& s) { return dfs_count(s, -1); }

Int count_antichains_exact(const GridShape& s) {
    validate(s);
    if (s.n <= 2 || (s.n == 3 && s.t <= 6)) return count_antichains_transfer(s);
    return count_antichains_dfs(s);
}

Int count_grid2(long t) {
    require(t >= 1, "count_grid2: t >= 1");
    return binom(2 * t, t);
}

Int count_macmahon(long t) {
    require(t >= 1, "count_macmahon: t >= 1");
    Rat prod(1);
    for (long i = 1; i <= t; ++i)
        for (long j = 1; j <= t; ++j)
            for (long k = 1; k <= t; ++k)
                prod *= make_rat(i + j + k - 1, i + j + k - 2);
    check(prod.get_den() == 1, "count_macmahon: product not integral");
    return prod.get_num();
}

Int count_antichains_upto(const GridShape& s, long max_size) {
    require(max_size >= 0, "count_antichains_upto: negative size");
    return dfs_count(s, max_size);
}

LowerBoundConstruction lower_bound_construction(const GridShape& s, long long samples,
                                                std::uint64_t seed) {
    validate(s);
    require(s.t >= 2 && s.n >= 2, "lower_bound_construction: need t,n >= 2");
    LowerBoundConstruction res;
    res.shape = s;
    auto profile = level_sizes(s);
    long m = s.mid();
    Int nm = profile.at(m), nm1 = profile.at(m + 1);
    res.k = nm1 / pow2(2 * (unsigned long)s.n);
    res.vacuous = res.k == 0;
    res.feasible = res.k <= Int(1000000L);
    if (res.feasible) {
        unsigned long k = res.k.get_ui();
        Int expo = nm - Int((long)k) * Int((long)s.n);
        check(expo >= 0, "lower_bound_construction: negative exponent");
        Int choices = binom_big(nm1, k);
        res.log2_value = log2_int(choices) + expo.get_d();
        if (expo <= Int(1000000L)) {
            res.value = choices * pow2(expo.get_ui());
            res.value_set = true;
        }
    }

    if (samples > 0) {
        Int cells = s.element_count();
        require(cells <= Int((long)enum_guard()), "lower_bound_construction: shape too large to sample");
        auto top = level_points(s, (int)m + 1);
        auto bottom = level_points(s, (int)m);
        unsigned long k = res.feasible ? res.k.get_ui() : 0;
        Rng rng(seed, 0);
        for (long long trial = 0; trial < samples; ++trial) {
            auto pool = top;
            rng.shuffle(pool);
            std::vector<Point> a(pool.begin(),
                                 pool.begin() + (long)std::min((size_t)k, pool.size()));
            std::vector<Point> both = a;
            for (auto& x : bottom) {
                bool shadowed = false;
                for (auto& y : a)
                    if (leq(x, y)) {
                        shadowed = true;
                        break;
                    }
                if (!shadowed && (rng.next() & 1)) both.push_back(x);
            }
            check(is_antichain(s, both), "lower_bound_construction: sampled set not independent");
        }
        res.independence_checked = true;
    }
    return res;
}

std::string LowerBoundConstruction::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"k\":\"" << int_str(k)
       << "\",\"vacuous\":" << (vacuous ? "true" : "false")
       << ",\"feasible\":" << (feasible ? "true" : "false") << ",\"log2_value\":" << log2_value;
    if (value_set) os << ",\"value\":\"" << int_str(value) << "\"";
    os << ",\"independence_checked\":" << (independence_checked ? "true" : "false") << "}";
    return os.str();
}

BoundReport bound_report(const GridShape& s, const Rat& c) {
    validate(s);
    BoundReport rep;
    rep.shape = s;
    rep.alpha = width(s);
    rep.trivial_lb = rep.alpha.get_d();
    double cn = c.get_d();
    double ln = std::log((double)s.n);
    rep.main_rhs = (1.0 + cn * ln * ln * ln / (double)s.n) * rep.alpha.get_d();

    bool dfs_ok = s.element_count() <= Int(max_count_cells());
    rep.exact_available = s.n <= 2 || (s.n == 3 && s.t <= 6) || dfs_ok;
    if (rep.exact_available) {
        rep.exact_count = count_antichains_exact(s);
        rep.log2_count = log2_int(rep.exact_count);
        rep.ratio = rep.log2_count / rep.alpha.get_d();
        rep.ramsey = rep.exact_count + 1;
    }
    if (s.t >= 2 && s.n >= 2) {
        auto lb = lower_bound_construction(s);
        rep.construction_feasible = lb.feasible;
        if (lb.feasible) rep.construction_log2 = lb.log2_value;
    }
    return rep;
}

std::string BoundReport::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"alpha\":\"" << int_str(alpha)
       << "\",\"exact_available\":" << (exact_available ? "true" : "false");
    if (exact_available)
        os << ",\"count\":\"" << int_str(exact_count) << "\",\"log2_count\":" << log2_count
           << ",\"ratio\":" << ratio << ",\"ramsey\":\"" << int_str(ramsey) << "\"";
    os << ",\"trivial_lb\":" << trivial_lb << ",\"main_rhs\":" << main_rhs;
    if (construction_feasible) os << ",\"construction_log2\":" << construction_log2;
    os << "}";
    return os.str();
}

std::string BoundReport::csv_header() { return "t,n,alpha,log2A,ratio,main_rhs,lower_bound"; }

std::string BoundReport::to_csv_row() const {
    std::ostringstream os;
    os << shape.t << "," << shape.n << "," << int_str(alpha) << ",";
    if (exact_available)
        os << log2_count << "," << ratio << ",";
    else
        os << ",,";
    os << main_rhs << ",";
    if (construction_feasible) os << construction_log2;
    return os.str();
}

SmallAntichainReport small_antichain_bound_sweep(const GridShape& s, long k) {
    require(k >= 1, "small_antichain_bound_sweep: k >= 1");
    SmallAntichainReport rep;
    rep.shape = s;
    rep.k = k;
    rep.alpha = width(s);
    Int q = rep.alpha / Int(k);
    rep.max_size = (long)q.get_si();
    rep.count = count_antichains_upto(s, rep.max_size);
    rep.log2_count = log2_int(rep.count);
    if (k >= 2)
        rep.implied_constant =
            rep.log2_count * (double)k / (std::log2((double)k) * rep.alpha.get_d());
    return rep;
}

std::string SmallAntichainReport::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"k\":" << k << ",\"alpha\":\""
       << int_str(alpha) << "\",\"max_size\":" << max_size << ",\"count\":\"" << int_str(count)
       << "\",\"log2_count\":" << log2_count << ",\"implied_constant\":" << implied_constant
       << "}";
    return os.str();
}

}  // namespace hypergrid

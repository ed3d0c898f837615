#include "hypergrid/chain_cover.hpp"

#include <algorithm>
#include <sstream>

namespace hypergrid {

namespace {

std::vector<int> orbit_signature(const CoverEdge& e) {
    std::vector<int> key;
    key.push_back(e.base[e.coord - 1]);
    for (std::size_t i = 0; i < e.base.size(); ++i)
        if ((int)i != e.coord - 1) key.push_back(e.base[i]);
    std::sort(key.begin() + 1, key.end());
    return key;
}

}  // namespace

FlowOracle::FlowOracle(const GridShape& s, FlowSource src) : ctx_(s), src_(src) {
    if (src == FlowSource::averaged)
        require(s.n <= 8, "exact f* averaging is guarded at n <= 8");
}

Rat FlowOracle::weight(const CoverEdge& e) const {
    if (src_ == FlowSource::structured) return ctx_.edge_weight(e);
    validate_edge(shape(), e);
    std::vector<int> key = orbit_signature(e);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Rat v = averaged_weight(ctx_, e);
    memo_.emplace(std::move(key), v);
    return v;
}

std::vector<Rat> FlowOracle::out_weights(const Point& x) const {
    if (src_ == FlowSource::structured) return ctx_.out_weights(x);
    require(in_shape(shape(), x), "point outside shape");
    std::vector<Rat> out(shape().n, Rat(0));
    for (int m = 1; m <= shape().n; ++m)
        if (x[m - 1] <= shape().t - 2) out[m - 1] = weight({x, m});
    return out;
}

std::string Chain::to_json() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < points[i].size(); ++j) {
            if (j) os << ',';
            os << points[i][j];
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

void validate_chain(const GridShape& s, const Chain& c) {
    require(!c.points.empty(), "empty chain");
    for (const Point& x : c.points) require(in_shape(s, x), "chain point outside shape");
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
        const Point& x = c.points[i];
        const Point& y = c.points[i + 1];
        int bumped = 0;
        for (int j = 0; j < s.n; ++j) {
            int d = y[j] - x[j];
            require(d == 0 || d == 1, "chain step is not a cover relation");
            bumped += d;
        }
        require(bumped == 1, "chain is not skipless");
    }
}

Rat chain_mass(const FlowOracle& fl, const Chain& c) {
    validate_chain(fl.shape(), c);
    Rat mass(1);
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
        const Point& x = c.points[i];
        const Point& y = c.points[i + 1];
        for (int j = 0; j < fl.shape().n; ++j)
            if (y[j] == x[j] + 1) {
                mass *= fl.weight({x, j + 1});
                break;
            }
    }
    return mass;
}

Rat chain_mass(const GridShape& s, const Chain& c, FlowSource src) {
    return chain_mass(FlowOracle(s, src), c);
}

Rat interval_mass(const FlowOracle& fl, const Point& x, const Point& y) {
    const GridShape& s = fl.shape();
    require(in_shape(s, x) && in_shape(s, y), "point outside shape");
    require(leq(x, y), "interval endpoints are incomparable");

    std::vector<int> dim(s.n);
    Int volume_check(1);
    for (int i = 0; i < s.n; ++i) {
        dim[i] = y[i] - x[i] + 1;
        volume_check *= dim[i];
    }
    require(volume_check <= Int((long)enum_guard()), "interval box too large");
    long long volume = volume_check.get_si();

    std::vector<long long> stride(s.n, 1);
    for (int i = s.n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dim[i + 1];

    std::vector<Rat> mass((std::size_t)volume, Rat(0));
    mass[0] = 1;
    Point z = x;
    for (long long idx = 0; idx < volume; ++idx) {
        if (mass[(std::size_t)idx] != 0) {
            for (int i = 0; i < s.n; ++i)
                if (z[i] < y[i])
                    mass[(std::size_t)(idx + stride[i])] +=
                        mass[(std::size_t)idx] * fl.weight({z, i + 1});
        }
        // advance the box odometer in step with idx
        for (int i = s.n - 1; i >= 0; --i) {
            if (z[i] < y[i]) {
                ++z[i];
                for (int j = i + 1; j < s.n; ++j) z[j] = x[j];
                break;
            }
        }
    }
    return mass[(std::size_t)volume - 1];
}

Rat interval_mass(const GridShape& s, const Point& x, const Point& y, FlowSource src) {
    return interval_mass(FlowOracle(s, src), x, y);
}

Chain sample_chain(const FlowOracle& fl, Rng& rng) {
    const GridShape& s = fl.shape();
    Chain c;
    Point x(s.n, 0);
    c.points.push_back(x);
    for (long r = 0; r < s.max_rank(); ++r) {
        std::vector<Rat> out = fl.out_weights(x);
        double u = rng.uniform();
        double cum = 0.0;
        int chosen = -1;
        for (int m = 0; m < s.n; ++m) {
            if (x[m] > s.t - 2) continue;
            chosen = m;
            cum += out[m].get_d();
            if (u < cum) break;
        }
        check(chosen >= 0, "no out-edge below the top level");
        ++x[chosen];
        c.points.push_back(x);
    }
    return c;
}

Chain sample_chain(const GridShape& s, std::uint64_t seed, FlowSource src) {
    FlowOracle fl(s, src);
    Rng rng(seed);
    return sample_chain(fl, rng);
}

Rat pair_probability(const FlowOracle& fl, const Point& x, const Point& y) {
    const Int& level = fl.context().prefix_level(fl.shape().n, rank_of(x));
    return interval_mass(fl, x, y) / Rat(level);
}

Rat pair_probability(const GridShape& s, const Point& x, const Point& y, FlowSource src) {
    return pair_probability(FlowOracle(s, src), x, y);
}

long long pair_guard() { return env_guard("HYPERGRID_MAX_PAIRS", 4000000); }

PairBoundReport pair_bound_check(const GridShape& s, long k, const Rat& w,
                                 double good_exponent) {
    validate(s);
    require(k >= 1, "pair bound needs k >= 1");
    require(s.element_count() * s.element_count() <= Int((long)pair_guard()),
            "too many pairs to sweep (raise HYPERGRID_MAX_PAIRS)");

    FlowOracle fl(s, FlowSource::averaged);
    LevelRange good = good_levels(s, good_exponent);
    Rat bound = Rat(factorial(k)) * rat_pow(w, k);

    PairBoundReport rep;
    rep.shape = s;
    rep.k = k;
    rep.w = w;
    rep.max_ratio = 0;

    Point x(s.n, 0);
    do {
        long rx = rank_of(x);
        if (!good.contains(rx)) continue;
        Point y(s.n, 0);
        do {
            long ry = rank_of(y);
            if (ry - rx < k || !good.contains(ry) || !leq(x, y)) continue;
            Rat phi = interval_mass(fl, x, y);
            ++rep.pairs_checked;
            Rat ratio = phi / bound;
            if (ratio > rep.max_ratio) rep.max_ratio = ratio;
            if (phi > bound)
                rep.violations.push_back("pair " + point_str(x) + " -> " + point_str(y) +
                                         " has phi " + rat_str(phi));
        } while (next_point(s, y));
    } while (next_point(s, x));

    rep.pass = rep.violations.empty();
    return rep;
}

std::string PairBoundReport::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"k\":" << k << ",\"w\":\"" << rat_str(w)
       << "\",\"pairs_checked\":" << pairs_checked << ",\"pass\":" << (pass ? "true" : "false")
       << ",\"max_ratio\":\"" << rat_str(max_ratio) << "\",\"violations\":" << violations.size()
       << "}";
    return os.str();
}

}  // namespace hypergrid

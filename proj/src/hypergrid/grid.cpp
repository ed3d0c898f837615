#include "hypergrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypergrid {

long rank_of(const Point& x) {
    long r = 0;
    for (int c : x) r += c;
    return r;
}

bool in_shape(const GridShape& s, const Point& x) {
    if ((int)x.size() != s.n) return false;
    for (int c : x)
        if (c < 0 || c >= s.t) return false;
    return true;
}

bool leq(const Point& x, const Point& y) {
    require(x.size() == y.size(), "points of different dimension");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}

bool comparable(const Point& x, const Point& y) { return leq(x, y) || leq(y, x); }

std::vector<Point> covers_up(const GridShape& s, const Point& x) {
    require(in_shape(s, x), "point outside shape");
    std::vector<Point> out;
    for (int i = 0; i < s.n; ++i) {
        if (x[i] + 1 < s.t) {
            Point y = x;
            ++y[i];
            out.push_back(y);
        }
    }
    return out;
}

std::string point_str(const Point& x) {
    std::ostringstream os;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i];
    }
    return os.str();
}

Point parse_point(const GridShape& s, const std::string& text) {
    Point x;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            require(false, "bad point coordinate '" + item + "'");
        }
        require(pos == item.size(), "bad point coordinate '" + item + "'");
        x.push_back(v);
    }
    require(in_shape(s, x), "point '" + text + "' is not in the shape");
    return x;
}

long long point_index(const GridShape& s, const Point& x) {
    require(in_shape(s, x), "point outside shape");
    require(s.n * std::log2((double)s.t) < 62.0, "shape too large to index");
    long long idx = 0;
    for (int i = 0; i < s.n; ++i) idx = idx * s.t + x[i];
    return idx;
}

Point point_at(const GridShape& s, long long index) {
    require(s.n * std::log2((double)s.t) < 62.0, "shape too large to index");
    Point x(s.n, 0);
    for (int i = s.n - 1; i >= 0; --i) {
        x[i] = int(index % s.t);
        index /= s.t;
    }
    require(index == 0, "point index out of range");
    return x;
}

bool next_point(const GridShape& s, Point& x) {
    for (int i = s.n - 1; i >= 0; --i) {
        if (x[i] + 1 < s.t) {
            ++x[i];
            std::fill(x.begin() + i + 1, x.end(), 0);
            return true;
        }
    }
    return false;
}

long long enum_guard() { return env_guard("HYPERGRID_MAX_ENUM", 1000000); }

std::vector<Point> all_points(const GridShape& s) {
    validate(s);
    require(s.element_count() <= Int((long)enum_guard()), "shape too large to enumerate");
    std::vector<Point> out;
    Point x(s.n, 0);
    do {
        out.push_back(x);
    } while (next_point(s, x));
    return out;
}

static void level_points_rec(const GridShape& s, long remaining, int coord, Point& x,
                             std::vector<Point>& out) {
    if (coord == s.n) {
        if (remaining == 0) out.push_back(x);
        return;
    }
    long slack = (long)(s.t - 1) * (s.n - coord - 1);
    for (int v = 0; v < s.t; ++v) {
        long rest = remaining - v;
        if (rest < 0) break;
        if (rest > slack) continue;
        x[coord] = v;
        level_points_rec(s, rest, coord + 1, x, out);
    }
    x[coord] = 0;
}

std::vector<Point> level_points(const GridShape& s, long r) {
    validate(s);
    require(0 <= r && r <= s.max_rank(), "level index out of range");
    LevelProfile p = level_sizes(s);
    require(p.at(r) <= Int((long)enum_guard()), "level too large to enumerate");
    std::vector<Point> out;
    Point x(s.n, 0);
    level_points_rec(s, r, 0, x, out);
    return out;
}

const Int& LevelProfile::at(long r) const {
    static const Int zero(0);
    if (r < 0 || r >= (long)sizes.size()) return zero;
    return sizes[r];
}

Int LevelProfile::total() const {
    Int s = 0;
    for (const Int& v : sizes) s += v;
    return s;
}

long LevelProfile::argmax() const {
    long best = 0;
    for (long i = 1; i < (long)sizes.size(); ++i)
        if (sizes[i] > sizes[best]) best = i;
    return best;
}

bool LevelProfile::is_symmetric() const {
    long k = (long)sizes.size();
    for (long i = 0; i < k / 2; ++i)
        if (sizes[i] != sizes[k - 1 - i]) return false;
    return true;
}

std::string LevelProfile::to_json() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) os << ',';
        os << '"' << sizes[i].get_str() << '"';
    }
    os << ']';
    return os.str();
}

LevelProfile level_sizes(const GridShape& s) {
    validate(s);
    std::vector<Int> cur{Int(1)};
    for (int step = 0; step < s.n; ++step) {
        std::vector<Int> nxt(cur.size() + s.t - 1, Int(0));
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (int v = 0; v < s.t; ++v) nxt[i + v] += cur[i];
        cur = std::move(nxt);
    }
    return LevelProfile{s, std::move(cur)};
}

bool is_log_concave(const std::vector<Int>& sizes) {
    for (std::size_t i = 1; i + 1 < sizes.size(); ++i)
        if (sizes[i] * sizes[i] < sizes[i - 1] * sizes[i + 1]) return false;
    return true;
}

Int width(const GridShape& s) { return level_sizes(s).width(); }

std::vector<long long> VertexSet::per_level_counts() const {
    std::vector<long long> counts(shape.level_count(), 0);
    for (const Point& x : members) ++counts[rank_of(x)];
    return counts;
}

VertexSet make_vertex_set(const GridShape& s, std::vector<Point> members) {
    validate(s);
    for (const Point& x : members) require(in_shape(s, x), "vertex set member outside shape");
    return VertexSet{s, std::move(members)};
}

Rat lym_weight(const GridShape& s, const std::vector<Point>& a) {
    LevelProfile p = level_sizes(s);
    std::vector<long long> counts(s.level_count(), 0);
    for (const Point& x : a) {
        require(in_shape(s, x), "vertex set member outside shape");
        ++counts[rank_of(x)];
    }
    Rat w(0);
    for (long i = 0; i < s.level_count(); ++i)
        if (counts[i] > 0) w += make_rat(Int((long)counts[i]), p.at(i));
    return w;
}

LevelRange good_levels(const GridShape& s, double exponent) {
    validate(s);
    double center = 0.5 * (double)s.max_rank();
    double threshold = (double)s.t * std::pow((double)s.n, exponent);
    long lo = (long)std::ceil(center - threshold);
    long hi = (long)std::floor(center + threshold);
    lo = std::max(lo, 0L);
    hi = std::min(hi, s.max_rank());
    return LevelRange{lo, hi, threshold};
}

bool is_good_rank(const GridShape& s, long r, double exponent) {
    return good_levels(s, exponent).contains(r);
}

bool is_normal_prefix(const GridShape& s, const Point& x, int m0, double constant,
                      double exponent) {
    require(in_shape(s, x), "point outside shape");
    require(1 <= m0 && m0 <= s.n, "prefix length out of range");
    long prefix = 0;
    for (int i = 0; i < m0; ++i) prefix += x[i];
    double dev = std::fabs((double)prefix - 0.5 * (double)(s.t - 1) * m0);
    return dev <= constant * (double)s.t * std::pow((double)m0, exponent);
}

TailCheckResult level_tail_check(const GridShape& s, long r) {
    validate(s);
    require(s.n >= 2, "tail check requires n >= 2");
    require(std::labs(r) > s.t, "tail check requires |r| > t");
    LevelProfile p = level_sizes(s);

    TailCheckResult res;
    res.r = r;
    long mr = s.max_rank();
    if (mr % 2 == 0) {
        res.levels = {mr / 2 - r};
    } else {
        res.levels = {(mr - 1) / 2 - r, (mr + 1) / 2 - r};
    }

    BigFloat expo = -BigFloat(r) * BigFloat(r) /
                    (BigFloat(2) * BigFloat(s.t) * BigFloat(s.t) * BigFloat(s.n - 1));
    BigFloat bound = big_of(ipow(s.t, s.n - 1)) * exp(expo);
    res.bound = bound.convert_to<double>();

    res.holds = true;
    for (long z : res.levels) {
        res.exact.push_back(p.at(z));
        if (big_of(p.at(z)) > bound) res.holds = false;
    }
    return res;
}

bool normalized_matching_bruteforce(const GridShape& s, long i) {
    validate(s);
    require(0 <= i && i < s.max_rank(), "level index out of range");
    LevelProfile p = level_sizes(s);
    require(p.at(i) <= 20, "lower level too large for exhaustive check");

    std::vector<Point> lo = level_points(s, i);
    std::vector<Point> hi = level_points(s, i + 1);
    long nl = (long)lo.size(), nh = (long)hi.size();

    // Bitmask of upper neighbours per lower point.
    std::size_t words = (std::size_t)((nh + 63) / 64);
    std::vector<std::vector<std::uint64_t>> nbr(nl, std::vector<std::uint64_t>(words, 0));
    for (long a = 0; a < nl; ++a) {
        for (long b = 0; b < nh; ++b) {
            long diff = 0;
            bool cover = true;
            for (int c = 0; c < s.n; ++c) {
                int d = hi[b][c] - lo[a][c];
                if (d < 0 || d > 1) {
                    cover = false;
                    break;
                }
                diff += d;
            }
            if (cover && diff == 1) nbr[a][(std::size_t)(b / 64)] |= 1ULL << (b % 64);
        }
    }

    std::vector<std::uint64_t> acc(words);
    for (std::uint64_t mask = 1; mask < (1ULL << nl); ++mask) {
        std::fill(acc.begin(), acc.end(), 0);
        long size = 0;
        for (long a = 0; a < nl; ++a) {
            if (mask & (1ULL << a)) {
                ++size;
                for (std::size_t w = 0; w < words; ++w) acc[w] |= nbr[a][w];
            }
        }
        long shadow = 0;
        for (std::size_t w = 0; w < words; ++w) shadow += __builtin_popcountll(acc[w]);
        // |N(X)| / N(i+1) >= |X| / N(i), cross-multiplied.
        if (shadow * nl < size * nh) return false;
    }
    return true;
}

}  // namespace hypergrid

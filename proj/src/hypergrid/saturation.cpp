#include "hypergrid/saturation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

namespace hypergrid {

long long comp_max_degree(const GridShape& s, const std::vector<Point>& a) {
    for (auto& x : a) require(in_shape(s, x), "comp_max_degree: point outside shape");
    long long best = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        long long deg = 0;
        for (size_t j = 0; j < a.size(); ++j)
            if (j != i && comparable(a[i], a[j])) ++deg;
        best = std::max(best, deg);
    }
    return best;
}

bool is_antichain(const GridShape& s, const std::vector<Point>& a) {
    return comp_max_degree(s, a) == 0;
}

namespace {

// Hopcroft-Karp maximum matching; adj holds right-neighbour lists in
// deterministic (lexicographic index) order.
struct Matcher {
    int nl, nr;
    const std::vector<std::vector<int>>& adj;
    std::vector<int> match_l, match_r, dist;

    Matcher(int nl_, int nr_, const std::vector<std::vector<int>>& adj_)
        : nl(nl_), nr(nr_), adj(adj_), match_l(nl_, -1), match_r(nr_, -1), dist(nl_) {}

    bool bfs() {
        std::queue<int> q;
        bool found = false;
        for (int u = 0; u < nl; ++u) {
            dist[u] = match_l[u] < 0 ? 0 : -1;
            if (match_l[u] < 0) q.push(u);
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w < 0) {
                    found = true;
                } else if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj[u]) {
            int w = match_r[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }

    int run() {
        int total = 0;
        while (bfs())
            for (int u = 0; u < nl; ++u)
                if (match_l[u] < 0 && dfs(u)) ++total;
        return total;
    }
};

bool chain_accepts(const std::vector<Point>& chain, const Point& z) {
    for (auto& p : chain)
        if (!comparable(p, z)) return false;
    return true;
}

void insert_by_rank(std::vector<Point>& chain, const Point& z) {
    auto it = std::lower_bound(chain.begin(), chain.end(), z,
                               [](const Point& p, const Point& q) { return rank_of(p) < rank_of(q); });
    chain.insert(it, z);
}

}  // namespace

ChainPartition uniform_chain_partition(const GridShape& s) {
    validate(s);
    Int total = s.element_count();
    require(total <= Int((long)enum_guard()), "uniform_chain_partition: shape too large");
    auto pts = all_points(s);
    int np = (int)pts.size();

    std::vector<std::vector<int>> adj(np);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j)
            if (rank_of(pts[i]) < rank_of(pts[j]) && leq(pts[i], pts[j])) adj[i].push_back(j);

    Matcher m(np, np, adj);
    int matched = m.run();

    ChainPartition part;
    part.shape = s;
    Int alpha = width(s);
    check(Int((long)(np - matched)) == alpha, "uniform_chain_partition: cover size != width");

    std::vector<char> is_successor(np, 0);
    for (int v = 0; v < np; ++v)
        if (m.match_r[v] >= 0) is_successor[v] = 1;
    for (int u = 0; u < np; ++u) {
        if (is_successor[u]) continue;
        std::vector<Point> chain;
        for (int cur = u; cur >= 0; cur = m.match_l[cur]) chain.push_back(pts[cur]);
        part.chains.push_back(std::move(chain));
    }

    part.min_length_bound = make_rat((long)np, 2 * (long)alpha.get_si()) - make_rat(1, 2);

    // Rebalance: move an endpoint of the longest chain into the shortest
    // compatible strictly-smaller chain until the length bound holds.
    auto too_short = [&]() {
        for (auto& c : part.chains)
            if (Rat((long)c.size()) < part.min_length_bound) return true;
        return false;
    };
    while (too_short()) {
        std::vector<size_t> order(part.chains.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        auto longer_first = [&](size_t x, size_t y) {
            if (part.chains[x].size() != part.chains[y].size())
                return part.chains[x].size() > part.chains[y].size();
            return part.chains[x] < part.chains[y];
        };
        std::sort(order.begin(), order.end(), longer_first);

        bool moved = false;
        for (size_t d : order) {
            auto& donor = part.chains[d];
            if (donor.size() < 2) break;
            std::vector<size_t> recv;
            for (size_t r = 0; r < part.chains.size(); ++r)
                if (r != d && part.chains[r].size() + 2 <= donor.size()) recv.push_back(r);
            std::sort(recv.begin(), recv.end(), [&](size_t x, size_t y) {
                if (part.chains[x].size() != part.chains[y].size())
                    return part.chains[x].size() < part.chains[y].size();
                return part.chains[x] < part.chains[y];
            });
            for (size_t r : recv) {
                if (Rat((long)part.chains[r].size()) >= part.min_length_bound) continue;
                for (int side = 0; side < 2 && !moved; ++side) {
                    Point z = side == 0 ? donor.front() : donor.back();
                    if (!chain_accepts(part.chains[r], z)) continue;
                    if (side == 0)
                        donor.erase(donor.begin());
                    else
                        donor.pop_back();
                    insert_by_rank(part.chains[r], z);
                    moved = true;
                }
                if (moved) break;
            }
            if (moved) break;
        }
        if (!moved) break;
    }
    part.bound_met = !too_short();
    return part;
}

std::string ChainPartition::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"chains\":[";
    for (size_t i = 0; i < chains.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (size_t j = 0; j < chains[i].size(); ++j)
            os << (j ? "," : "") << "\"" << point_str(chains[i][j]) << "\"";
        os << "]";
    }
    os << "],\"min_length_bound\":\"" << rat_str(min_length_bound) << "\",\"bound_met\":"
       << (bound_met ? "true" : "false") << "}";
    return os.str();
}

Point Rectangle::combined(long i, long j) const {
    Point p = row_chain[(size_t)i];
    const Point& q = col_chain[(size_t)j];
    p.insert(p.end(), q.begin(), q.end());
    return p;
}

namespace {

// Split every chain longer than hi into near-equal pieces; verify every piece
// length lands in [lo, hi].
std::vector<std::vector<Point>> subdivide(const std::vector<std::vector<Point>>& chains,
                                          const Rat& lo, const Rat& hi) {
    std::vector<std::vector<Point>> out;
    for (auto& c : chains) {
        long len = (long)c.size();
        long q = 1;
        while (Rat(len) > Rat(q) * hi) ++q;
        long base = len / q, extra = len % q;
        size_t pos = 0;
        for (long piece = 0; piece < q; ++piece) {
            long sz = base + (piece < extra ? 1 : 0);
            check(Rat(sz) >= lo && Rat(sz) <= hi, "rectangle_partition: piece size out of range");
            out.emplace_back(c.begin() + (long)pos, c.begin() + (long)pos + sz);
            pos += (size_t)sz;
        }
        check(pos == c.size(), "rectangle_partition: subdivision lost points");
    }
    return out;
}

}  // namespace

RectanglePartition rectangle_partition(const GridShape& s, int n1_override) {
    validate(s);
    require(s.n >= 2, "rectangle_partition: need n >= 2");
    int n1 = n1_override > 0 ? n1_override : s.n / 2;
    require(n1 >= 1 && n1 <= s.n - 1, "rectangle_partition: bad split");
    int n2 = s.n - n1;

    RectanglePartition part;
    part.shape = s;
    part.n1 = n1;
    part.n2 = n2;

    GridShape s1{s.t, n1}, s2{s.t, n2};
    auto split_factor = [](const GridShape& f) {
        auto cover = uniform_chain_partition(f);
        check(cover.bound_met, "rectangle_partition: factor cover misses length bound");
        long w = (long)width(f).get_si();
        Rat hi = make_rat((long)f.element_count().get_si(), w);
        Rat lo = hi / 2 - make_rat(1, 2);
        return subdivide(cover.chains, lo, hi);
    };
    auto rows = split_factor(s1);
    auto cols = split_factor(s2);

    long max_side = 0;
    for (auto& r : rows)
        for (auto& c : cols) {
            Rectangle rect;
            rect.row_chain = r;
            rect.col_chain = c;
            max_side = std::max({max_side, rect.a(), rect.b()});
            part.rectangles.push_back(std::move(rect));
        }
    part.u = 3 * max_side;

    // Coverage and disjointness over the whole grid, then the product-order
    // isomorphism inside every rectangle.
    std::map<Point, int> seen;
    for (auto& rect : part.rectangles)
        for (long i = 0; i < rect.a(); ++i)
            for (long j = 0; j < rect.b(); ++j) {
                Point p = rect.combined(i, j);
                check(in_shape(s, p), "rectangle_partition: point outside grid");
                check(++seen[p] == 1, "rectangle_partition: rectangles overlap");
            }
    check(Int((long)seen.size()) == s.element_count(), "rectangle_partition: coverage gap");
    for (auto& rect : part.rectangles)
        for (long i = 0; i < rect.a(); ++i)
            for (long j = 0; j < rect.b(); ++j)
                for (long k = 0; k < rect.a(); ++k)
                    for (long l = 0; l < rect.b(); ++l) {
                        bool grid_leq = i <= k && j <= l;
                        bool poset_leq = leq(rect.combined(i, j), rect.combined(k, l));
                        check(grid_leq == poset_leq, "rectangle_partition: not order-isomorphic");
                    }
    return part;
}

std::string RectanglePartition::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"n1\":" << n1 << ",\"n2\":" << n2
       << ",\"count\":" << rectangles.size() << ",\"u\":" << u << ",\"sides\":[";
    for (size_t i = 0; i < rectangles.size(); ++i)
        os << (i ? "," : "") << "[" << rectangles[i].a() << "," << rectangles[i].b() << "]";
    os << "]}";
    return os.str();
}

Int rectangle_antichain_count(long a, long b) {
    require(a >= 0 && b >= 0, "rectangle_antichain_count: negative side");
    return binom(a + b, a);
}

RectangleBoundReport rectangle_bound_check(long a, long b, long u, double beta) {
    require(a >= 1 && b >= 1 && u >= 1, "rectangle_bound_check: bad sides");
    require(3 * a <= u && 3 * b <= u, "rectangle_bound_check: sides exceed u/3");
    require(beta >= 0.0 && beta <= 1.0 / 3.0, "rectangle_bound_check: beta outside [0,1/3]");

    RectangleBoundReport rep;
    rep.a = a;
    rep.b = b;
    rep.u = u;
    rep.beta = beta;
    rep.count = rectangle_antichain_count(a, b);
    rep.four_u = pow2(2 * (unsigned long)u);
    rep.count_ok = rep.count <= rep.four_u;

    rep.size = (long)std::floor(beta * (double)u);
    rep.size_count = binom(a, rep.size) * binom(b, rep.size);
    if (rep.size == 0) {
        rep.size_bound = 1.0;
        rep.size_ok = rep.size_count <= Int(1);
    } else {
        BigFloat expo = BigFloat(4) * (log(BigFloat(1) / BigFloat(beta)) / log(BigFloat(2))) *
                        BigFloat(beta) * BigFloat((long)u);
        BigFloat bound = pow(BigFloat(2), expo);
        rep.size_bound = (double)bound;
        rep.size_ok = big_of(rep.size_count) <= bound;
    }
    rep.pass = rep.count_ok && rep.size_ok;
    return rep;
}

RectSatResult check_rectangle_saturation(int t, const std::vector<Point>& a) {
    GridShape s{t, 2};
    validate(s);
    require((long)a.size() > (long)t, "check_rectangle_saturation: need |A| > t");
    for (auto& x : a) require(in_shape(s, x), "check_rectangle_saturation: point outside [t]^2");

    RectSatResult res;
    res.delta = comp_max_degree(s, a);
    if ((long)a.size() >= 16L * t) {
        res.proof_chain = true;
        res.k = (long)a.size() / (16L * t);
        res.s = (t + res.k - 1) / res.k;
        // Diagonal block classes: block (i,j) has k*i <= x(1) < k*(i+1) and
        // likewise for x(2); class index is j - i.
        std::map<long, long long> class_mass;
        std::map<std::pair<long, long>, long long> block_mass;
        for (auto& x : a) {
            long i = x[0] / res.k, j = x[1] / res.k;
            class_mass[j - i] += 1;
            block_mass[{i, j}] += 1;
        }
        long best = 0;
        long long best_mass = -1;
        for (auto& [c, massv] : class_mass)
            if (massv > best_mass) {
                best_mass = massv;
                best = c;
            }
        res.best_class = best;
        res.class_size = best_mass;
        long long min_block = std::numeric_limits<long long>::max();
        long occupied = 0;
        for (auto& [ij, massv] : block_mass)
            if (ij.second - ij.first == best) {
                ++occupied;
                min_block = std::min(min_block, massv);
            }
        check(occupied >= 2, "check_rectangle_saturation: heaviest class in one block");
        res.witness_external = res.class_size - min_block;
        check(2 * res.witness_external >= res.k * res.k,
              "check_rectangle_saturation: witness degree below k^2/2");
        check(res.delta >= res.witness_external,
              "check_rectangle_saturation: direct degree below witness");
        check(2 * res.delta >= res.k * res.k, "check_rectangle_saturation: bound fails");
    } else {
        res.proof_chain = false;
        res.k = 1;
        check(res.delta >= 1, "check_rectangle_saturation: |A| > t but antichain");
    }
    res.pass = true;
    return res;
}

StrongSatResult check_strong_saturation(const GridShape& s, const std::vector<Point>& a, long k,
                                        const Rat& delta_weight, const Rat& w,
                                        double good_exponent) {
    validate(s);
    require(k >= 1, "check_strong_saturation: need k >= 1");
    require(delta_weight > 0, "check_strong_saturation: need delta > 0");
    require(w > 0, "check_strong_saturation: need W > 0");
    auto good = good_levels(s, good_exponent);
    for (auto& x : a)
        require(in_shape(s, x) && good.contains(rank_of(x)),
                "check_strong_saturation: point outside good levels");

    StrongSatResult res;
    res.weight = lym_weight(s, a);
    require(res.weight >= Rat(k) + delta_weight, "check_strong_saturation: weight below k + delta");
    res.delta = comp_max_degree(s, a);
    res.bound = delta_weight / (rat_pow(w, (unsigned long)k) * Rat(factorial((unsigned long)k)) *
                                (Rat(k) + delta_weight));
    res.holds = Rat((long)res.delta) >= res.bound;
    return res;
}

WeakSatResult check_weak_saturation(const GridShape& s, const std::vector<Point>& a) {
    validate(s);
    Int alpha = width(s);
    require(Int((long)a.size()) > alpha, "check_weak_saturation: need |A| > width");
    for (auto& x : a) require(in_shape(s, x), "check_weak_saturation: point outside shape");

    WeakSatResult res;
    res.delta = comp_max_degree(s, a);
    check(res.delta >= 1, "check_weak_saturation: |A| > width but antichain");
    res.ratio = make_rat((long)a.size(), (long)alpha.get_si());
    Rat inv = Rat(alpha) / Rat((long)a.size());
    res.scaled = Rat((long)res.delta) * inv * inv;
    return res;
}

}  // namespace hypergrid

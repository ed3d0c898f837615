#include "hypergrid/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace hypergrid {

namespace {

using cplx = std::complex<double>;

// a0 = sum p^j, a1 = sum j p^j, a2 = sum j^2 p^j over j < t.
void power_sums(int t, double p, double& a0, double& a1, double& a2) {
    a0 = a1 = a2 = 0;
    double pj = 1.0;
    for (int j = 0; j < t; ++j) {
        a0 += pj;
        a1 += j * pj;
        a2 += (double)j * j * pj;
        pj *= p;
    }
}

double tilt_mean(int t, double p) {
    double a0, a1, a2;
    power_sums(t, p, a0, a1, a2);
    return a1 / a0;
}

cplx pow_n(cplx base, long e) {
    cplx acc(1.0, 0.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

struct PanelSum {
    cplx val{0.0, 0.0};
    double err = 0;
};

template <class F>
void simpson_rec(const F& g, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
                 double eps, int depth, PanelSum& out) {
    double mid = 0.5 * (a + b);
    double lm = 0.5 * (a + mid), rm = 0.5 * (mid + b);
    cplx flm = g(lm), frm = g(rm);
    cplx left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    cplx right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    cplx s2 = left + right;
    double delta = std::abs(s2 - whole);
    if (depth <= 0 || delta <= 15.0 * eps) {
        out.val += s2 + (s2 - whole) / 15.0;
        out.err += delta / 15.0;
        return;
    }
    simpson_rec(g, a, mid, fa, flm, fm, left, 0.5 * eps, depth - 1, out);
    simpson_rec(g, mid, b, fm, frm, fb, right, 0.5 * eps, depth - 1, out);
}

// Adaptive Simpson over uniform seed panels; the integrand peak sits at the
// panel boundary y = 0, so the seed grid always samples it.
template <class F>
PanelSum integrate(const F& g, double a, double b, int panels, double tol) {
    PanelSum out;
    double w = (b - a) / panels;
    double eps = tol / panels;
    for (int i = 0; i < panels; ++i) {
        double x0 = a + i * w, x1 = a + (i + 1) * w, xm = 0.5 * (x0 + x1);
        cplx f0 = g(x0), f1 = g(x1), fm = g(xm);
        cplx whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        simpson_rec(g, x0, x1, f0, fm, f1, whole, eps, 48, out);
    }
    return out;
}

}  // namespace

TiltedModel solve_tilt(const GridShape& s, long k) {
    validate(s);
    require(k >= 0, "tilt target level must be nonnegative");
    require(k < s.max_rank(), "tilt target at the top boundary is out of solver range");
    TiltedModel m;
    m.shape = s;
    m.k = k;
    m.q = make_rat((long)(s.t - 1) * s.n - 2 * k, 2);
    const double target = (double)k / (double)s.n;
    if (k == 0) {
        m.p = 0.0;
    } else if (2 * k == s.max_rank()) {
        m.p = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        while (tilt_mean(s.t, hi) < target) {
            hi *= 2.0;
            check(hi < 1e300, "tilt bracket blew up");
        }
        for (int i = 0; i < 40; ++i) {
            double mid = 0.5 * (lo + hi);
            if (tilt_mean(s.t, mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        double p = 0.5 * (lo + hi);
        for (int i = 0; i < 60; ++i) {
            double a0, a1, a2;
            power_sums(s.t, p, a0, a1, a2);
            double mu = a1 / a0;
            if (mu < target)
                lo = std::max(lo, p);
            else
                hi = std::min(hi, p);
            double dmu = (a2 * a0 - a1 * a1) / (p * a0 * a0);
            double next = p - (mu - target) / dmu;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - p) <= 1e-15 * p) {
                p = next;
                break;
            }
            p = next;
        }
        m.p = p;
    }
    double a0, a1, a2;
    power_sums(s.t, m.p, a0, a1, a2);
    m.alpha_p = a0;
    m.mu_p = a1 / a0;
    check(std::abs(m.mu_p - target) <= 1e-12 * std::max(1.0, target),
          "tilt solver residual too large");
    return m;
}

std::complex<double> char_fn(const TiltedModel& m, double y) {
    const double shift = (double)m.k / (double)m.shape.n;
    cplx acc(0.0, 0.0);
    double pj = 1.0;
    for (int j = 0; j < m.shape.t; ++j) {
        acc += pj * std::polar(1.0, y * ((double)j - shift));
        pj *= m.p;
    }
    return acc / m.alpha_p;
}

DensityEval density(const TiltedModel& m, double x, int order, double tol) {
    require(order >= 0 && order <= 2, "density order must be 0, 1, or 2");
    require(tol > 0, "density tolerance must be positive");
    const long n = m.shape.n;
    auto g = [&](double y) {
        cplx v = std::exp(cplx(0.0, -x * y)) * pow_n(char_fn(m, y), n);
        if (order == 1)
            v *= cplx(0.0, -y);
        else if (order == 2)
            v *= -y * y;
        return v;
    };
    PanelSum s = integrate(g, -kPi, kPi, 64, tol);
    cplx total = s.val / (2.0 * kPi);
    double im = std::abs(total.imag());
    check(im < 1e-10, "density imaginary residue too large");
    DensityEval ev;
    ev.x = x;
    ev.order = order;
    ev.value = total.real();
    ev.abs_error = s.err / (2.0 * kPi) + im;
    return ev;
}

namespace {

struct CplxBig {
    BigFloat re, im;
};

CplxBig cmul(const CplxBig& a, const CplxBig& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CplxBig cpow(CplxBig base, long e) {
    CplxBig acc{BigFloat(1), BigFloat(0)};
    while (e > 0) {
        if (e & 1) acc = cmul(acc, base);
        base = cmul(base, base);
        e >>= 1;
    }
    return acc;
}

}  // namespace

BridgeReport density_bridge_check(const GridShape& s, long k, double rel_tol) {
    TiltedModel m = solve_tilt(s, k);
    const long levels = s.max_rank() + 1;
    const BigFloat pi_b = atan(BigFloat(1)) * 4;
    const BigFloat p = BigFloat(m.p);
    LevelProfile prof = level_sizes(s);

    // Strip the per-coordinate centering: phi(y)^n e^{-i(s-k)y} = e^{-isy} G(y)
    // with G(y) = alpha^{-n} (sum_j p^j e^{ijy})^n, so f(s-k) is the
    // frequency-s coefficient (1/M) sum_m e^{-is y_m} G(y_m), exact for
    // M = levels uniform nodes.
    BigFloat alpha(0);
    {
        BigFloat pj(1);
        for (int j = 0; j < s.t; ++j) {
            alpha += pj;
            pj *= p;
        }
    }
    const BigFloat alpha_n = pow(alpha, (int)s.n);
    std::vector<CplxBig> gnode((std::size_t)levels);
    std::vector<CplxBig> wnode((std::size_t)levels);  // e^{-i y_m}
    for (long idx = 0; idx < levels; ++idx) {
        BigFloat y = pi_b * 2 * idx / levels;
        CplxBig base{BigFloat(0), BigFloat(0)};
        BigFloat pj(1);
        for (int j = 0; j < s.t; ++j) {
            base.re += pj * cos(y * j);
            base.im += pj * sin(y * j);
            pj *= p;
        }
        gnode[(std::size_t)idx] = cpow(base, s.n);
        wnode[(std::size_t)idx] = {cos(y), -sin(y)};
    }
    std::vector<CplxBig> acc((std::size_t)levels, CplxBig{BigFloat(0), BigFloat(0)});
    for (long idx = 0; idx < levels; ++idx) {
        CplxBig cur{BigFloat(1), BigFloat(0)};
        for (long sv = 0; sv < levels; ++sv) {
            CplxBig term = cmul(cur, gnode[(std::size_t)idx]);
            acc[(std::size_t)sv].re += term.re;
            acc[(std::size_t)sv].im += term.im;
            cur = cmul(cur, wnode[(std::size_t)idx]);
        }
    }

    BridgeReport rep;
    rep.shape = s;
    rep.k = k;
    rep.p = m.p;
    rep.levels = levels;
    BigFloat max_rel(0), max_abs(0), total(0);
    BigFloat ps(1);  // p^s
    const BigFloat denom = alpha_n * levels;
    for (long sv = 0; sv < levels; ++sv) {
        BigFloat lhs = acc[(std::size_t)sv].re / denom;
        max_abs = std::max(max_abs, BigFloat(abs(acc[(std::size_t)sv].im / denom)));
        BigFloat rhs = ps * big_of(prof.at(sv)) / alpha_n;
        total += lhs;
        if (rhs > 0)
            max_rel = std::max(max_rel, BigFloat(abs(lhs - rhs) / rhs));
        else
            max_abs = std::max(max_abs, BigFloat(abs(lhs)));
        ps *= p;
    }
    rep.max_rel_err = max_rel.convert_to<double>();
    rep.max_abs_err = max_abs.convert_to<double>();
    rep.sum_err = BigFloat(abs(total - 1)).convert_to<double>();
    rep.pass = rep.max_rel_err <= rel_tol && rep.max_abs_err <= rel_tol && rep.sum_err <= 1e-9;
    return rep;
}

std::string BridgeReport::to_json() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"k\":" << k << ",\"p\":" << p
       << ",\"levels\":" << levels << ",\"max_rel_err\":" << max_rel_err
       << ",\"max_abs_err\":" << max_abs_err << ",\"sum_err\":" << sum_err
       << ",\"pass\":" << (pass ? "true" : "false") << "}";
    return os.str();
}

LambdaRatioResult lambda_ratio(const GridShape& s, long k, ProfileChoice which) {
    validate(s);
    const double band = (double)s.t * std::pow((double)s.n, 2.0 / 3.0);
    require(std::abs((double)(s.t - 1) * s.n / 2.0 - (double)k) <= band,
            "level is outside the central window");
    GridShape ps = s;
    if (which == ProfileChoice::factor) {
        require(s.n >= 2, "factor profile needs n >= 2");
        ps = GridShape{s.t, s.n - 1};
    }
    LevelProfile prof = level_sizes(ps);
    LambdaRatioResult r;
    r.shape = s;
    r.k = k;
    r.which = which;
    r.lo = std::max(0L, k - s.t + 1);
    r.hi = std::min(ps.max_rank(), k + 1);
    require(r.lo <= r.hi, "lambda window is empty");
    r.clamped = r.lo != k - s.t + 1 || r.hi != k + 1;
    r.n_min = prof.at(r.lo);
    for (long z = r.lo; z <= r.hi; ++z) r.n_min = std::min(r.n_min, prof.at(z));
    std::map<long, std::pair<Int, Int>> by_sum;  // z1+z2 -> (max product, min product)
    for (long z1 = r.lo; z1 <= r.hi; ++z1)
        for (long z2 = z1; z2 <= r.hi; ++z2) {
            Int prod = prof.at(z1) * prof.at(z2);
            auto [it, fresh] = by_sum.try_emplace(z1 + z2, prod, prod);
            if (!fresh) {
                it->second.first = std::max(it->second.first, prod);
                it->second.second = std::min(it->second.second, prod);
            }
        }
    r.lambda = 0;
    for (const auto& [sum, mm] : by_sum) r.lambda = std::max(r.lambda, Int(mm.first - mm.second));
    r.ratio = make_rat(r.lambda, r.n_min * r.n_min);
    return r;
}

std::string LambdaRatioResult::to_json() const {
    std::ostringstream os;
    os << "{\"shape\":\"" << shape_str(shape) << "\",\"k\":" << k << ",\"profile\":\""
       << (which == ProfileChoice::factor ? "factor" : "full") << "\",\"lo\":" << lo
       << ",\"hi\":" << hi << ",\"clamped\":" << (clamped ? "true" : "false") << ",\"lambda\":\""
       << int_str(lambda) << "\",\"n_min\":\"" << int_str(n_min) << "\",\"ratio\":\""
       << rat_str(ratio) << "\"}";
    return os.str();
}

namespace {

// Scan gap(y) = bound - quantity over {from + i*step} up to `to` (endpoint
// included); violations beyond roundoff flip `holds`.
template <class F>
ClaimCheck scan_claim(double from, double to, double step, const F& gap) {
    ClaimCheck c;
    bool first = true;
    for (double y = from;; y += step) {
        bool last = y >= to - 1e-15;
        if (last) y = to;
        double gp = gap(y);
        ++c.points;
        if (first || gp < c.worst_gap) {
            c.worst_gap = gp;
            c.worst_y = y;
            first = false;
        }
        if (last) break;
    }
    c.holds = c.worst_gap >= -1e-12;
    return c;
}

}  // namespace

AppendixReport appendix_inequality_checks(const TiltedModel& m, double grid_step) {
    require(grid_step > 0, "grid step must be positive");
    AppendixReport rep;
    rep.t = m.shape.t;
    rep.p = m.p;
    const double t = m.shape.t;
    const double p = m.p;
    auto absphi = [&](double y) { return std::abs(char_fn(m, y)); };

    rep.decay = scan_claim(0.0, 2.26 / t, grid_step, [&](double y) {
        return (1.0 - y * y * t * t / 48000.0) - absphi(y);
    });
    const double c2 = 4.0 * (1.0 + p * p) / (kPi * kPi);
    rep.cosine = scan_claim(0.0, kPi / 2, grid_step, [&](double y) {
        return (1.0 + p * p - 2.0 * p * std::cos(y)) - c2 * y * y;
    });
    rep.mid_tail = scan_claim(grid_step, kPi / 2, grid_step,
                              [&](double y) { return 2.25 / (y * t) - absphi(y); });
    rep.far_tail =
        scan_claim(kPi / 2, kPi, grid_step, [&](double y) { return 1.5 / t - absphi(y); });
    rep.pass = rep.decay.holds && rep.cosine.holds && rep.mid_tail.holds && rep.far_tail.holds;
    return rep;
}

namespace {

std::string claim_json(const char* name, const ClaimCheck& c) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "\"" << name << "\":{\"holds\":" << (c.holds ? "true" : "false")
       << ",\"points\":" << c.points << ",\"worst_gap\":" << c.worst_gap
       << ",\"worst_y\":" << c.worst_y << "}";
    return os.str();
}

}  // namespace

std::string AppendixReport::to_json() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "{\"t\":" << t << ",\"p\":" << p << "," << claim_json("decay", decay) << ","
       << claim_json("cosine", cosine) << "," << claim_json("mid_tail", mid_tail) << ","
       << claim_json("far_tail", far_tail) << ",\"pass\":" << (pass ? "true" : "false") << "}";
    return os.str();
}

DerivativeSweep derivative_norm_sweep(const std::vector<int>& ts, const std::vector<long>& ns,
                                      double tol) {
    DerivativeSweep sw;
    for (int t : ts) {
        for (long n : ns) {
            require((long)(t - 1) * n % 2 == 0, "centered sweep needs (t-1)n even");
            GridShape s{t, (int)n};
            validate(s);
            TiltedModel m = solve_tilt(s, (long)(t - 1) * n / 2);
            double n1 = 0, n2 = 0;
            auto probe = [&](double x) {
                n1 = std::max(n1, std::abs(density(m, x, 1, tol).value));
                n2 = std::max(n2, std::abs(density(m, x, 2, tol).value));
            };
            double step = (double)t / 100.0;
            for (long i = -200; i <= 200; ++i) probe((double)i * step);
            for (double x = 2.5 * t; x <= 10.0 * t + 1e-9; x += 0.5 * t) {
                probe(x);
                probe(-x);
            }
            DerivativeRow row;
            row.t = t;
            row.n = n;
            row.norm1 = n1;
            row.norm2 = n2;
            row.scaled1 = n1 * t * t * (double)n;
            row.scaled2 = n2 * t * t * t * std::pow((double)n, 1.5);
            sw.rows.push_back(row);
        }
    }
    return sw;
}

std::string DerivativeSweep::to_csv() const {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "t,n,norm1,norm2,scaled1,scaled2\n";
    for (const DerivativeRow& r : rows)
        os << r.t << "," << r.n << "," << r.norm1 << "," << r.norm2 << "," << r.scaled1 << ","
           << r.scaled2 << "\n";
    return os.str();
}

}  // namespace hypergrid

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "eiszero/zeros.hpp"

namespace eiszero {

SignChangeCount count_sign_changes(std::span<const SignedValue> values)
{
    SignChangeCount out;
    int prev = 0;
    for (const auto& v : values) {
        const int s = v.sign();
        if (s == 0) {
            ++out.uncertain;
            continue;
        }
        if (prev != 0 && s != prev)
            ++out.changes;
        prev = s;
    }
    return out;
}

SignedValue certified_value(const SignFunction& f, double t)
{
    SignedValue v = f(t, Precision::Standard);
    if (v.sign() == 0)
        v = f(t, Precision::Extended);
    return v;
}

std::vector<SignedValue> evaluate_signs_serial(const SignFunction& f, std::span<const double> points)
{
    std::vector<SignedValue> out(points.size());
    for (size_t i = 0; i < points.size(); ++i)
        out[i] = certified_value(f, points[i]);
    return out;
}

std::vector<SignedValue> evaluate_signs_parallel(const SignFunction& f, std::span<const double> points)
{
    std::vector<SignedValue> out(points.size());
    std::exception_ptr error;
    const long long n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
        try {
            out[i] = certified_value(f, points[i]);
        } catch (...) {
#pragma omp critical(eiszero_sign_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

SignChangeCount count_sign_changes(const SignFunction& f, std::span<const double> points, bool strict)
{
    for (size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw std::invalid_argument("count_sign_changes: points must be strictly increasing");
    const auto values = evaluate_signs_serial(f, points);
    SignChangeCount out = count_sign_changes(values);
    if (strict && out.uncertain > 0) {
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i].sign() == 0) {
                std::ostringstream msg;
                msg << "sign stays uncertain at t = " << points[i] << " (value " << values[i].value << ", error "
                    << values[i].error << ")";
                throw CertificationError(msg.str());
            }
        }
    }
    return out;
}

ZeroLocation bisect(const SignFunction& f, double lo, double hi, int sign_lo, int sign_hi, double tol)
{
    if (sign_lo * sign_hi >= 0)
        throw std::invalid_argument("bisect: endpoints need opposite signs");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            break;
        const int s = certified_value(f, mid).sign();
        if (s == 0) {
            // a zero close to mid: certify a quarter width to either side instead
            const double q = 0.25 * (hi - lo);
            const double a = mid - q, b = mid + q;
            const int sa = certified_value(f, a).sign(), sb = certified_value(f, b).sign();
            bool moved = false;
            if (sa == sign_lo) {
                lo = a;
                moved = true;
            } else if (sa == sign_hi) {
                hi = a;
                moved = true;
            }
            if (sb == sign_hi && b < hi) {
                hi = b;
                moved = true;
            }
            if (!moved)
                break;  // the bracket is as narrow as the arithmetic can certify
            continue;
        }
        if (s == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi, 0.5 * (lo + hi), sign_lo, sign_hi};
}

namespace {

// Points must be sorted and inside (t_lo, t_hi). Optional points are kept only when their sign certifies.
BoundaryScan scan_interval(const SignFunction& f, const std::vector<double>& points, const std::vector<double>& optional,
                           double t_lo, double t_hi, bool parallel)
{
    auto values = parallel ? evaluate_signs_parallel(f, points) : evaluate_signs_serial(f, points);
    std::vector<std::pair<double, int>> signs;
    signs.reserve(points.size() + optional.size());
    for (size_t i = 0; i < points.size(); ++i) {
        if (values[i].sign() != 0) {
            signs.emplace_back(points[i], values[i].sign());
            continue;
        }
        // a zero on the grid point: replace it by two certified neighbours
        const double left = i > 0 ? points[i - 1] : t_lo;
        const double right = i + 1 < points.size() ? points[i + 1] : std::min(t_hi, 2 * points[i] - left);
        const double d = 0.25 * std::min(points[i] - left, right - points[i]);
        const SignedValue a = certified_value(f, points[i] - d), b = certified_value(f, points[i] + d);
        if (a.sign() == 0 || b.sign() == 0) {
            std::ostringstream msg;
            msg << "sign stays uncertain at t = " << points[i] << " (value " << values[i].value << ", error "
                << values[i].error << ")";
            throw CertificationError(msg.str());
        }
        signs.emplace_back(points[i] - d, a.sign());
        signs.emplace_back(points[i] + d, b.sign());
    }
    for (double t : optional) {
        const int s = certified_value(f, t).sign();
        if (s != 0)
            signs.emplace_back(t, s);
    }
    std::sort(signs.begin(), signs.end());

    BoundaryScan out;
    out.points = static_cast<int>(signs.size());
    for (size_t i = 1; i < signs.size(); ++i) {
        if (signs[i].second == signs[i - 1].second)
            continue;
        ZeroLocation z = bisect(f, signs[i - 1].first, signs[i].first, signs[i - 1].second, signs[i].second);
        if (z.t - t_lo < 1e-9 || t_hi - z.t < 1e-9)
            out.endpoint_roots.push_back(z);
        else
            out.zeros.push_back(z);
    }
    out.count = static_cast<int>(out.zeros.size());
    return out;
}

std::vector<double> sorted_unique(std::vector<double> v, double lo, double hi)
{
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double t : v) {
        if (!(t > lo && t <= hi))
            continue;
        if (!out.empty() && t - out.back() < 1e-13)
            continue;
        out.push_back(t);
    }
    return out;
}

// Points approaching an endpoint geometrically, inside the first grid cell.
std::vector<double> approach(double end, double step, int count)
{
    std::vector<double> out;
    for (int i = 1; i <= count; ++i)
        out.push_back(end + step * std::ldexp(1.0, -i));
    return out;
}

}  // namespace

BoundaryScan count_arc_zeros(const WeightPair& wp, const ScanOptions& opts)
{
    if (opts.oversample < 1)
        throw std::invalid_argument("scan: oversample must be positive");
    const int w = wp.k + wp.l;
    const long long N = static_cast<long long>(opts.oversample) * w;
    const double lo = kPi / 3, hi = kPi / 2, step = (hi - lo) / N;
    std::vector<double> pts;
    pts.reserve(N);
    for (long long i = 1; i < N; ++i)
        pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(N));
    std::vector<double> extra = approach(lo, step, 12);
    for (double t : approach(hi, -step, 12))
        extra.push_back(t);
    const double eps = opts.eps;
    SignFunction f = [&wp, eps](double t, Precision p) { return arc_real(wp, t, eps, p); };
    return scan_interval(f, pts, extra, lo, hi, opts.parallel_points);
}

namespace {

long double log_add(long double a, long double b)
{
    if (a < b)
        std::swap(a, b);
    if (std::isinf(b) && b < 0)
        return a;
    return a + std::log1p(std::exp(b - a));
}

constexpr int kCutoffTerms = 50;

struct CutoffData {
    long double log_a1 = 0;
    int sign_a1 = 0;
    std::vector<long double> log_b;  // index n, bounds on |a_n| for 2 <= n <= kCutoffTerms
    long double log_K = 0;
    int w = 0;
};

CutoffData cutoff_data(const WeightPair& wp)
{
    const int k = wp.k, l = wp.l, w = k + l;
    CutoffData d;
    d.w = w;
    if (w <= 400) {
        ExactRational a1(gamma_k_exact(k).value() + gamma_k_exact(l).value() - gamma_k_exact(w).value());
        if (a1.sign() == 0)
            throw CertificationError("side cutoff: first Fourier coefficient vanishes");
        d.sign_a1 = a1.sign();
        d.log_a1 = a1.log_abs();
    } else {
        long double v = gamma_k_sign(k) * std::exp(gamma_k_log(k)) + gamma_k_sign(l) * std::exp(gamma_k_log(l)) -
                        gamma_k_sign(w) * std::exp(gamma_k_log(w));
        if (v == 0)
            throw CertificationError("side cutoff: first Fourier coefficient vanishes");
        d.sign_a1 = v > 0 ? 1 : -1;
        d.log_a1 = std::log(std::fabs(v));
    }
    const long double gk = gamma_k_log(k), gl = gamma_k_log(l), gw = gamma_k_log(w);
    std::vector<long double> sk(kCutoffTerms + 1), sl(kCutoffTerms + 1);
    for (int n = 1; n <= kCutoffTerms; ++n) {
        sk[n] = log_sigma(k, n);
        sl[n] = log_sigma(l, n);
    }
    d.log_b.assign(kCutoffTerms + 1, -std::numeric_limits<long double>::infinity());
    for (int n = 2; n <= kCutoffTerms; ++n) {
        long double conv = -std::numeric_limits<long double>::infinity();
        for (int m = 1; m < n; ++m)
            conv = log_add(conv, sk[m] + sl[n - m]);
        long double b = gk + sk[n];
        b = log_add(b, gl + sl[n]);
        b = log_add(b, gk + gl + conv);
        b = log_add(b, gw + log_sigma(w, n));
        d.log_b[n] = b;
    }
    const long double zk = std::log(zeta(k - 1.0L)), zl = std::log(zeta(l - 1.0L)), zw = std::log(zeta(w - 1.0L));
    long double K = gk + zk;
    K = log_add(K, gl + zl);
    K = log_add(K, gk + gl + zk + zl);
    K = log_add(K, gw + zw);
    d.log_K = K;
    return d;
}

// |a_1| e^{-2 pi y} > 2 (sum_{n=2}^{50} |a_n| e^{-2 pi n y} + tail)
bool dominates(const CutoffData& d, long double y)
{
    const long double two_pi_y = 2 * kPiL * y;
    const long double log_ratio = (d.w - 1) * std::log(52.0L / 51.0L) - two_pi_y;
    if (log_ratio >= 0)
        return false;
    long double rhs = d.log_K + (d.w - 1) * std::log(51.0L) - 51 * two_pi_y - std::log1p(-std::exp(log_ratio));
    for (int n = 2; n <= kCutoffTerms; ++n)
        rhs = log_add(rhs, d.log_b[n] - n * two_pi_y);
    return d.log_a1 - two_pi_y > std::log(2.0L) + rhs;
}

}  // namespace

SideCutoff side_cutoff(const WeightPair& wp)
{
    const CutoffData d = cutoff_data(wp);
    double hi = 1.0;
    while (!dominates(d, hi)) {
        hi *= 2;
        if (hi > 1e4)
            throw CertificationError("side cutoff: no dominance below y = 1e4");
    }
    double lo = hi / 2;
    if (hi > 1.0) {
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (dominates(d, mid))
                hi = mid;
            else
                lo = mid;
        }
    }
    // on x = 1/2, e(z) = -e^{-2 pi y}
    return {hi, -d.sign_a1, static_cast<double>(d.log_a1)};
}

BoundaryScan count_side_zeros(const WeightPair& wp, const ScanOptions& opts)
{
    return count_side_zeros(wp, side_cutoff(wp), opts);
}

BoundaryScan count_side_zeros(const WeightPair& wp, const SideCutoff& cutoff, const ScanOptions& opts)
{
    if (opts.oversample < 1)
        throw std::invalid_argument("scan: oversample must be positive");
    const int w = wp.k + wp.l;
    const double y_lo = std::sqrt(3.0) / 2, y_max = cutoff.y_max;
    const double th_lo = kPi / 3, th_hi = std::atan(2 * y_max);
    const long long N = std::max<long long>(
        8, static_cast<long long>(std::ceil(opts.oversample * w * (th_hi - th_lo) / (kPi / 6))));
    std::vector<double> pts;
    for (long long i = 1; i < N; ++i)
        pts.push_back(0.5 * std::tan(th_lo + (th_hi - th_lo) * static_cast<double>(i) / static_cast<double>(N)));
    pts.push_back(y_max);
    // extra points between consecutive y_N = K/(2 pi N), where the single-term regime alternates
    const int per_gap = std::max(1, opts.oversample / 2);
    for (int K : {wp.k, wp.l}) {
        for (int n = 1;; ++n) {
            const double a = K / (2 * kPi * (n + 1)), b = K / (2 * kPi * n);
            if (b <= y_lo)
                break;
            for (int i = 1; i <= per_gap; ++i)
                pts.push_back(a + (b - a) * i / (per_gap + 1));
        }
    }
    pts = sorted_unique(std::move(pts), y_lo, y_max);
    const std::vector<double> extra = approach(y_lo, pts.front() - y_lo, 12);
    const double eps = opts.eps;
    SignFunction f = [&wp, eps](double y, Precision p) { return side_real(wp, y, eps, p); };
    BoundaryScan out = scan_interval(f, pts, extra, y_lo, std::numeric_limits<double>::infinity(), opts.parallel_points);
    const int top = certified_value(f, y_max).sign();
    if (top != cutoff.sign_above)
        throw CertificationError("side cutoff: sign at y_max disagrees with the dominant Fourier term");
    return out;
}

namespace {

struct DeltaParts {
    std::complex<double> value;
    double scale = 0;
};

DeltaParts delta_parts(const WeightPair& wp, std::complex<double> z, double eps)
{
    const std::array<int, 3> w{wp.k, wp.l, wp.k + wp.l};
    const LogComplex one(0.0, 0.0);
    const std::array<LogComplex, 3> s{one, one, one};
    std::array<SeriesValue, 3> v;
    em1_multi(w, z, s, eps, Precision::Standard, v);
    const auto a = v[0].value, b = v[1].value, c = v[2].value;
    return {a + b + a * b - c, std::abs(a) + std::abs(b) + std::abs(a * b) + std::abs(c)};
}

}  // namespace

int order_probe(const WeightPair& wp, UpperHalfPoint z0, int max_order)
{
    // a small radius keeps the aliased coefficient a_{j+M} h^{j+M} far below the threshold
    constexpr int M = 32;
    if (max_order < 0 || max_order >= M / 2)
        throw std::invalid_argument("order_probe: max_order out of range");
    const double h = std::min(0.05, 0.5 / (wp.k + wp.l));
    std::array<std::complex<double>, M> f;
    double fmax = 0;
    for (int m = 0; m < M; ++m) {
        const std::complex<double> z = z0.z() + std::polar(h, 2 * kPi * m / M);
        f[m] = eval_delta(wp, UpperHalfPoint::from_complex(z)).value;
        fmax = std::max(fmax, std::abs(f[m]));
    }
    for (int j = 0; j <= max_order; ++j) {
        std::complex<double> c = 0;
        for (int m = 0; m < M; ++m)
            c += f[m] * std::polar(1.0, -2 * kPi * j * m / M);
        c /= static_cast<double>(M);
        if (std::abs(c) > 1e-6 * fmax)
            return j;
    }
    return max_order + 1;
}

std::vector<InteriorZero> hunt_interior(const WeightPair& wp, double y_max, double eps)
{
    const int w = wp.k + wp.l;
    const int Nx = std::max(8, w / 8), Ny = std::max(16, w / 4);
    const double y_lo = std::sqrt(3.0) / 2;
    if (!(y_max > y_lo))
        throw std::invalid_argument("hunt_interior: y_max must exceed sqrt(3)/2");
    auto inside = [](double x, double y) { return x * x + y * y >= 1.0; };
    std::vector<double> ratio(static_cast<size_t>(Nx) * (Ny + 1), std::numeric_limits<double>::quiet_NaN());
    auto X = [&](int i) { return 0.5 * i / Nx; };
    auto Y = [&](int j) { return y_lo + (y_max - y_lo) * (static_cast<double>(j) / Ny) * (static_cast<double>(j) / Ny); };
    for (int i = 0; i < Nx; ++i)
        for (int j = 0; j <= Ny; ++j)
            if (inside(X(i), Y(j))) {
                DeltaParts p = delta_parts(wp, {X(i), Y(j)}, eps);
                ratio[i * (Ny + 1) + j] = std::abs(p.value) / p.scale;
            }

    std::vector<InteriorZero> found;
    for (int i = 0; i < Nx; ++i) {
        for (int j = 0; j <= Ny; ++j) {
            const double r = ratio[i * (Ny + 1) + j];
            if (std::isnan(r))
                continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, b = j + dj;
                    if ((di == 0 && dj == 0) || a < 0 || a >= Nx || b < 0 || b > Ny)
                        continue;
                    const double o = ratio[a * (Ny + 1) + b];
                    if (!std::isnan(o) && o < r) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min)
                continue;
            // Newton with a central-difference derivative
            std::complex<double> z(X(i), Y(j));
            bool converged = false;
            for (int it = 0; it < 40; ++it) {
                if (std::fabs(z.real()) > 0.55 || z.imag() < 0.8 || z.imag() > 1.5 * y_max + 1)
                    break;
                const double h = 1e-6 * std::max(1.0, z.imag());
                const auto f0 = delta_parts(wp, z, eps).value;
                const auto fp = delta_parts(wp, z + h, eps).value;
                const auto fm = delta_parts(wp, z - h, eps).value;
                const std::complex<double> df = (fp - fm) / (2 * h);
                if (std::abs(df) == 0)
                    break;
                const std::complex<double> step = f0 / df;
                z -= step;
                if (std::abs(step) < 1e-12 * std::max(1.0, z.imag())) {
                    converged = true;
                    break;
                }
            }
            if (!converged || std::fabs(z.real()) > 0.55 || z.imag() < 0.8)
                continue;
            const double x = std::fabs(z.real()), y = z.imag();
            if (!(x < 0.5 - 1e-7 && std::hypot(x, y) > 1 + 1e-7))
                continue;
            DeltaParts p = delta_parts(wp, {x, y}, eps);
            const double rz = std::abs(p.value) / p.scale;
            if (!(rz < 1e-8))
                continue;
            bool dup = false;
            for (const auto& f : found)
                if (std::hypot(f.x - x, f.y - y) < 1e-6)
                    dup = true;
            if (!dup)
                found.push_back({x, y, rz});
        }
    }
    return found;
}

}  // namespace eiszero

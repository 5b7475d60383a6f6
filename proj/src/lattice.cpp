#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "eiszero/series.hpp"

namespace eiszero {

namespace {

double log_add(double a, double b)
{
    if (a < b)
        std::swap(a, b);
    if (std::isinf(b) && b < 0)
        return a;
    return a + std::log1p(std::exp(b - a));
}

// log of sqrt(pi) Gamma((k-1)/2) / Gamma(k/2), the integral of (1+t^2)^{-k/2}.
double log_line_integral(int k)
{
    return 0.5 * std::log(kPi) + std::lgamma(0.5 * (k - 1)) - std::lgamma(0.5 * k);
}

}  // namespace

double lattice_tail_log(int k, double x, double y, int C)
{
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("lattice: weight must be even and >= 4");
    if (!(y > 0))
        throw std::invalid_argument("lattice: y must be positive");
    if (!(std::fabs(x) < 1))
        throw std::invalid_argument("lattice: |x| must be below 1");
    const double lC = std::log(static_cast<double>(C));
    const double ly = std::log(y);
    // rows c > C
    double rows = -k * ly + (1 - k) * lC - std::log(k - 1.0);
    rows = log_add(rows, log_line_integral(k) + (1 - k) * ly + (2 - k) * lC - std::log(k - 2.0));
    // rows 1 <= c <= C with |d| > C
    double cols = -std::numeric_limits<double>::infinity();
    const double ax = std::fabs(x);
    for (int c = 1; c <= C; ++c) {
        double a = c * ax;
        double b = c * y;
        double gap = C - a;
        double base = std::log(gap * gap + b * b);
        double v = std::log(2.0) + (1 - 0.5 * k) * base + std::log(std::atan2(b, gap) / b);
        cols = log_add(cols, v);
    }
    return log_add(rows, cols);
}

int lattice_radius(int k, double x, double y, double log_scale, double eps)
{
    if (!(eps > 0))
        throw std::invalid_argument("lattice: eps must be positive");
    const double target = std::log(eps) - log_scale;
    auto ok = [&](int C) { return lattice_tail_log(k, x, y, C) <= target; };
    int hi = 2;
    while (!ok(hi)) {
        if (hi >= kLatticeRadiusCap)
            throw std::invalid_argument("lattice: eps too small to certify within the radius cap");
        hi = std::min(2 * hi, kLatticeRadiusCap);
    }
    int lo = std::max(1, hi / 2);
    if (ok(lo))
        return lo;
    while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

template <class T>
std::complex<T> ipow(std::complex<T> u, int e)
{
    std::complex<T> r(1, 0);
    while (e > 0) {
        if (e & 1)
            r *= u;
        u *= u;
        e >>= 1;
    }
    return r;
}

// Sums (z/(cz+d))^k, which stays bounded near F, then applies e^{scale} z^{-k} once.
template <class T>
void lattice_kernel(std::span<const int> weights, std::complex<double> z, std::span<const LogComplex> scales, int C,
                    double eps, std::span<SeriesValue> out)
{
    const size_t W = weights.size();
    std::vector<CompensatedComplexSum<T>> sums(W);
    std::vector<T> abs_sum(W, 0), skip_cut(W), ops(W);
    std::vector<long long> skipped(W, 0);
    const std::complex<T> zt(z.real(), z.imag());
    const T lz = std::log(std::abs(zt));
    const T max_terms = 2.0L * (2.0L * C + 1) * C;
    for (size_t i = 0; i < W; ++i) {
        // terms below this size are dropped; their total is charged to the truncation bound
        T log_cut = std::log(static_cast<T>(eps) * T(1e-3) / max_terms) - (scales[i].log_mag - weights[i] * lz);
        skip_cut[i] = std::exp(2 * log_cut / weights[i]);
        // relative error of u is amplified k times by the power, plus the squarings
        ops[i] = 3 * weights[i] + 3 * std::log2(static_cast<T>(weights[i])) + 4;
    }
    for (int c = 1; c <= C; ++c) {
        const std::complex<T> cz = T(c) * zt;
        for (int d = -C; d <= C; ++d) {
            if (std::gcd(c, d < 0 ? -d : d) != 1)
                continue;
            const std::complex<T> u = zt / (cz + T(d));
            const T u2 = std::norm(u);
            for (size_t i = 0; i < W; ++i) {
                if (u2 < skip_cut[i]) {
                    ++skipped[i];
                    continue;
                }
                const std::complex<T> t = ipow(u, weights[i]);
                sums[i].add(t);
                abs_sum[i] += std::abs(t);
            }
        }
    }
    const T eps_t = std::numeric_limits<T>::epsilon();
    for (size_t i = 0; i < W; ++i) {
        const int k = weights[i];
        const long double lr = static_cast<long double>(scales[i].log_mag) - k * std::log(std::abs(std::complex<long double>(z)));
        const long double li = static_cast<long double>(scales[i].phase) - k * std::arg(std::complex<long double>(z));
        const long double f_mag = std::exp(lr);
        const std::complex<long double> factor(f_mag * std::cos(li), f_mag * std::sin(li));
        const std::complex<T> s = sums[i].value();
        const std::complex<long double> v = factor * std::complex<long double>(s.real(), s.imag());
        out[i].value = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
        out[i].abs_sum = static_cast<double>(f_mag * abs_sum[i]);
        const long double eps_l = std::numeric_limits<long double>::epsilon();
        const long double factor_err = eps_l * (std::fabs(lr) + std::fabs(li) + 4);
        out[i].rounding = static_cast<double>(f_mag * eps_t * (ops[i] * abs_sum[i] + 2 * std::abs(s)) +
                                              factor_err * std::abs(v)) +
                          std::numeric_limits<double>::epsilon() * std::abs(out[i].value);
        out[i].truncation = static_cast<double>(skipped[i]) * eps * 1e-3 / static_cast<double>(max_terms);
        out[i].extent = C;
    }
}

}  // namespace

void lattice_em1(std::span<const int> weights, std::complex<double> z, std::span<const LogComplex> scales, double eps,
                 Precision prec, std::span<SeriesValue> out)
{
    if (weights.size() != scales.size() || weights.size() != out.size())
        throw std::invalid_argument("lattice: mismatched spans");
    if (weights.empty())
        return;
    int C = 1;
    for (size_t i = 0; i < weights.size(); ++i)
        C = std::max(C, lattice_radius(weights[i], z.real(), z.imag(), scales[i].log_mag, eps));
    if (prec == Precision::Standard)
        lattice_kernel<double>(weights, z, scales, C, eps, out);
    else
        lattice_kernel<long double>(weights, z, scales, C, eps, out);
    for (size_t i = 0; i < weights.size(); ++i)
        out[i].truncation += std::exp(lattice_tail_log(weights[i], z.real(), z.imag(), C) + scales[i].log_mag);
}

bool fourier_preferred(int k, double y)
{
    // cancellation in the q-expansion grows like y^{-k} below y = 1
    return y >= 1.0 || k * std::log(1.0 / y) <= 4.6;
}

SeriesValue em1(int k, std::complex<double> z, LogComplex scale, double eps, Precision prec)
{
    SeriesValue out;
    em1_multi(std::span<const int>(&k, 1), z, std::span<const LogComplex>(&scale, 1), eps, prec,
              std::span<SeriesValue>(&out, 1));
    return out;
}

void em1_multi(std::span<const int> weights, std::complex<double> z, std::span<const LogComplex> scales, double eps,
               Precision prec, std::span<SeriesValue> out)
{
    if (weights.size() != scales.size() || weights.size() != out.size())
        throw std::invalid_argument("em1: mismatched spans");
    if (!(z.imag() > 0))
        throw std::invalid_argument("em1: point must lie in the upper half plane");
    std::vector<int> lw;
    std::vector<LogComplex> ls;
    std::vector<size_t> idx;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (fourier_preferred(weights[i], z.imag())) {
            out[i] = fourier_em1(weights[i], z, scales[i], prec);
        } else {
            lw.push_back(weights[i]);
            ls.push_back(scales[i]);
            idx.push_back(i);
        }
    }
    if (lw.empty())
        return;
    const double lattice_eps = prec == Precision::Extended ? std::max(eps * 1e-4, 1e-24) : eps;
    std::vector<SeriesValue> tmp(lw.size());
    lattice_em1(lw, z, ls, lattice_eps, prec, tmp);
    for (size_t i = 0; i < idx.size(); ++i)
        out[idx[i]] = tmp[i];
}

}  // namespace eiszero

#include "eiszero/numerics.hpp"

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace eiszero {

double wrap_phase(double phase)
{
    if (!std::isfinite(phase))
        return phase;
    double r = std::remainder(phase, 2.0 * kPi);
    if (r <= -kPi)
        r += 2.0 * kPi;
    return r;
}

LogComplex LogComplex::from_complex(std::complex<double> z)
{
    if (z == 0.0)
        return {};
    return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex LogComplex::from_real(double v)
{
    if (v == 0.0)
        return {};
    return {std::log(std::fabs(v)), v < 0 ? kPi : 0.0};
}

std::complex<double> LogComplex::to_complex() const
{
    if (is_zero())
        return 0.0;
    return std::polar(std::exp(log_mag), phase);
}

ExactRational::ExactRational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

ExactRational::ExactRational(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

long double log_abs(const mpz_class& z)
{
    if (z == 0)
        return -std::numeric_limits<long double>::infinity();
    mpz_class a = abs(z);
    size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    if (bits <= 64) {
        mpz_class lo = a & mpz_class(0xffffffffUL);
        mpz_class hi = a >> 32;
        long double v = static_cast<long double>(hi.get_ui()) * 4294967296.0L + lo.get_ui();
        return std::log(v);
    }
    size_t shift = bits - 64;
    mpz_class top = a >> shift;
    mpz_class lo = top & mpz_class(0xffffffffUL);
    mpz_class hi = top >> 32;
    long double m = static_cast<long double>(hi.get_ui()) * 4294967296.0L + lo.get_ui();
    return std::log(m) + static_cast<long double>(shift) * 0.693147180559945309417232121458176568L;
}

long double ExactRational::log_abs() const
{
    return eiszero::log_abs(value_.get_num()) - eiszero::log_abs(value_.get_den());
}

namespace {

constexpr int kMaxBernoulli = 400;

std::mutex bernoulli_mutex;
std::vector<mpq_class> bernoulli_table;  // B_0 .. B_m

void extend_bernoulli(int upto)
{
    if (bernoulli_table.empty()) {
        bernoulli_table.emplace_back(1);
        bernoulli_table.emplace_back(-1, 2);
    }
    for (int m = static_cast<int>(bernoulli_table.size()); m <= upto; ++m) {
        if (m % 2 == 1) {
            bernoulli_table.emplace_back(0);
            continue;
        }
        // sum_{j<m} C(m+1, j) B_j = -(m+1) B_m
        mpz_class binom = 1;  // C(m+1, 0)
        mpq_class acc = 0;
        for (int j = 0; j < m; ++j) {
            if (j < 2 || j % 2 == 0)
                acc += binom * bernoulli_table[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        mpq_class b = -acc / (m + 1);
        b.canonicalize();
        bernoulli_table.push_back(b);
    }
}

}  // namespace

ExactRational bernoulli(int k)
{
    if (k < 2 || k > kMaxBernoulli || k % 2 != 0)
        throw std::invalid_argument("bernoulli: k must be even with 2 <= k <= 400");
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    if (static_cast<int>(bernoulli_table.size()) <= k)
        extend_bernoulli(k);
    return ExactRational(bernoulli_table[k]);
}

static void check_weight(int k)
{
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("weight must be even and >= 4");
}

ExactRational gamma_k_exact(int k)
{
    check_weight(k);
    mpq_class v = mpq_class(-2 * k) / bernoulli(k).value();
    return ExactRational(v);
}

namespace {

struct GammaEntry {
    long double log_mag;
    int sign;
};

std::mutex gamma_mutex;
std::vector<GammaEntry> gamma_cache;

GammaEntry gamma_entry(int k)
{
    check_weight(k);
    {
        std::lock_guard<std::mutex> lock(gamma_mutex);
        if (k < static_cast<int>(gamma_cache.size()) && gamma_cache[k].sign != 0)
            return gamma_cache[k];
    }
    GammaEntry e;
    if (k <= kMaxBernoulli) {
        ExactRational g = gamma_k_exact(k);
        e = {g.log_abs(), g.sign()};
    } else {
        // Past the exact table the analytic form is used directly.
        long double lg = k * std::log(2.0L * kPiL) - std::lgamma(static_cast<long double>(k)) -
                         std::log(zeta(static_cast<long double>(k)));
        e = {lg, (k / 2) % 2 == 0 ? 1 : -1};
    }
    std::lock_guard<std::mutex> lock(gamma_mutex);
    if (k >= static_cast<int>(gamma_cache.size()))
        gamma_cache.resize(k + 1, GammaEntry{0, 0});
    gamma_cache[k] = e;
    return e;
}

}  // namespace

long double gamma_k_log(int k) { return gamma_entry(k).log_mag; }

int gamma_k_sign(int k) { return gamma_entry(k).sign; }

LogComplex gamma_k(int k)
{
    GammaEntry e = gamma_entry(k);
    return {static_cast<double>(e.log_mag), e.sign < 0 ? kPi : 0.0};
}

LogComplex gamma_k_analytic(int k)
{
    check_weight(k);
    long double lg = k * std::log(2.0L * kPiL) - std::lgamma(static_cast<long double>(k)) -
                     std::log(zeta(static_cast<long double>(k)));
    return {static_cast<double>(lg), (k / 2) % 2 == 0 ? 0.0 : kPi};
}

long double zeta(long double s)
{
    if (!(s > 1))
        throw std::invalid_argument("zeta: s must exceed 1");
    // Direct sum to N-1, then Euler-Maclaurin for the remainder.
    const int N = 16;
    long double sum = 0;
    for (int n = N - 1; n >= 1; --n)
        sum += std::pow(static_cast<long double>(n), -s);
    long double Nl = N;
    long double tail = std::pow(Nl, 1 - s) / (s - 1) + 0.5L * std::pow(Nl, -s);
    static const long double b2j_over_fact[] = {
        1.0L / 12, -1.0L / 720, 1.0L / 30240, -1.0L / 1209600, 1.0L / 47900160};
    long double rising = s;  // s (s+1) ... (s+2j-2)
    long double power = std::pow(Nl, -s - 1);
    for (int j = 0; j < 5; ++j) {
        tail += b2j_over_fact[j] * rising * power;
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
        power /= Nl * Nl;
    }
    return sum + tail;
}

namespace {

// log of x^a e^{-x} / Gamma(a), written to avoid cancellation for large a.
double log_gamma_prefactor(double a, double x)
{
    if (x == 0)
        return -std::numeric_limits<double>::infinity();
    if (a < 10) {
        long double v = a * std::log(static_cast<long double>(x)) - x - std::lgamma(static_cast<long double>(a));
        return static_cast<double>(v);
    }
    double t = (x - a) / a;
    double a2 = a * a;
    double mu = (1.0 / 12 - (1.0 / 360 - (1.0 / 1260 - 1.0 / (1680 * a2)) / a2) / a2) / a;
    return a * (std::log1p(t) - t) + 0.5 * std::log(a) - 0.5 * std::log(2 * kPi) - mu;
}

constexpr double kGammaTol = 1e-15;
constexpr int kGammaMaxIter = 10000000;

// P(a, x) by the power series, for x < a + 1.
double gamma_p_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kGammaMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term < sum * kGammaTol)
            return sum * std::exp(log_gamma_prefactor(a, x));
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Q(a, x) by the Legendre continued fraction (modified Lentz), for x >= a + 1.
double gamma_q_fraction(double a, double x)
{
    const double tiny = 1e-300;
    double b = x + 1 - a;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i < kGammaMaxIter; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1) < kGammaTol)
            return h * std::exp(log_gamma_prefactor(a, x));
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

void check_gamma_args(double a, double x)
{
    if (!(a > 0) || a > 1e6)
        throw std::invalid_argument("incomplete gamma: need 0 < a <= 1e6");
    if (!(x >= 0))
        throw std::invalid_argument("incomplete gamma: need x >= 0");
}

}  // namespace

double reg_gamma_q(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0)
        return 1.0;
    if (x < a + 1)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double reg_gamma_p(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0)
        return 0.0;
    if (x < a + 1)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double q_tail_envelope(double a, double x)
{
    double d = x - a;
    return 3.0 * (std::exp(-d * d / (4 * a)) + std::exp(-std::fabs(d) / 4));
}

}  // namespace eiszero

#include "eiszero/eisenstein.hpp"

#include <cmath>
#include <stdexcept>

namespace eiszero {

UpperHalfPoint::UpperHalfPoint(double x_, double y_) : x(x_), y(y_)
{
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0))
        throw std::invalid_argument("point must lie in the upper half plane");
}

UpperHalfPoint UpperHalfPoint::polar(double R, double theta)
{
    if (!(R > 0) || !(theta > 0) || !(theta < kPi))
        throw std::invalid_argument("polar point must have R > 0 and 0 < theta < pi");
    return {R * std::cos(theta), R * std::sin(theta)};
}

bool UpperHalfPoint::in_F(double tol) const
{
    return std::fabs(x) <= 0.5 + tol && x * x + y * y >= 1.0 - tol;
}

bool UpperHalfPoint::in_corner_strip() const
{
    return x >= 0.4 && x <= 0.6 && y >= std::sqrt(0.5) && y <= 1.0;
}

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::SmallY:
        return "SmallY";
    case Regime::ThetaMid:
        return "ThetaMid";
    case Regime::FourierLarge:
        return "FourierLarge";
    case Regime::LatticeExact:
        return "LatticeExact";
    }
    return "unknown";
}

ThetaArgs::ThetaArgs(std::complex<double> w_, std::complex<double> tau_) : w(w_), tau(tau_)
{
    if (!(tau.imag() > 0))
        throw std::invalid_argument("theta: Im(tau) must be positive");
}

double theta_modulus(int k, double y) { return 2 * kPi * y * y / k; }

ThetaArgs ThetaArgs::for_eisenstein(int k, UpperHalfPoint z)
{
    double r = theta_modulus(k, z.y);
    return {{k / (2 * kPi * z.y), z.x / r}, {0.0, 1.0 / r}};
}

static void check_weight(int k)
{
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("weight must be even and >= 4");
}

LatticeValue eval_ek_lattice(int k, UpperHalfPoint z, double eps)
{
    check_weight(k);
    if (!(eps >= 1e-15))
        throw std::invalid_argument("lattice: eps must be at least 1e-15");
    if (!z.in_F() && !z.in_corner_strip())
        throw std::invalid_argument("lattice: point must be in F or the corner strip");
    SeriesValue v;
    LogComplex one(0.0, 0.0);
    lattice_em1(std::span<const int>(&k, 1), z.z(), std::span<const LogComplex>(&one, 1), eps, Precision::Standard,
                std::span<SeriesValue>(&v, 1));
    return {1.0 + v.value, v.truncation, v.extent};
}

std::complex<double> eval_ek_fourier(int k, UpperHalfPoint z, double window_c)
{
    check_weight(k);
    if (z.y < 1.0)
        throw std::invalid_argument("fourier: y must be at least 1; use the lattice evaluator below");
    return 1.0 + fourier_em1_window(k, z.z(), LogComplex(0.0, 0.0), window_c).value;
}

double fourier_term_log_magnitude(int k, double y, long long n)
{
    return k * std::log(2 * kPi * y) - std::lgamma(static_cast<double>(k)) + (k - 1) * std::log(static_cast<double>(n)) -
           2 * kPi * n * y;
}

std::complex<double> eval_ek(int k, UpperHalfPoint z, double eps)
{
    check_weight(k);
    return 1.0 + em1(k, z.z(), LogComplex(0.0, 0.0), eps, Precision::Standard).value;
}

double fk(int k, double theta, double eps)
{
    check_weight(k);
    if (!(theta >= kPi / 3 - 1e-9 && theta <= 2 * kPi / 3 + 1e-9))
        throw std::invalid_argument("fk: theta must lie in [pi/3, 2pi/3]");
    UpperHalfPoint z = UpperHalfPoint::on_arc(theta);
    const double half = 0.5 * k * theta;
    SeriesValue v = em1(k, z.z(), LogComplex(0.0, half), eps, Precision::Standard);
    std::complex<double> f = std::polar(1.0, half) + v.value;
    if (std::fabs(f.imag()) > 1e-9 + 10 * v.error())
        throw std::runtime_error("fk: imaginary residue exceeds tolerance");
    return f.real();
}

std::complex<double> gk(int k, UpperHalfPoint z, double eps)
{
    check_weight(k);
    LogComplex s(k * std::log(z.R()), k * z.theta());
    return em1(k, z.z(), s, eps, Precision::Standard).value;
}

std::complex<double> hk(int k, UpperHalfPoint z, double eps)
{
    check_weight(k);
    LogComplex s(k * std::log(z.R()), 0.0);
    return em1(k, z.z(), s, eps, Precision::Standard).value;
}

double fk_main_terms(int k, double theta)
{
    check_weight(k);
    double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    return 2 * std::cos(0.5 * k * theta) + std::pow(2 * std::cos(0.5 * theta), -k) +
           sign * std::pow(2 * std::sin(0.5 * theta), -k);
}

double rk_tail_bound(int k)
{
    if (k < 4)
        throw std::invalid_argument("rk_tail_bound: k must be at least 4");
    return 4 * std::pow(2.5, -0.5 * k) + 20 * std::sqrt(2.0) / (k - 3) * std::pow(4.5, 0.5 * (3 - k));
}

std::complex<double> gk_theta_transformed(int k, UpperHalfPoint z)
{
    check_weight(k);
    const double r = theta_modulus(k, z.y);
    const double K = k / (2 * kPi * z.y);
    const long long n0 = std::llround(K);
    CompensatedComplexSum<long double> sum;
    auto term = [&](long long n) {
        long double d = n - K;
        long double mag = std::exp(-kPiL * r * d * d);
        long double ph = std::remainder(2 * kPiL * n * z.x, 2 * kPiL);
        return std::complex<long double>(mag * std::cos(ph), mag * std::sin(ph));
    };
    sum.add(term(n0));
    for (long long step = 1;; ++step) {
        auto a = term(n0 + step);
        auto b = term(n0 - step);
        sum.add(a);
        sum.add(b);
        if (std::abs(a) + std::abs(b) < 1e-20L * (std::abs(sum.value()) + 1))
            break;
    }
    std::complex<long double> s = sum.value();
    double lm = 0.5 * std::log(r) + kPi * z.x * z.x / r;
    double ph = -k * z.x / z.y;
    return std::polar(std::exp(lm), ph) * std::complex<double>(static_cast<double>(s.real()), static_cast<double>(s.imag()));
}

std::complex<double> gk_fourier_window(int k, UpperHalfPoint z)
{
    check_weight(k);
    const double lk = std::log(static_cast<double>(k));
    const double centre = k / (2 * kPi * z.y);
    const double half = lk * lk * std::sqrt(static_cast<double>(k)) / (2 * kPi * z.y);
    const long long lo = std::max<long long>(1, static_cast<long long>(std::ceil(centre - half)));
    const long long hi = static_cast<long long>(std::floor(centre + half));
    const long double pre_log = k * std::log(2 * kPiL * z.R()) - std::lgamma(static_cast<long double>(k));
    const long double pre_ph = k * (static_cast<long double>(z.theta()) - kPiL / 2);
    CompensatedComplexSum<long double> sum;
    for (long long n = lo; n <= hi; ++n) {
        long double lm = pre_log + (k - 1) * std::log(static_cast<long double>(n)) - 2 * kPiL * n * z.y;
        long double ph = std::remainder(pre_ph + 2 * kPiL * n * z.x, 2 * kPiL);
        long double mag = std::exp(lm);
        sum.add({mag * std::cos(ph), mag * std::sin(ph)});
    }
    std::complex<long double> s = sum.value();
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

std::complex<double> gk_small_y(int k, UpperHalfPoint z)
{
    check_weight(k);
    const std::complex<double> w = z.z();
    const std::complex<double> a = std::exp(static_cast<double>(k) * std::log(w / (w - 1.0)));
    const std::complex<double> b = std::exp(static_cast<double>(k) * std::log(w / (w + 1.0)));
    return 1.0 + a + b;
}

RegimeApprox gk_regime_approx(int k, UpperHalfPoint z)
{
    check_weight(k);
    const double kd = k;
    RegimeApprox out;
    if (z.y <= std::pow(kd, 0.4)) {
        out.value = gk_small_y(k, z);
        out.regime = Regime::SmallY;
        out.error_envelope = kEnvelopeConstant * std::exp(-std::pow(kd, 1.0 / 6));
        out.branch = "small-y";
    } else if (z.y <= std::pow(kd, 2.0 / 3)) {
        out.value = jacobi_theta(ThetaArgs::for_eisenstein(k, z));
        out.regime = Regime::ThetaMid;
        out.error_envelope = kEnvelopeConstant * z.y / std::pow(kd, 2.0 / 3);
        out.branch = "theta";
    } else {
        const double lk = std::log(kd);
        out.value = gk_fourier_window(k, z);
        out.regime = Regime::FourierLarge;
        out.error_envelope =
            kEnvelopeConstant * (std::exp(-0.25 * lk * lk) + std::pow(3.0, -0.5 * kd) * (1 + z.y / std::sqrt(kd)));
        out.branch = "fourier-window";
    }
    return out;
}

RegimeApprox hk_side_regimes(int k, double y, std::optional<int> N)
{
    check_weight(k);
    if (!(y > 0))
        throw std::invalid_argument("hk_side_regimes: y must be positive");
    const double kd = k;
    const double phi = std::atan(1 / (2 * y));
    const double r = theta_modulus(k, y);
    const double sign_k = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    RegimeApprox out;
    if (y <= std::pow(kd, 0.4)) {
        out.value = 2 * sign_k * std::cos(kd * phi);
        out.regime = Regime::SmallY;
        out.error_envelope = kEnvelopeConstant * std::exp(-std::pow(kd, 1.0 / 6));
        out.branch = "small-y";
        return out;
    }
    if (y <= std::sqrt(kd)) {
        out.value = 2 * sign_k * std::cos(kd * phi);
        out.regime = Regime::ThetaMid;
        out.error_envelope = phi0(r) + kEnvelopeConstant * std::pow(kd, -1.0 / 6);
        out.branch = "phi0";
        return out;
    }
    if (!N || *N < 1 || std::fabs(2 * kPi * *N * y / kd - 1) > 10 / kd)
        throw std::invalid_argument("hk_side_regimes: large-y branches need N with |2 pi N y/k - 1| <= 10/k");
    const double sign_n = ((*N + k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (y <= std::pow(kd, 0.6)) {
        double base = std::sqrt(r) * std::exp(kPi / (4 * r));
        out.value = sign_n * base;
        out.regime = Regime::ThetaMid;
        out.error_envelope = base * phi1(r) + kEnvelopeConstant * std::pow(kd, -1.0 / 15);
        out.branch = "phi1";
        return out;
    }
    out.value = sign_n * std::sqrt(r);
    out.regime = Regime::FourierLarge;
    out.error_envelope = kEnvelopeConstant * std::sqrt(r) * std::pow(kd, -0.2);
    out.branch = "large-y";
    return out;
}

double phi0(double r)
{
    if (!(r > 0))
        throw std::invalid_argument("phi0: r must be positive");
    double s = 0;
    for (long long n = 1;; ++n) {
        double t = std::exp(-kPi * n * (n + 1.0) / r);
        s += 2 * t;
        if (t < 1e-16)
            break;
    }
    return s;
}

double phi1(double r)
{
    if (!(r > 0))
        throw std::invalid_argument("phi1: r must be positive");
    double s = 0;
    for (long long n = 1;; ++n) {
        double t = std::exp(-kPi * r * n * n);
        s += 2 * t;
        if (t < 1e-16)
            break;
    }
    return s;
}

}  // namespace eiszero

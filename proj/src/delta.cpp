#include "eiszero/delta.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace eiszero {

WeightPair WeightPair::make(int k, int l, bool allow_degenerate)
{
    if (k % 2 != 0 || l % 2 != 0)
        throw std::invalid_argument("weights must be even");
    if (l < 4)
        throw std::invalid_argument("weights must be at least 4");
    if (k < l)
        throw std::invalid_argument("weight pair needs k >= l");
    const int w = k + l;
    if (!allow_degenerate && (w == 8 || w == 10 || w == 14))
        throw std::invalid_argument("E_k E_l - E_{k+l} vanishes identically for k + l in {8, 10, 14}");
    WeightPair wp;
    wp.k = k;
    wp.l = l;
    wp.n = (k - l) / 12;
    wp.j = (k - l) % 12;
    wp.q = l / 6;
    wp.a = l % 6;
    return wp;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Parts {
    std::array<SeriesValue, 3> v;  // k, l, k + l
};

Parts eval_parts(const WeightPair& wp, std::complex<double> z, const std::array<LogComplex, 3>& scales, double eps,
                 Precision prec)
{
    const std::array<int, 3> w{wp.k, wp.l, wp.k + wp.l};
    Parts p;
    em1_multi(w, z, scales, eps, prec, p.v);
    return p;
}

// a + b + ab' - c, where b' = b * factor; returns value and error.
std::pair<std::complex<double>, double> combine(const SeriesValue& a, const SeriesValue& b, std::complex<double> ua,
                                                std::complex<double> ub, const SeriesValue& c, double factor)
{
    const std::complex<double> av = a.value, bv = b.value, cv = c.value;
    const double ea = a.error(), eb = b.error(), ec = c.error();
    const std::complex<double> t1 = ub * av;
    const std::complex<double> t2 = ua * bv;
    const std::complex<double> t3 = av * bv * factor;
    const std::complex<double> value = t1 + t2 + t3 - cv;
    const double ua_abs = std::abs(ua), ub_abs = std::abs(ub);
    double err = ub_abs * ea + ua_abs * eb + factor * (std::abs(av) * eb + std::abs(bv) * ea + ea * eb) + ec;
    err += 4 * kEps * (std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(cv));
    return {value, err};
}

void check_strip(UpperHalfPoint z)
{
    if (std::fabs(z.x) > 0.6 + 1e-12 || z.y < 0.5)
        throw std::invalid_argument("delta: point must satisfy |x| <= 3/5 and y >= 1/2");
}

// (i base)^{-e} = (-1)^{e/2} base^{-e} for even e
double pow_signed_even(double base, int e)
{
    double v = std::pow(base, -e);
    return ((e / 2) % 2 == 0) ? v : -v;
}

}  // namespace

DeltaValue eval_delta(const WeightPair& wp, UpperHalfPoint z, double eps, Precision prec)
{
    check_strip(z);
    const LogComplex one(0.0, 0.0);
    Parts p = eval_parts(wp, z.z(), {one, one, one}, eps, prec);
    auto [v, e] = combine(p.v[0], p.v[1], 1.0, 1.0, p.v[2], 1.0);
    return {v, e};
}

std::complex<double> delta_h_combination(const WeightPair& wp, UpperHalfPoint z, double eps)
{
    const double R = z.R();
    std::complex<double> hk_ = hk(wp.k, z, eps);
    std::complex<double> hl = hk(wp.l, z, eps);
    std::complex<double> hw = hk(wp.k + wp.l, z, eps);
    return std::pow(R, wp.k) * hl + std::pow(R, wp.l) * hk_ + hk_ * hl - hw;
}

SignedValue arc_real(const WeightPair& wp, double theta, double eps, Precision prec)
{
    if (!(theta >= kPi / 3 - 1e-9 && theta <= 2 * kPi / 3 + 1e-9))
        throw std::invalid_argument("arc_real: theta must lie in [pi/3, 2pi/3]");
    const UpperHalfPoint z = UpperHalfPoint::on_arc(theta);
    const int w = wp.k + wp.l;
    const double hk_ = 0.5 * wp.k * theta, hl = 0.5 * wp.l * theta;
    Parts p = eval_parts(wp, z.z(), {LogComplex(0.0, hk_), LogComplex(0.0, hl), LogComplex(0.0, 0.5 * w * theta)}, eps,
                         prec);
    // F_k F_l - F_w with the unit parts multiplied out: e^{ik t/2} e^{il t/2} = e^{iw t/2} cancels
    auto [v, e] = combine(p.v[0], p.v[1], std::polar(1.0, hk_), std::polar(1.0, hl), p.v[2], 1.0);
    if (std::fabs(v.imag()) > 1e-9 + 10 * e)
        throw std::runtime_error("arc_real: imaginary residue exceeds tolerance");
    return {v.real(), e};
}

SignedValue side_real(const WeightPair& wp, double y, double eps, Precision prec)
{
    if (!(y > 0))
        throw std::invalid_argument("side_real: y must be positive");
    const UpperHalfPoint z = UpperHalfPoint::on_side(y);
    const double lR = std::log(z.R());
    const LogComplex s(wp.l * lR, 0.0);
    Parts p = eval_parts(wp, z.z(), {s, s, s}, eps, prec);
    // |z|^l Delta = A + B + A B |z|^{-l} - C with A = |z|^l (E_k - 1), and so on
    auto [v, e] = combine(p.v[0], p.v[1], 1.0, 1.0, p.v[2], std::exp(-wp.l * lR));
    if (std::fabs(v.imag()) > 1e-9 + 10 * e)
        throw std::runtime_error("side_real: imaginary residue exceeds tolerance");
    return {v.real(), e};
}

double m_main(const WeightPair& wp, double theta)
{
    const double s = 2 * std::sin(0.5 * theta);
    return 2 * std::cos(0.5 * (wp.k - wp.l) * theta) + 2 * std::cos(0.5 * wp.k * theta) * pow_signed_even(s, wp.l) +
           2 * std::cos(0.5 * wp.l * theta) * pow_signed_even(s, wp.k);
}

double m_main_reduced(const WeightPair& wp, int m)
{
    const int D = wp.k - wp.l;
    if (D <= 0)
        throw std::invalid_argument("m_main_reduced: needs k > l");
    const int r = m - 2 * wp.n;
    const double x = kPi * (r - wp.j / 6.0) / D;
    const double s = 2 * std::sin(kPi / 6 + x);
    const double sr = (r % 2 == 0) ? 1.0 : -1.0;
    const double inner = 1 + sr * pow_signed_even(s, D);
    return 2 * sr * (1 + std::cos(wp.l * kPi / 6 + wp.l * x) * pow_signed_even(s, wp.l) * inner);
}

double p_main(const WeightPair& wp, double theta)
{
    const double c = 2 * std::cos(theta);
    const double ck = std::cos(wp.k * theta), cl = std::cos(wp.l * theta);
    return cl + ck * std::pow(c, wp.k - wp.l) + (2 * ck * cl - std::cos((wp.k + wp.l) * theta)) * std::pow(c, wp.k);
}

double p_main_reduced(const WeightPair& wp, int d)
{
    const int D = wp.k - wp.l;
    const double x = kPi / wp.l * (d - wp.a / 3.0);
    const double c = 2 * std::cos(kPi / 3 + x);
    const double sd = (d % 2 == 0) ? 1.0 : -1.0;
    const double signed_p = 1 + std::pow(c, D) * std::cos(D * kPi / 3 + D * x) * (1 + sd * std::pow(c, wp.l));
    return sd * signed_p;
}

double arc_seven_terms(const WeightPair& wp, double theta)
{
    const double s = 2 * std::sin(0.5 * theta);
    const double c = 2 * std::cos(0.5 * theta);
    const double ck = std::cos(0.5 * wp.k * theta), cl = std::cos(0.5 * wp.l * theta);
    return m_main(wp, theta) + 2 * ck * std::pow(c, -wp.l) + 2 * cl * std::pow(c, -wp.k) +
           std::pow(c, -wp.k) * pow_signed_even(s, wp.l) + std::pow(c, -wp.l) * pow_signed_even(s, wp.k);
}

CornerDerivatives corner_derivatives(const WeightPair& wp)
{
    const double k = wp.k, l = wp.l;
    const int km = wp.k % 6, lm = wp.l % 6;
    const double r3 = std::sqrt(3.0);
    CornerDerivatives out;
    if (km == 0 && lm == 4) {
        out.p1 = r3 * (2 * l - k);
        out.m1 = (wp.j == 2 ? 1.0 : -1.0) * r3 * (2 * l - k);
    } else if (km == 4 && lm == 0) {
        out.p1 = r3 * (2 * k - l);
    } else if (km == 2 && lm == 0) {
        const double poly = 2 * k * k - 2 * k * l + 2 * k - l * l - l;
        out.p2 = 2 * poly;
        out.m2 = (wp.j == 2 ? -1.0 : 1.0) * poly;
    } else if (km == 4 && lm == 4) {
        const double poly = -k * k + k * (4 * l - 1) - l * l - l;
        out.p2 = 2 * poly;
        out.m2 = (wp.j == 0 ? 1.0 : -1.0) * poly;
    } else {
        throw std::domain_error("corner_derivatives: no closed form for this congruence class");
    }
    return out;
}

}  // namespace eiszero

#pragma once

#include <complex>
#include <optional>
#include <string>

#include "eiszero/numerics.hpp"
#include "eiszero/series.hpp"

namespace eiszero {

// z = x + iy with y > 0.
struct UpperHalfPoint {
    double x = 0.0;
    double y = 1.0;

    UpperHalfPoint() = default;
    UpperHalfPoint(double x_, double y_);

    static UpperHalfPoint polar(double R, double theta);
    static UpperHalfPoint on_arc(double theta) { return polar(1.0, theta); }
    static UpperHalfPoint on_side(double y) { return {0.5, y}; }
    static UpperHalfPoint from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

    std::complex<double> z() const { return {x, y}; }
    double R() const { return std::hypot(x, y); }
    double theta() const { return std::atan2(y, x); }

    // |z| >= 1 and |x| <= 1/2, up to tol.
    bool in_F(double tol = 1e-12) const;
    // 2/5 <= x <= 3/5 and 2^{-1/2} <= y <= 1.
    bool in_corner_strip() const;
};

enum class Regime { SmallY, ThetaMid, FourierLarge, LatticeExact };

std::string to_string(Regime r);

struct RegimeApprox {
    std::complex<double> value;
    Regime regime = Regime::LatticeExact;
    double error_envelope = 0.0;
    std::string branch;
};

struct ThetaArgs {
    std::complex<double> w;
    std::complex<double> tau;

    ThetaArgs(std::complex<double> w_, std::complex<double> tau_);
    // w = k/(2 pi y) + i x/r, tau = i/r with r = 2 pi y^2 / k.
    static ThetaArgs for_eisenstein(int k, UpperHalfPoint z);
};

// r = 2 pi y^2 / k.
double theta_modulus(int k, double y);

struct LatticeValue {
    std::complex<double> value;
    double tail_bound = 0.0;
    int radius = 0;
};

// E_k from the coprime lattice sum, truncated at max(|c|,|d|) <= C with the tail below eps.
LatticeValue eval_ek_lattice(int k, UpperHalfPoint z, double eps);

// E_k from the q-expansion, n up to k/(2 pi y) + window_c sqrt(k)/(2 pi y). Needs y >= 1.
std::complex<double> eval_ek_fourier(int k, UpperHalfPoint z, double window_c = 30.0);

// Size of the n-th Fourier term of G_k at height y: |(2 pi y)^k / Gamma(k) n^{k-1} e^{-2 pi n y}|, as a log.
double fourier_term_log_magnitude(int k, double y, long long n);

// E_k by whichever exact series suits the point.
std::complex<double> eval_ek(int k, UpperHalfPoint z, double eps = 1e-14);

// F_k(theta) = e^{ik theta/2} E_k(e^{i theta}), real on the arc.
double fk(int k, double theta, double eps = 1e-14);
// G_k = z^k (E_k - 1) and H_k = |z|^k (E_k - 1).
std::complex<double> gk(int k, UpperHalfPoint z, double eps = 1e-14);
std::complex<double> hk(int k, UpperHalfPoint z, double eps = 1e-14);

// 2cos(k theta/2) + (2cos(theta/2))^{-k} + (2i sin(theta/2))^{-k}.
double fk_main_terms(int k, double theta);
// 4 (5/2)^{-k/2} + 20 sqrt2/(k-3) (9/2)^{(3-k)/2}.
double rk_tail_bound(int k);

// sum_n exp(pi i n^2 tau + 2 pi i n w).
std::complex<double> jacobi_theta(const ThetaArgs& args, double eps = 1e-17);

// G_k from the theta sum after the modular transformation:
// r^{1/2} exp(-ikx/y + pi x^2/r) sum_n exp(-pi r (n - k/(2 pi y))^2) e(nx).
std::complex<double> gk_theta_transformed(int k, UpperHalfPoint z);

// Windowed single-row Fourier approximation (-2 pi i z)^k / Gamma(k) sum n^{k-1} e(nz).
std::complex<double> gk_fourier_window(int k, UpperHalfPoint z);

// 1 + (z/(z-1))^k + (z/(z+1))^k, the three smallest lattice vectors after rescaling by z^k.
std::complex<double> gk_small_y(int k, UpperHalfPoint z);

// Dispatches on y: small-y terms up to k^{2/5}, theta sum up to k^{2/3}, windowed Fourier row above.
RegimeApprox gk_regime_approx(int k, UpperHalfPoint z);

// H_k on x = 1/2. The two large-y branches need N with |2 pi N y / k - 1| <= 10/k.
RegimeApprox hk_side_regimes(int k, double y, std::optional<int> N = std::nullopt);

// sum_{n != 0,-1} exp(-pi (n^2+n)/r) and sum_{n != 0} exp(-pi r n^2).
double phi0(double r);
double phi1(double r);

constexpr double kEnvelopeConstant = 10.0;

}  // namespace eiszero

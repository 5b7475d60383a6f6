#pragma once

#include <complex>
#include <span>

#include "eiszero/numerics.hpp"

namespace eiszero {

// A truncated series value together with its error budget.
struct SeriesValue {
    std::complex<double> value;
    double abs_sum = 0;     // sum of |terms|
    double truncation = 0;  // certified bound on the omitted terms
    double rounding = 0;    // floating-point error estimate
    int extent = 0;         // lattice radius C, or number of Fourier terms

    double error() const { return truncation + rounding; }
};

constexpr int kLatticeRadiusCap = 10000;

// Bound on the part of sum_{c>=1, (c,d)=1} |cz+d|^{-k} outside max(|c|,|d|) <= C,
// returned as a natural log. Needs |x| < 1.
double lattice_tail_log(int k, double x, double y, int C);

// Smallest radius whose tail bound times e^{log_scale} is below eps; throws past the cap.
int lattice_radius(int k, double x, double y, double log_scale, double eps);

// Scaled E_k - 1 by the lattice sum: out[i] = e^{scales[i]} sum_{c>=1, (c,d)=1} (cz+d)^{-k_i}.
// One radius serves all weights; the log of each cz+d is shared.
void lattice_em1(std::span<const int> weights, std::complex<double> z, std::span<const LogComplex> scales,
                 double eps, Precision prec, std::span<SeriesValue> out);

// Scaled E_k - 1 by the q-expansion gamma_k sum sigma_{k-1}(n) e(nz), summed until the
// remaining terms are negligible, with a certified tail bound.
SeriesValue fourier_em1(int k, std::complex<double> z, LogComplex scale, Precision prec);

// Same expansion restricted to n <= centre + window_c sqrt(k)/(2 pi y); no tail bound.
SeriesValue fourier_em1_window(int k, std::complex<double> z, LogComplex scale, double window_c);

// log sigma_{k-1}(n), computed as (k-1) ln n + ln sum_{d|n} (d/n)^{k-1}.
long double log_sigma(int k, long long n);

// True when the q-expansion is well conditioned at height y for weight k.
bool fourier_preferred(int k, double y);

// Scaled E_k - 1 through whichever series suits the point.
SeriesValue em1(int k, std::complex<double> z, LogComplex scale, double eps, Precision prec);

// Several weights at one point, sharing lattice work where possible.
void em1_multi(std::span<const int> weights, std::complex<double> z, std::span<const LogComplex> scales,
               double eps, Precision prec, std::span<SeriesValue> out);

}  // namespace eiszero

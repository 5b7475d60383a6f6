#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "eiszero/series.hpp"

namespace eiszero {

long double log_sigma(int k, long long n)
{
    if (n < 1)
        throw std::invalid_argument("log_sigma: n must be positive");
    const long double e = k - 1;
    const long double nl = static_cast<long double>(n);
    long double s = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        long long other = n / d;
        s += std::pow(static_cast<long double>(d) / nl, e);
        if (other != d)
            s += std::pow(1.0L / static_cast<long double>(d), e);
    }
    return e * std::log(nl) + std::log(s);
}

namespace {

using SigmaTable = std::shared_ptr<const std::vector<long double>>;

std::mutex sigma_mutex;
std::map<int, SigmaTable> sigma_tables;

// Table of log sigma_{k-1}(n), index n, covering at least 1..n_max.
SigmaTable sigma_table(int k, long long n_max)
{
    {
        std::lock_guard<std::mutex> lock(sigma_mutex);
        auto it = sigma_tables.find(k);
        if (it != sigma_tables.end() && static_cast<long long>(it->second->size()) > n_max)
            return it->second;
    }
    long long size = std::max<long long>(64, 2 * n_max + 1);
    auto table = std::make_shared<std::vector<long double>>(size);
    (*table)[0] = 0;
    for (long long n = 1; n < size; ++n)
        (*table)[n] = log_sigma(k, n);
    std::lock_guard<std::mutex> lock(sigma_mutex);
    auto& slot = sigma_tables[k];
    if (!slot || slot->size() < table->size())
        slot = table;
    return slot;
}

template <class T>
SeriesValue fourier_kernel(int k, std::complex<double> z, LogComplex scale, long long n_stop_fixed, bool adaptive)
{
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("fourier: weight must be even and >= 4");
    const double y = z.imag();
    if (!(y > 0))
        throw std::invalid_argument("fourier: y must be positive");
    const long double two_pi = 2 * kPiL;
    const long double L0 = gamma_k_log(k) + static_cast<long double>(scale.log_mag);
    const long double ph0 = (gamma_k_sign(k) < 0 ? kPiL : 0.0L) + static_cast<long double>(scale.phase);
    const long double ly = y;
    const long double lx = z.real();
    const double centre = (k - 1) / (2 * kPi * y);
    const T cut = std::numeric_limits<T>::digits * 0.6931471805599453 + 4;

    long long guess = adaptive ? static_cast<long long>(centre + 12 * std::sqrt(k) / (2 * kPi * y) + 64 / (2 * kPi * y)) + 8
                               : n_stop_fixed;
    SigmaTable table = sigma_table(k, guess);

    CompensatedComplexSum<T> sum;
    T abs_sum = 0, err_sum = 0;
    long double max_log = -std::numeric_limits<long double>::infinity();
    const T eps_t = std::numeric_limits<T>::epsilon();
    const long double eps_l = std::numeric_limits<long double>::epsilon();
    long long n = 1;
    for (;; ++n) {
        if (!adaptive && n > n_stop_fixed)
            break;
        long double ls = n < static_cast<long long>(table->size()) ? (*table)[n] : log_sigma(k, n);
        long double decay = two_pi * n * ly;
        long double t = L0 + ls - decay;
        long double ph = ph0 + two_pi * n * lx;
        max_log = std::max(max_log, t);
        if (adaptive && n > centre + 1 && t < max_log - cut) {
            // ratio of consecutive majorant terms n^{k-1} e^{-2 pi n y} past this point
            long double ratio = std::exp((k - 1) * std::log1p(1.0L / (n + 1)) - two_pi * ly);
            if (ratio < 0.5L)
                break;
        }
        ph = std::remainder(ph, two_pi);
        T mag = static_cast<T>(std::exp(static_cast<T>(t)));
        sum.add({mag * std::cos(static_cast<T>(ph)), mag * std::sin(static_cast<T>(ph))});
        abs_sum += mag;
        err_sum += mag * (4 + std::fabs(static_cast<T>(t)) +
                          static_cast<T>(eps_l / eps_t) * static_cast<T>(std::fabs(L0) + std::fabs(ls) + decay + std::fabs(ph0) + two_pi * n * std::fabs(lx)));
    }
    // n is the first omitted index
    SeriesValue out;
    std::complex<T> v = sum.value();
    out.value = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    out.abs_sum = static_cast<double>(abs_sum);
    out.rounding = static_cast<double>(eps_t * (err_sum + 2 * std::abs(v))) +
                   std::numeric_limits<double>::epsilon() * std::abs(out.value);
    out.extent = static_cast<int>(n - 1);
    long double ratio = std::exp((k - 1) * std::log1p(1.0L / n) - two_pi * ly);
    if (ratio < 1) {
        long double lt = L0 + std::log(zeta(static_cast<long double>(k - 1))) + (k - 1) * std::log(static_cast<long double>(n)) -
                         two_pi * n * ly - std::log1p(-ratio);
        out.truncation = static_cast<double>(std::exp(lt));
    } else {
        out.truncation = std::numeric_limits<double>::infinity();
    }
    return out;
}

}  // namespace

SeriesValue fourier_em1(int k, std::complex<double> z, LogComplex scale, Precision prec)
{
    if (prec == Precision::Standard)
        return fourier_kernel<double>(k, z, scale, 0, true);
    return fourier_kernel<long double>(k, z, scale, 0, true);
}

SeriesValue fourier_em1_window(int k, std::complex<double> z, LogComplex scale, double window_c)
{
    if (!(window_c > 0))
        throw std::invalid_argument("fourier: window must be positive");
    const double y = z.imag();
    const double centre = k / (2 * kPi * y);
    const double half = window_c * std::sqrt(static_cast<double>(k)) / (2 * kPi * y);
    long long stop = std::max<long long>(1, static_cast<long long>(std::ceil(centre + half)));
    return fourier_kernel<double>(k, z, scale, stop, false);
}

}  // namespace eiszero

#include <cmath>
#include <stdexcept>

#include "eiszero/eisenstein.hpp"

namespace eiszero {

std::complex<double> jacobi_theta(const ThetaArgs& args, double eps)
{
    const long double ti = args.tau.imag();
    if (!(ti > 0))
        throw std::invalid_argument("theta: Im(tau) must be positive");
    if (!(eps > 0))
        throw std::invalid_argument("theta: eps must be positive");
    const long double tr = args.tau.real();
    const long double wr = args.w.real();
    const long double wi = args.w.imag();
    // |term| = exp(-pi n^2 Im tau - 2 pi n Im w), largest near n0
    const long long n0 = std::llround(-wi / ti);
    auto term = [&](long long n) {
        long double nl = static_cast<long double>(n);
        long double lm = -kPiL * nl * nl * ti - 2 * kPiL * nl * wi;
        long double ph = std::remainder(kPiL * nl * nl * tr + 2 * kPiL * nl * wr, 2 * kPiL);
        long double mag = std::exp(lm);
        return std::complex<long double>(mag * std::cos(ph), mag * std::sin(ph));
    };
    CompensatedComplexSum<long double> sum;
    sum.add(term(n0));
    for (long long step = 1;; ++step) {
        auto a = term(n0 + step);
        auto b = term(n0 - step);
        sum.add(a);
        sum.add(b);
        long double scale = std::abs(sum.value()) + 1;
        if (std::abs(a) < eps * scale && std::abs(b) < eps * scale)
            break;
        if (step > 100000000)
            throw std::runtime_error("theta: summation did not terminate");
    }
    std::complex<long double> s = sum.value();
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace eiszero

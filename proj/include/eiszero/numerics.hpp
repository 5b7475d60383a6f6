#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <gmpxx.h>

namespace eiszero {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Precision { Standard, Extended };

// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

// Complex number held as (log|z|, arg z). Zero has log_mag = -inf.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    LogComplex() = default;
    LogComplex(double log_mag_, double phase_) : log_mag(log_mag_), phase(wrap_phase(phase_)) {}

    static LogComplex from_complex(std::complex<double> z);
    static LogComplex from_real(double v);

    std::complex<double> to_complex() const;
    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

    LogComplex operator*(const LogComplex& o) const { return {log_mag + o.log_mag, phase + o.phase}; }
    LogComplex operator/(const LogComplex& o) const { return {log_mag - o.log_mag, phase - o.phase}; }
    LogComplex pow(int e) const { return {log_mag * e, phase * e}; }
};

// Exact rational in lowest terms with positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    explicit ExactRational(mpq_class v);
    ExactRational(long num, long den);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& value() const { return value_; }

    int sign() const { return sgn(value_); }
    // Natural log of |value| to long double precision.
    long double log_abs() const;
    double to_double() const { return value_.get_d(); }
    std::string str() const { return value_.get_str(); }

    bool operator==(const ExactRational& o) const { return value_ == o.value_; }

private:
    mpq_class value_;
};

// log|z| of a big integer, accurate to long double precision.
long double log_abs(const mpz_class& z);

// Bernoulli number B_k for even 2 <= k <= 400, by the exact recurrence.
ExactRational bernoulli(int k);

// gamma_k = -2k / B_k, the Fourier normalisation of E_k.
ExactRational gamma_k_exact(int k);
LogComplex gamma_k(int k);
// log|gamma_k| in long double, plus its sign.
long double gamma_k_log(int k);
int gamma_k_sign(int k);
// The same constant from (2 pi)^k / (Gamma(k) zeta(k)), evaluated in log space.
LogComplex gamma_k_analytic(int k);

// Riemann zeta for real s > 1.
long double zeta(long double s);

// Regularised incomplete gamma functions Q(a, x) = Gamma(a, x) / Gamma(a) and P = 1 - Q.
double reg_gamma_q(double a, double x);
double reg_gamma_p(double a, double x);
// Envelope 3 (e^{-(x-a)^2/(4a)} + e^{-|x-a|/4}) for Q(a, x) when x > a.
double q_tail_envelope(double a, double x);

// Neumaier compensated sum.
template <class T>
class CompensatedSum {
public:
    void add(T v)
    {
        T t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_ = 0;
    T comp_ = 0;
};

template <class T>
class CompensatedComplexSum {
public:
    void add(std::complex<T> v)
    {
        re_.add(v.real());
        im_.add(v.imag());
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<T> re_, im_;
};

}  // namespace eiszero

#pragma once

#include <complex>
#include <optional>

#include "eiszero/eisenstein.hpp"

namespace eiszero {

// Even weights k >= l >= 4, with k - l = 12n + j and l = 6q + a.
struct WeightPair {
    int k = 0;
    int l = 0;
    int n = 0;
    int j = 0;
    int q = 0;
    int a = 0;

    // Rejects k + l in {8, 10, 14}, where the cusp form vanishes, unless allow_degenerate.
    static WeightPair make(int k, int l, bool allow_degenerate = false);
    int weight() const { return k + l; }
    bool operator==(const WeightPair&) const = default;
};

struct DeltaValue {
    std::complex<double> value;
    double error = 0.0;
};

// A real boundary value with its error estimate. sign() is 0 when the value is not
// separated from zero by ten times the error.
struct SignedValue {
    double value = 0.0;
    double error = 0.0;

    int sign() const
    {
        if (std::fabs(value) <= 10 * error)
            return 0;
        return value > 0 ? 1 : -1;
    }
};

// E_k E_l - E_{k+l}, assembled from the E - 1 parts for relative accuracy.
DeltaValue eval_delta(const WeightPair& wp, UpperHalfPoint z, double eps = 1e-14,
                      Precision prec = Precision::Standard);

// |z|^k H_l + |z|^l H_k + H_k H_l - H_{k+l}, which equals |z|^{k+l} Delta.
std::complex<double> delta_h_combination(const WeightPair& wp, UpperHalfPoint z, double eps = 1e-14);

// F_k F_l - F_{k+l} at e^{i theta}.
SignedValue arc_real(const WeightPair& wp, double theta, double eps = 1e-14, Precision prec = Precision::Standard);

// |z|^l Delta at z = 1/2 + iy; same sign as |z|^{k+l} Delta without the overflow.
SignedValue side_real(const WeightPair& wp, double y, double eps = 1e-14, Precision prec = Precision::Standard);

// Arc main term 2cos((k-l)t/2) + 2cos(kt/2)(2i sin(t/2))^{-l} + 2cos(lt/2)(2i sin(t/2))^{-k}.
double m_main(const WeightPair& wp, double theta);
// The same at the sample point 2 pi m/(k-l), written through x = pi(r - j/6)/(12n+j), m = 2n + r.
double m_main_reduced(const WeightPair& wp, int m);

// Side main term cos(lt) + cos(kt)/|z|^{k-l} + (2cos(kt)cos(lt) - cos((k+l)t))/|z|^k with |z| = 1/(2cos t).
double p_main(const WeightPair& wp, double theta);
// The same at theta = pi(2q+d)/l, written through x = (pi/l)(d - a/3).
double p_main_reduced(const WeightPair& wp, int d);

// The seven explicit terms of F_k F_l - F_{k+l} built from the four smallest lattice vectors.
double arc_seven_terms(const WeightPair& wp, double theta);

// Closed-form derivatives of the main terms at pi/3, where the congruence class has one.
struct CornerDerivatives {
    std::optional<double> p1, p2, m1, m2;
};

// Throws std::domain_error when no closed form covers (k mod 6, l mod 6).
CornerDerivatives corner_derivatives(const WeightPair& wp);

}  // namespace eiszero

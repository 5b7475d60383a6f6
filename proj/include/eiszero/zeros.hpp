#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eiszero/delta.hpp"

namespace eiszero {

// Raised when a sign cannot be certified or the side cutoff cannot be established.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ArcSample {
    int m = 0;
    double theta = 0.0;
};

// theta_m = 2 pi m/(k-l) in (pi/3, pi/2], i.e. integers m in (2n + j/6, 3n + j/4].
std::vector<ArcSample> arc_sample_points(const WeightPair& wp);

struct SideSample {
    int d = 0;
    int m = 0;
    double theta = 0.0;
    double y = 0.0;
};

// theta_m = pi m/l in (pi/3, pi/2) with m = 2q + d.
std::vector<SideSample> side_sample_points(int l);

struct PredictedCounts {
    int N = 0;
    int N_prime = 0;
    int T = 0;
    int T_prime = 0;
    double sp = 0.0;
    int total_nontrivial = 0;
    int predicted_A = 0;
    int predicted_B = 0;
    bool operator==(const PredictedCounts&) const = default;
};

// sp_j(l): l, except in the three congruence classes with a later stabilisation.
double stabilization_point(int j, int l);
PredictedCounts predicted_counts(const WeightPair& wp);

struct TrivialOrders {
    int v_i = 0;
    int v_rho = 0;
    bool operator==(const TrivialOrders&) const = default;
};

// Minimal orders at i and rho forced by the valence formula for weight w.
TrivialOrders trivial_orders(int w);

// An interval whose endpoints carry opposite signs of a main term.
struct Witness {
    double lo = 0.0;
    double hi = 0.0;
    int sign_lo = 0;
    int sign_hi = 0;
    std::string rule;
};

struct ExtraZeroProbe {
    std::optional<Witness> arc;  // present when an arc case applies
    std::optional<Witness> side;
    bool arc_extra() const { return arc && arc->sign_lo * arc->sign_hi < 0; }
    bool side_extra() const { return side && side->sign_lo * side->sign_hi < 0; }
};

// Corner value / derivative cascade near pi/3 against the nearest sample point.
// Throws std::domain_error when neither the arc nor the side has a case for this class.
ExtraZeroProbe extra_zero_probe(const WeightPair& wp);

// A real function of one parameter with certified error, evaluated at a given precision.
using SignFunction = std::function<SignedValue(double, Precision)>;

struct SignChangeCount {
    int changes = 0;
    int uncertain = 0;
};

// Sign changes between consecutive certified values; uncertain entries are skipped and counted.
SignChangeCount count_sign_changes(std::span<const SignedValue> values);

// Evaluates f at the points, escalating uncertain signs to extended precision.
// With strict set, a sign that stays uncertain raises CertificationError.
SignChangeCount count_sign_changes(const SignFunction& f, std::span<const double> points, bool strict = true);

struct ScanOptions {
    double eps = 1e-14;
    int oversample = 16;
    bool hunt_interior = true;
    bool probe_orders = true;
    bool parallel_points = false;
};

// A sign change refined by bisection: lo and hi carry opposite certified signs.
struct ZeroLocation {
    double lo = 0.0;
    double hi = 0.0;
    double t = 0.0;
    int sign_lo = 0;
    int sign_hi = 0;
    bool operator==(const ZeroLocation&) const = default;
};

struct BoundaryScan {
    int count = 0;
    std::vector<ZeroLocation> zeros;          // counted zeros, increasing
    std::vector<ZeroLocation> endpoint_roots;  // brackets within 1e-9 of an endpoint, not counted
    int points = 0;
};

// Certified value with sign escalation.
SignedValue certified_value(const SignFunction& f, double t);

// Bisects a bracket with opposite signs down to width tol.
ZeroLocation bisect(const SignFunction& f, double lo, double hi, int sign_lo, int sign_hi, double tol = 1e-12);

// Evaluates f at every point, serial reference and OpenMP versions.
std::vector<SignedValue> evaluate_signs_serial(const SignFunction& f, std::span<const double> points);
std::vector<SignedValue> evaluate_signs_parallel(const SignFunction& f, std::span<const double> points);

// Zeros of F_k F_l - F_{k+l} for theta in (pi/3, pi/2), as theta values.
BoundaryScan count_arc_zeros(const WeightPair& wp, const ScanOptions& opts = {});

struct SideCutoff {
    double y_max = 0.0;
    int sign_above = 0;  // sign of Delta on x = 1/2 for y >= y_max
    double log_abs_a1 = 0.0;
};

// Smallest height where the first Fourier coefficient of Delta dominates all others, certified.
SideCutoff side_cutoff(const WeightPair& wp);

// Zeros of Delta on x = 1/2 for y in (sqrt3/2, y_max), as y values.
BoundaryScan count_side_zeros(const WeightPair& wp, const ScanOptions& opts = {});
BoundaryScan count_side_zeros(const WeightPair& wp, const SideCutoff& cutoff, const ScanOptions& opts);

// Order of vanishing of Delta at z0 from Cauchy coefficients on a small circle.
int order_probe(const WeightPair& wp, UpperHalfPoint z0, int max_order = 6);

struct InteriorZero {
    double x = 0.0;
    double y = 0.0;
    double ratio = 0.0;  // |Delta| relative to the size of its parts
};

// Searches the interior of F below y_max for zeros of Delta off the boundary.
std::vector<InteriorZero> hunt_interior(const WeightPair& wp, double y_max, double eps = 1e-14);

struct Finding {
    std::string kind;
    std::string detail;
    bool failure = false;
    bool operator==(const Finding&) const = default;
};

struct ZeroCountReport {
    WeightPair wp;
    int A = -1;
    int B = -1;
    TrivialOrders trivial;
    std::optional<TrivialOrders> measured;
    PredictedCounts predicted;
    bool valence_ok = false;
    double y_max = 0.0;
    std::vector<ZeroLocation> arc_zeros;   // theta
    std::vector<ZeroLocation> side_zeros;  // y
    std::vector<Finding> findings;
    std::string error;  // non-empty when the audit could not complete

    bool failed() const;
    bool operator==(const ZeroCountReport&) const = default;
};

// Measures A and B, checks the valence identity and compares with the predicted counts.
ZeroCountReport audit(const WeightPair& wp, const ScanOptions& opts = {});

// Weight pairs k >= l, both even, with the given bounds and k + l >= 16.
std::vector<WeightPair> weight_grid(int l_min, int l_max, int k_min, int k_max);

// Audits pairs in order; one pair's failure is recorded in its report and does not stop the rest.
std::vector<ZeroCountReport> audit_range_serial(std::span<const WeightPair> pairs, const ScanOptions& opts = {});
std::vector<ZeroCountReport> audit_range_parallel(std::span<const WeightPair> pairs, const ScanOptions& opts = {},
                                                  int jobs = 0);

}  // namespace eiszero

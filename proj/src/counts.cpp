#include <cmath>
#include <stdexcept>

#include "eiszero/zeros.hpp"

namespace eiszero {

std::vector<ArcSample> arc_sample_points(const WeightPair& wp)
{
    const int D = wp.k - wp.l;
    std::vector<ArcSample> out;
    if (D == 0)
        return out;
    // D/6 < m <= D/4
    for (int m = D / 6 + 1; 4 * m <= D; ++m)
        out.push_back({m, 2 * kPi * m / D});
    return out;
}

std::vector<SideSample> side_sample_points(int l)
{
    if (l < 4 || l % 2 != 0)
        throw std::invalid_argument("side_sample_points: l must be even and >= 4");
    const int q = l / 6, a = l % 6;
    int lo = 1, hi = q - 1;
    if (a == 2)
        hi = q;
    else if (a == 4) {
        lo = 2;
        hi = q + 1;
    }
    std::vector<SideSample> out;
    for (int d = lo; d <= hi; ++d) {
        const int m = 2 * q + d;
        const double theta = kPi * m / l;
        out.push_back({d, m, theta, 0.5 * std::tan(theta)});
    }
    return out;
}

double stabilization_point(int j, int l)
{
    const double L = l;
    if (l % 6 == 0 && j % 6 == 2)
        return (L - 1 + std::sqrt(3 * L * L - 1)) / 2;
    if (l % 6 == 4 && j % 6 == 2)
        return 2 * L;
    if (l % 6 == 4 && j % 6 == 0)
        return (4 * L - 1 + std::sqrt(12 * L * L - 12 * L + 1)) / 2;
    return L;
}

PredictedCounts predicted_counts(const WeightPair& wp)
{
    const int n = wp.n, j = wp.j, l = wp.l, w = wp.k + wp.l;
    const int col = (l % 6) / 2;  // 0, 2, 4 -> 0, 1, 2
    PredictedCounts p;
    p.N = (j == 0 || j == 2 || j == 6) ? n - 1 : n;
    // rows j = 0, 2, ..., 10; offsets from n
    static const int n_prime[6][3] = {{0, 0, -1}, {-1, 0, -1}, {0, 0, 0}, {0, 0, -1}, {0, 1, 0}, {0, 0, 0}};
    p.N_prime = n + n_prime[j / 2][col];
    p.T = l / 6 - (col == 0 ? 2 : 1);
    p.T_prime = l / 6 - (col == 2 ? 0 : 1);
    p.sp = stabilization_point(j, l);
    p.total_nontrivial = w / 12 - (w % 12 == 2 ? 2 : 1);
    if (n >= 1) {
        if (wp.k >= p.sp) {
            p.predicted_A = p.N_prime;
            p.predicted_B = p.T_prime;
        } else {
            p.predicted_A = p.N_prime + 1;
            p.predicted_B = p.T_prime - 1;
        }
    } else {
        p.predicted_A = j == 8 ? 1 : 0;
        p.predicted_B = p.total_nontrivial - p.predicted_A;
    }
    return p;
}

TrivialOrders trivial_orders(int w)
{
    if (w % 2 != 0)
        throw std::invalid_argument("trivial_orders: weight must be even");
    if (w < 4)
        throw std::invalid_argument("trivial_orders: weight must be at least 4");
    switch (w % 12) {
    case 0:
        return {0, 0};
    case 2:
        return {1, 2};
    case 4:
        return {0, 1};
    case 6:
        return {1, 0};
    case 8:
        return {0, 2};
    default:
        return {1, 1};
    }
}

namespace {

int sign_of(double v)
{
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace

ExtraZeroProbe extra_zero_probe(const WeightPair& wp)
{
    const int km = wp.k % 6, lm = wp.l % 6, j = wp.j, n = wp.n, w = wp.k + wp.l;
    const double corner = kPi / 3;
    ExtraZeroProbe out;

    const auto arc = arc_sample_points(wp);
    if (!arc.empty()) {
        const double t_hi = arc.front().theta;
        const int s_hi = sign_of(m_main(wp, t_hi));
        auto at = [&](double t, std::string rule) { return Witness{t, t_hi, sign_of(m_main(wp, t)), s_hi, std::move(rule)}; };
        if (n == 0 && j == 8 && lm != 2) {
            out.arc = at(corner + kPi / (2 * wp.l), "probe at pi/3 + pi/(2l)");
        } else if (lm == 0 && (j == 0 || j == 6)) {
            out.arc = at(corner, "corner value");
        } else if (lm == 2 && (j == 0 || j == 6)) {
            out.arc = at(corner + kPi / (4 * (wp.k - wp.l)), "probe at pi/3 + pi/(4(k-l))");
        } else if (lm == 2 && (j == 2 || j == 8)) {
            out.arc = at(corner, "corner value");
        } else if (lm == 4 && km == 0) {
            out.arc = Witness{corner, t_hi, sign_of(*corner_derivatives(wp).m1), s_hi, "first derivative at pi/3"};
        } else if ((lm == 0 && km == 2) || (lm == 4 && km == 4)) {
            out.arc = Witness{corner, t_hi, sign_of(*corner_derivatives(wp).m2), s_hi, "second derivative at pi/3"};
        }
    }

    const auto side = side_sample_points(wp.l);
    if (!side.empty()) {
        const double t_hi = side.front().theta;
        const int s_hi = sign_of(p_main(wp, t_hi));
        if (w % 6 == 0) {
            out.side = Witness{corner, t_hi, sign_of(p_main(wp, corner)), s_hi, "corner value"};
        } else if (w % 6 == 4 && ((lm == 4 && km == 0) || (lm == 0 && km == 4))) {
            out.side = Witness{corner, t_hi, sign_of(*corner_derivatives(wp).p1), s_hi, "first derivative at pi/3"};
        } else if (w % 6 == 2 && ((lm == 0 && km == 2) || (lm == 4 && km == 4))) {
            out.side = Witness{corner, t_hi, sign_of(*corner_derivatives(wp).p2), s_hi, "second derivative at pi/3"};
        }
    }

    if (!out.arc && !out.side)
        throw std::domain_error("extra_zero_probe: no probe for this congruence class");
    return out;
}

}  // namespace eiszero

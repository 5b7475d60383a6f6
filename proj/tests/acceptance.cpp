// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "eiszero/report.hpp"
#include "eiszero/series.hpp"
#include "eiszero/zeros.hpp"

using namespace eiszero;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int number, const char* name, const std::function<Outcome()>& run)
{
    Outcome o;
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s: %s\n", number, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass)
        ++failures;
}

// Reference zero counts, rows l = 20, 22, 24 and columns k = 56, 58, ..., 84.
constexpr int kRefA[3][15] = {{3, 3, 3, 3, 4, 3, 4, 4, 4, 4, 5, 4, 5, 5, 5},
                              {2, 3, 2, 3, 3, 3, 3, 4, 3, 4, 4, 4, 4, 4, 4},
                              {2, 2, 3, 2, 3, 3, 3, 3, 4, 3, 4, 4, 4, 4, 5}};
constexpr int kRefB[3][15] = {{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
                              {3, 2, 3, 3, 2, 3, 3, 2, 3, 3, 2, 3, 3, 3, 3},
                              {3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3}};
constexpr int kRefAminusN[3][15] = {{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                    {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0},
                                    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};

Outcome tables()
{
    const auto t0 = Clock::now();
    std::vector<WeightPair> pairs;
    for (int l : {20, 22, 24})
        for (int k = 56; k <= 84; k += 2)
            pairs.push_back(WeightPair::make(k, l));
    ScanOptions opts;
    opts.hunt_interior = false;
    opts.probe_orders = false;
    const auto reports = audit_range_parallel(pairs, opts);
    int wrong = 0;
    std::string first;
    for (size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        const int row = static_cast<int>(i) / 15, col = static_cast<int>(i) % 15;
        const bool ok = r.error.empty() && r.A == kRefA[row][col] && r.B == kRefB[row][col] &&
                        r.A - r.predicted.N_prime == kRefAminusN[row][col];
        if (!ok && wrong++ == 0)
            first = " first at (" + std::to_string(r.wp.k) + "," + std::to_string(r.wp.l) + ")";
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << 3 * reports.size() << " cells, " << wrong << " pairs differ" << first << ", " << secs << " s";
    return {wrong == 0 && secs < 300, d.str()};
}

Outcome valence(const std::vector<ZeroCountReport>& grid, double secs)
{
    int bad = 0, errors = 0;
    for (const auto& r : grid) {
        if (!r.error.empty())
            ++errors;
        else if (!r.valence_ok || 12 * (r.A + r.B + 1) + 6 * r.trivial.v_i + 4 * r.trivial.v_rho != r.wp.weight())
            ++bad;
    }
    const RangeSummary s = summarize(grid);
    std::ostringstream d;
    d << grid.size() << " pairs, " << bad << " valence failures, " << errors << " errors, " << s.count_mismatches
      << " enforced count mismatches, " << s.order_mismatches << " order mismatches, " << secs << " s";
    return {bad == 0 && errors == 0 && secs < 1800, d.str()};
}

const ZeroCountReport* find(const std::vector<ZeroCountReport>& grid, int k, int l)
{
    for (const auto& r : grid)
        if (r.wp.k == k && r.wp.l == l)
            return &r;
    return nullptr;
}

Outcome stabilization(const std::vector<ZeroCountReport>& grid)
{
    auto B = [&](int k, int l) { const auto* r = find(grid, k, l); return r && r->error.empty() ? r->B : -1; };
    auto A = [&](int k, int l) { const auto* r = find(grid, k, l); return r && r->error.empty() ? r->A : -1; };
    const int sp2 = static_cast<int>(std::ceil(stabilization_point(2, 42)));
    const int sp0 = static_cast<int>(std::ceil(stabilization_point(0, 22)));
    std::ostringstream d;
    d << "sp_2(42)=" << sp2 << " B(56,42)=" << B(56, 42) << " B(68,42)=" << B(68, 42) << " sp_0(22)=" << sp0
      << " B(80,22)=" << B(80, 22) << " B(82,22)=" << B(82, 22) << " A(82,22)=" << A(82, 22) << " A(70,22)=" << A(70, 22);
    const bool ok = sp2 == 57 && B(56, 42) == 5 && B(68, 42) == 6 && sp0 == 81 && B(80, 22) == 3 && B(82, 22) == 3 &&
                    A(82, 22) == 4 && A(70, 22) == 4;
    return {ok, d.str()};
}

Outcome sample_bounds(const std::vector<ZeroCountReport>& grid)
{
    long checked = 0, violations = 0;
    double worst_arc = 1e300, worst_side = 1e300;
    for (const auto& r : grid) {
        const WeightPair& wp = r.wp;
        const double floor = wp.l % 6 == 0 ? 1.5 : wp.l % 6 == 2 ? 0.8 : 0.31;
        for (const auto& p : arc_sample_points(wp)) {
            const double v = (p.m % 2 == 0 ? 1 : -1) * m_main(wp, p.theta);
            worst_arc = std::min(worst_arc, v - floor);
            violations += v < floor;
            ++checked;
        }
        for (const auto& p : side_sample_points(wp.l)) {
            const double v = (p.d % 2 == 0 ? 1 : -1) * p_main(wp, p.theta);
            worst_side = std::min(worst_side, v - 0.17);
            violations += v < 0.17;
            ++checked;
        }
    }
    std::ostringstream d;
    d << checked << " sample points, " << violations << " violations, smallest margins arc " << worst_arc << " side "
      << worst_side;
    return {violations == 0 && checked > 0, d.str()};
}

std::complex<double> gk_lattice(int k, UpperHalfPoint z)
{
    const LogComplex scale(k * std::log(z.R()), k * z.theta());
    SeriesValue v;
    lattice_em1(std::span<const int>(&k, 1), z.z(), std::span<const LogComplex>(&scale, 1), 1e-12, Precision::Standard,
                std::span<SeriesValue>(&v, 1));
    return v.value;
}

Outcome sandwiches()
{
    long arc_points = 0, arc_bad = 0;
    double arc_worst = 0;
    int pairs = 0;
    for (int l = 14; pairs < 30; l += 6)
        for (int dk : {0, 36, 110}) {
            if (pairs == 30)
                break;
            const WeightPair wp = WeightPair::make(l + dk, l);
            ++pairs;
            for (int i = 0; i < 500; ++i) {
                const double t = kPi / 3 + (kPi / 6) * i / 499.0;
                const double d = std::fabs(arc_real(wp, t).value - m_main(wp, t));
                arc_worst = std::max(arc_worst, d);
                arc_bad += d > 0.091;
                ++arc_points;
            }
        }

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> X(-0.5, 0.5), U(0.0, 1.0);
    long regime_points = 0, regime_bad = 0;
    double worst_ratio[2] = {0, 0};
    for (int k : {200, 300, 400}) {
        const double y_small = std::pow(k, 0.4), y_mid = std::pow(k, 2.0 / 3);
        for (int regime = 0; regime < 2; ++regime)
            for (int i = 0; i < 50; ++i) {
                const double x = X(rng);
                const double y_lo = regime == 0 ? std::sqrt(1 - x * x) : y_small;
                const double y_hi = regime == 0 ? y_small : y_mid;
                const UpperHalfPoint z(x, y_lo + (y_hi - y_lo) * (0.001 + 0.998 * U(rng)));
                const RegimeApprox a = gk_regime_approx(k, z);
                const double envelope = regime == 0 ? 10 * std::exp(-std::pow(k, 1.0 / 6)) : 10 * z.y / std::pow(k, 2.0 / 3);
                const bool right_regime = a.regime == (regime == 0 ? Regime::SmallY : Regime::ThetaMid);
                const double d = std::abs(a.value - gk_lattice(k, z));
                worst_ratio[regime] = std::max(worst_ratio[regime], d / envelope);
                regime_bad += !right_regime || d > envelope;
                ++regime_points;
            }
    }
    std::ostringstream d;
    d << pairs << " pairs x 500 arc points: " << arc_bad << " above 0.091 (max " << arc_worst << "); " << regime_points
      << " regime points: " << regime_bad << " outside envelope (max error/envelope small-y " << worst_ratio[0]
      << ", theta " << worst_ratio[1] << ")";
    return {arc_bad == 0 && regime_bad == 0 && pairs == 30, d.str()};
}

Outcome cross_evaluator()
{
    std::mt19937_64 rng(6);
    // k = 4 is left out: its lattice tail needs a radius beyond the cap even at 1e-8
    std::uniform_int_distribution<int> K(3, 30);
    std::uniform_real_distribution<double> X(-0.5, 0.5), Y(1.0, 12.0);
    int bad = 0;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const int k = 2 * K(rng);
        const UpperHalfPoint z(X(rng), Y(rng));
        const std::complex<double> a = eval_ek_lattice(k, z, 1e-10).value;
        const std::complex<double> b = eval_ek_fourier(k, z);
        const double rel = std::abs(a - b) / std::abs(b);
        worst = std::max(worst, rel);
        bad += !(rel <= 1e-8);
    }
    std::ostringstream d;
    d << "200 points with 6 <= k <= 60, " << bad << " above 1e-8, max relative deviation " << worst;
    return {bad == 0, d.str()};
}

Outcome theta_and_phi()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0), IM(0.2, 5.0);
    const std::complex<double> I(0, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const std::complex<double> w(U(rng), U(rng)), tau(U(rng), IM(rng));
        const std::complex<double> lhs = jacobi_theta(ThetaArgs(w / tau, -1.0 / tau));
        const std::complex<double> rhs = std::sqrt(-I * tau) * std::exp(kPi * I * w * w / tau) * jacobi_theta(ThetaArgs(w, tau));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
    }
    // r where both Phi_0 < 2 and Phi_1 < 1, on a grid over [0.05, 10]
    double lo = 0, hi = 0;
    bool contiguous = true, inside = false;
    for (int i = 0; i <= 4000; ++i) {
        const double r = 0.05 + 9.95 * i / 4000.0;
        const bool both = phi0(r) < 2 && phi1(r) < 1;
        if (both && lo == 0)
            lo = r;
        if (both) {
            if (hi != 0 && r - hi > 0.01)
                contiguous = false;
            hi = r;
        }
    }
    inside = phi0(2.0) < 2 && phi1(2.0) < 1 && lo <= 2 && 2 <= hi;
    std::ostringstream d;
    d << "max relative modularity residual " << worst << "; overlap r in [" << lo << ", " << hi << "]";
    return {worst < 1e-10 && lo > 0 && contiguous && inside, d.str()};
}

Outcome corners()
{
    const double h = 1e-4, rho = kPi / 3;
    auto d1 = [&](const std::function<double(double)>& f) { return (f(rho + h) - f(rho - h)) / (2 * h); };
    auto d2 = [&](const std::function<double(double)>& f) { return (f(rho + h) - 2 * f(rho) + f(rho - h)) / (h * h); };
    auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-4 * std::max(std::fabs(b), 1.0); };
    int covered = 0, forms = 0, bad = 0;
    for (int l = 14; l <= 60; l += 2)
        for (int k = l; k <= 80; k += 2) {
            const WeightPair wp = WeightPair::make(k, l);
            CornerDerivatives c;
            try {
                c = corner_derivatives(wp);
            } catch (const std::domain_error&) {
                continue;
            }
            ++covered;
            const std::function<double(double)> P = [&](double t) { return p_main(wp, t); };
            const std::function<double(double)> M = [&](double t) { return m_main(wp, t); };
            for (auto [form, fd] : {std::pair{c.p1, c.p1 ? d1(P) : 0.0}, {c.p2, c.p2 ? d2(P) : 0.0},
                                    {c.m1, c.m1 ? d1(M) : 0.0}, {c.m2, c.m2 ? d2(M) : 0.0}}) {
                if (!form)
                    continue;
                ++forms;
                bad += !close(*form, fd);
            }
        }
    std::ostringstream d;
    d << covered << " covered pairs, " << forms << " closed forms, " << bad << " off by more than 1e-4 relative";
    return {covered >= 30 && bad == 0, d.str()};
}

Outcome n_zero_rows()
{
    int checked = 0, bad = 0;
    std::string first;
    for (int l = 40; l <= 100; l += 2)
        for (int kp : {0, 2, 4, 6, 8, 10}) {
            const WeightPair wp = WeightPair::make(l + kp, l);
            int A = -1;
            try {
                A = count_arc_zeros(wp).count;
            } catch (const std::exception&) {
            }
            ++checked;
            if (A != (kp == 8 ? 1 : 0) && bad++ == 0)
                first = " first at (" + std::to_string(wp.k) + "," + std::to_string(l) + ") A=" + std::to_string(A);
        }
    std::ostringstream d;
    d << checked << " pairs, " << bad << " with the wrong arc count" << first;
    return {bad == 0, d.str()};
}

Outcome interior(const std::vector<ZeroCountReport>& grid)
{
    const RangeSummary s = summarize(grid);
    int errors = 0;
    for (const auto& r : grid)
        errors += !r.error.empty();
    std::ostringstream d;
    d << grid.size() << " pairs searched, " << s.interior_zeros << " interior zeros, " << errors << " incomplete";
    return {s.interior_zeros == 0 && errors == 0, d.str()};
}

}  // namespace

int main()
{
    const auto t0 = Clock::now();
    const auto pairs = weight_grid(14, 100, 14, 100);
    const auto grid = audit_range_parallel(pairs, ScanOptions{});
    const double grid_secs = seconds_since(t0);
    for (const auto& r : grid)
        for (const auto& f : r.findings)
            if (f.kind == "arc_count" || f.kind == "side_count")
                std::printf("note (%d,%d) %s: %s\n", r.wp.k, r.wp.l, f.kind.c_str(), f.detail.c_str());

    report(1, "table reproduction", [&] { return tables(); });
    report(2, "valence audit", [&] { return valence(grid, grid_secs); });
    report(3, "stabilization", [&] { return stabilization(grid); });
    report(4, "sample-point bounds", [&] { return sample_bounds(grid); });
    report(5, "approximation sandwiches", [&] { return sandwiches(); });
    report(6, "cross-evaluator oracle", [&] { return cross_evaluator(); });
    report(7, "theta modularity and Phi overlap", [&] { return theta_and_phi(); });
    report(8, "corner derivatives", [&] { return corners(); });
    report(9, "n = 0 arc counts", [&] { return n_zero_rows(); });
    report(10, "interior zero hunt", [&] { return interior(grid); });
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

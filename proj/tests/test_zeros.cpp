#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eiszero/zeros.hpp"

using namespace eiszero;

namespace {

const double kRho = kPi / 3;

SignFunction arc_function(const WeightPair& wp)
{
    return [wp](double t, Precision p) { return arc_real(wp, t, 1e-14, p); };
}

SignFunction constant_signs(std::vector<SignedValue> values, std::vector<double> at)
{
    return [values = std::move(values), at = std::move(at)](double t, Precision) {
        const auto it = std::find(at.begin(), at.end(), t);
        return values.at(static_cast<size_t>(it - at.begin()));
    };
}

// Width 1e-12 is only certifiable while |z|^l times the cancellation in Delta stays within double range.
void check_brackets(const BoundaryScan& s, double width = 1e-12)
{
    CHECK(s.count == static_cast<int>(s.zeros.size()));
    for (size_t i = 0; i < s.zeros.size(); ++i) {
        const ZeroLocation& z = s.zeros[i];
        CHECK(z.lo < z.t);
        CHECK(z.t < z.hi);
        CHECK(z.hi - z.lo <= width * std::max(1.0, z.hi));
        CHECK(z.sign_lo * z.sign_hi == -1);
        if (i > 0)
            CHECK(s.zeros[i - 1].hi < z.lo);
    }
}

}  // namespace

TEST_CASE("arc sample points")
{
    CHECK(arc_sample_points(WeightPair::make(56, 20)).size() == 3);
    CHECK(arc_sample_points(WeightPair::make(64, 20)).size() == 4);
    CHECK(arc_sample_points(WeightPair::make(30, 30)).empty());
}

TEST_CASE("property: arc sample-point count and range")
{
    for (int l = 14; l <= 60; l += 2)
        for (int k = l + 2; k <= 200; k += 2) {
            const WeightPair wp = WeightPair::make(k, l);
            const auto pts = arc_sample_points(wp);
            const bool short_class = wp.j == 0 || wp.j == 2 || wp.j == 6;
            CHECK(static_cast<int>(pts.size()) == (short_class ? wp.n : wp.n + 1));
            for (const auto& p : pts) {
                CHECK(p.theta > kRho);
                CHECK(p.theta <= kPi / 2 + 1e-15);
                CHECK(p.theta == doctest::Approx(2 * kPi * p.m / (k - l)));
            }
        }
}

TEST_CASE("side sample points")
{
    auto ds = [](int l) {
        std::vector<int> d;
        for (const auto& p : side_sample_points(l))
            d.push_back(p.d);
        return d;
    };
    CHECK(ds(24) == std::vector<int>{1, 2, 3});
    CHECK(ds(20) == std::vector<int>{1, 2, 3});
    CHECK(ds(22) == std::vector<int>{2, 3, 4});
    for (int l = 14; l <= 200; l += 2)
        for (const auto& p : side_sample_points(l)) {
            CHECK(p.theta >= kRho);
            CHECK(p.theta < kPi / 2);
            CHECK(std::fabs(std::cos(l * p.theta) - (p.m % 2 == 0 ? 1 : -1)) < 1e-9);
            CHECK(p.y == doctest::Approx(0.5 * std::tan(p.theta)));
        }
}

TEST_CASE("stabilization points")
{
    CHECK(std::ceil(stabilization_point(2, 42)) == 57);
    CHECK(stabilization_point(2, 42) == doctest::Approx((41 + std::sqrt(5291.0)) / 2));
    CHECK(std::ceil(stabilization_point(0, 22)) == 81);
    CHECK(stabilization_point(4, 22) == 22);
    CHECK(stabilization_point(8, 22) == 44);
}

TEST_CASE("predicted counts")
{
    const PredictedCounts p = predicted_counts(WeightPair::make(58, 22));
    CHECK(p.N_prime == 2);
    CHECK(predicted_counts(WeightPair::make(82, 22)).predicted_A == 4);
    CHECK(predicted_counts(WeightPair::make(82, 22)).predicted_B == 3);
    CHECK(predicted_counts(WeightPair::make(30, 22)).predicted_A == 1);
}

TEST_CASE("property: predicted count invariants")
{
    for (int l = 14; l <= 120; l += 2)
        for (int k = l; k <= 240; k += 2) {
            const WeightPair wp = WeightPair::make(k, l);
            const PredictedCounts p = predicted_counts(wp);
            CHECK(p.N <= p.N_prime);
            CHECK(p.N_prime <= p.N + 1);
            CHECK(p.T <= p.T_prime);
            CHECK(p.sp >= l);
            const int w = k + l;
            CHECK(p.total_nontrivial == w / 12 - (w % 12 == 2 ? 2 : 1));
            // predictions always satisfy the valence identity
            const TrivialOrders t = trivial_orders(w);
            CHECK(12 * (p.predicted_A + p.predicted_B + 1) + 6 * t.v_i + 4 * t.v_rho == w);
        }
}

TEST_CASE("trivial orders")
{
    CHECK(trivial_orders(24) == TrivialOrders{0, 0});
    CHECK(trivial_orders(26) == TrivialOrders{1, 2});
    CHECK(trivial_orders(20) == TrivialOrders{0, 2});
    CHECK_THROWS_AS(trivial_orders(27), std::invalid_argument);
    for (int w = 16; w <= 400; w += 2) {
        const TrivialOrders t = trivial_orders(w);
        CHECK((w - 6 * t.v_i - 4 * t.v_rho) % 12 == 0);
        // minimal: no smaller pair in range is integral
        for (int vi = 0; vi <= 1; ++vi)
            for (int vr = 0; vr <= 2; ++vr)
                if ((w - 6 * vi - 4 * vr) % 12 == 0)
                    CHECK((vi == t.v_i && vr == t.v_rho));
    }
}

TEST_CASE("order of vanishing at i and rho")
{
    CHECK(order_probe(WeightPair::make(16, 4), UpperHalfPoint::on_arc(kRho)) == 2);
    CHECK(order_probe(WeightPair::make(16, 4), UpperHalfPoint::on_arc(kPi / 2)) == 0);
    CHECK(order_probe(WeightPair::make(16, 10), UpperHalfPoint::on_arc(kPi / 2)) == 1);
    CHECK(order_probe(WeightPair::make(16, 10), UpperHalfPoint::on_arc(kRho)) == 2);
    CHECK(order_probe(WeightPair::make(36, 24), UpperHalfPoint::on_arc(kRho)) == 0);
}

TEST_CASE("counting sign changes")
{
    const std::vector<SignedValue> alt = {{1, 0}, {-1, 0}, {1, 0}, {-1, 0}};
    CHECK(count_sign_changes(alt).changes == 3);
    const std::vector<SignedValue> same = {{1, 0}, {2, 0}, {3, 0}};
    CHECK(count_sign_changes(same).changes == 0);
    const std::vector<SignedValue> fuzzy = {{1, 0}, {0.01, 0.01}, {-1, 0}};
    const SignChangeCount c = count_sign_changes(fuzzy);
    CHECK(c.changes == 1);
    CHECK(c.uncertain == 1);

    const std::vector<double> at = {0.0, 1.0, 2.0};
    const SignFunction f = constant_signs(fuzzy, at);
    CHECK_THROWS_AS(count_sign_changes(f, at, true), CertificationError);
    CHECK(count_sign_changes(f, at, false).uncertain == 1);

    const WeightPair wp = WeightPair::make(56, 20);
    std::vector<double> thetas;
    for (const auto& p : arc_sample_points(wp))
        thetas.push_back(p.theta);
    CHECK(count_sign_changes(arc_function(wp), thetas).changes == 2);
    // with the corner, whose value is 6
    thetas.insert(thetas.begin(), kRho + 1e-6);
    CHECK(count_sign_changes(arc_function(wp), thetas).changes == 3);
}

TEST_CASE("arc and side counts")
{
    const BoundaryScan a = count_arc_zeros(WeightPair::make(56, 20));
    CHECK(a.count == 3);
    check_brackets(a);
    CHECK(count_side_zeros(WeightPair::make(56, 22)).count == 3);
    const BoundaryScan b68 = count_side_zeros(WeightPair::make(68, 42));
    CHECK(b68.count == 6);
    check_brackets(b68);
    CHECK(count_side_zeros(WeightPair::make(56, 42)).count == 5);
}

TEST_CASE("property: refinement soundness")
{
    for (auto [k, l] : {std::pair{64, 20}, {82, 22}, {100, 40}, {150, 60}, {200, 200}}) {
        const WeightPair wp = WeightPair::make(k, l);
        const BoundaryScan a = count_arc_zeros(wp);
        check_brackets(a);
        for (const auto& z : a.zeros) {
            CHECK(z.lo > kRho);
            CHECK(z.hi < kPi / 2);
            CHECK(certified_value(arc_function(wp), z.lo).sign() == z.sign_lo);
            CHECK(certified_value(arc_function(wp), z.hi).sign() == z.sign_hi);
        }
        const BoundaryScan b = count_side_zeros(wp);
        check_brackets(b, k + l <= 200 ? 1e-12 : 1e-6);
        const SignFunction side = [wp](double y, Precision p) { return side_real(wp, y, 1e-14, p); };
        for (const auto& z : b.zeros) {
            CHECK(z.lo > std::sqrt(3.0) / 2);
            CHECK(certified_value(side, z.lo).sign() == z.sign_lo);
            CHECK(certified_value(side, z.hi).sign() == z.sign_hi);
        }
    }
}

TEST_CASE("property: arc zeros equidistribute for k - l >= 120")
{
    for (auto [k, l] : {std::pair{140, 20}, {164, 40}, {200, 80}, {260, 100}}) {
        const WeightPair wp = WeightPair::make(k, l);
        const BoundaryScan a = count_arc_zeros(wp);
        const double h = 2 * kPi / (k - l);
        int checked = 0;
        for (int m = 0; (m + 1) * h < kPi / 2; ++m) {
            const double lo = m * h, hi = (m + 1) * h;
            if (lo <= kRho + 3 * h)
                continue;
            const auto inside = std::count_if(a.zeros.begin(), a.zeros.end(), [&](const ZeroLocation& z) { return z.t > lo && z.t < hi; });
            CHECK(inside == 1);
            ++checked;
        }
        CHECK(checked >= 5);
    }
}

TEST_CASE("side cutoff")
{
    for (auto [k, l] : {std::pair{56, 22}, {68, 42}, {100, 100}, {200, 40}}) {
        const WeightPair wp = WeightPair::make(k, l);
        const SideCutoff c = side_cutoff(wp);
        CHECK(c.y_max >= 1.0);
        CHECK(std::abs(c.sign_above) == 1);
        // no sign change above the cutoff
        for (double f : {1.0, 1.1, 1.5, 2.0, 4.0})
            CHECK(side_real(wp, c.y_max * f).sign() == c.sign_above);
    }
    // grows with the smaller weight, which sets the first coefficient
    CHECK(side_cutoff(WeightPair::make(100, 100)).y_max > side_cutoff(WeightPair::make(100, 42)).y_max);
}

TEST_CASE("extra zero probe")
{
    // l = 0 mod 6, j = 0: corner value 6 against a negative first sample
    const ExtraZeroProbe a = extra_zero_probe(WeightPair::make(60, 24));
    REQUIRE(a.arc);
    CHECK(a.arc_extra());
    CHECK(m_main(WeightPair::make(60, 24), kRho) == doctest::Approx(6.0));
    CHECK(m_main(WeightPair::make(60, 24), a.arc->hi) <= -1.5);

    // l = 0 mod 6, j = 2 mod 6, k beyond x+: P'' at the corner is at least 2
    for (int k : {38, 44, 50, 62}) {
        const WeightPair wp = WeightPair::make(k, 24);
        REQUIRE(k > stabilization_point(wp.j, 24));
        const ExtraZeroProbe p = extra_zero_probe(wp);
        REQUIRE(p.side);
        CHECK(p.side_extra());
        CHECK(*corner_derivatives(wp).p2 >= 2);
    }

    // n = 0, j = 8: probe just inside the corner
    for (int l : {24, 40, 60, 90}) {
        const WeightPair wp = WeightPair::make(l + 8, l);
        const ExtraZeroProbe p = extra_zero_probe(wp);
        REQUIRE(p.arc);
        CHECK(p.arc_extra());
        const double phi = kRho + kPi / (2 * l);
        CHECK(std::fabs(2 * std::cos(4 * phi) + 1) <= 12.0 / l);
        CHECK(m_main(wp, phi) < 0);
        CHECK(m_main(wp, kPi / 2) == doctest::Approx(2.0).epsilon(0.01));
    }

    CHECK_THROWS_AS(extra_zero_probe(WeightPair::make(36, 20)), std::domain_error);
}

TEST_CASE("audit")
{
    const ZeroCountReport r = audit(WeightPair::make(82, 22));
    CHECK(r.A == 4);
    CHECK(r.B == 3);
    CHECK(r.valence_ok);
    CHECK_FALSE(r.failed());
    CHECK(r.measured == r.trivial);

    const ZeroCountReport s = audit(WeightPair::make(70, 22));
    CHECK(s.A == 4);
    CHECK(s.B == 2);
    CHECK(s.valence_ok);
    CHECK_FALSE(s.failed());
    CHECK(static_cast<int>(s.arc_zeros.size()) == s.A);
    CHECK(static_cast<int>(s.side_zeros.size()) == s.B);
}

TEST_CASE("property: valence identity on a small grid")
{
    ScanOptions opts;
    opts.hunt_interior = false;
    for (const auto& wp : weight_grid(14, 30, 14, 60)) {
        const ZeroCountReport r = audit(wp, opts);
        CHECK(r.error.empty());
        CHECK(12 * (r.A + r.B + 1) + 6 * r.trivial.v_i + 4 * r.trivial.v_rho == wp.weight());
        CHECK(r.valence_ok);
    }
}

TEST_CASE("weight grid")
{
    const auto g = weight_grid(14, 100, 14, 100);
    CHECK(g.size() == 990);
    for (const auto& wp : g) {
        CHECK(wp.k >= wp.l);
        CHECK(wp.l >= 14);
        CHECK(wp.k <= 100);
    }
    CHECK(weight_grid(4, 4, 4, 12).size() == 1);  // only (12, 4)
    CHECK_THROWS_AS(weight_grid(20, 14, 14, 100), std::invalid_argument);
}

TEST_CASE("serial and parallel evaluation agree")
{
    const WeightPair wp = WeightPair::make(100, 40);
    std::vector<double> ts;
    for (int i = 1; i < 400; ++i)
        ts.push_back(kRho + (kPi / 6) * i / 400.0);
    const auto a = evaluate_signs_serial(arc_function(wp), ts);
    const auto b = evaluate_signs_parallel(arc_function(wp), ts);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].error == b[i].error);
    }

    ScanOptions opts;
    opts.hunt_interior = false;
    const auto grid = weight_grid(20, 24, 56, 64);
    const auto rs = audit_range_serial(grid, opts);
    const auto rp = audit_range_parallel(grid, opts, 2);
    CHECK(rs == rp);
}

TEST_CASE("per-pair failures are isolated")
{
    std::vector<WeightPair> pairs = {WeightPair::make(30, 30), WeightPair::make(56, 20)};
    ScanOptions opts;
    opts.oversample = 0;  // rejected by the scans
    const auto rs = audit_range_serial(pairs, opts);
    REQUIRE(rs.size() == 2);
    for (const auto& r : rs) {
        CHECK_FALSE(r.error.empty());
        CHECK(r.failed());
    }
}

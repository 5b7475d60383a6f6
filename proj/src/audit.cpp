#include <algorithm>
#include <cmath>
#include <sstream>

#include "eiszero/zeros.hpp"

namespace eiszero {

namespace {

// Count assertions guarded by an ineffective constant are enforced from this l upward.
constexpr int kAssertFromL = 40;

std::string describe(const ZeroLocation& z)
{
    std::ostringstream s;
    s.precision(12);
    s << "bracket [" << z.lo << ", " << z.hi << "]";
    return s.str();
}

}  // namespace

bool ZeroCountReport::failed() const
{
    if (!error.empty() || !valence_ok)
        return true;
    return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.failure; });
}

ZeroCountReport audit(const WeightPair& wp, const ScanOptions& opts)
{
    if (wp.l < 4 || wp.k < wp.l)
        throw std::invalid_argument("audit: needs k >= l >= 4");
    const int w = wp.weight();
    ZeroCountReport r;
    r.wp = wp;
    r.trivial = trivial_orders(w);
    r.predicted = predicted_counts(wp);

    const BoundaryScan arc = count_arc_zeros(wp, opts);
    const SideCutoff cutoff = side_cutoff(wp);
    const BoundaryScan side = count_side_zeros(wp, cutoff, opts);
    r.A = arc.count;
    r.B = side.count;
    r.y_max = cutoff.y_max;
    r.arc_zeros = arc.zeros;
    r.side_zeros = side.zeros;

    r.valence_ok = 12 * (r.A + r.B + 1) + 6 * r.trivial.v_i + 4 * r.trivial.v_rho == w;
    if (!r.valence_ok) {
        std::ostringstream s;
        s << "A + B + v_i/2 + v_rho/3 + 1 = " << r.A + r.B + 0.5 * r.trivial.v_i + r.trivial.v_rho / 3.0 + 1
          << " but (k+l)/12 = " << w / 12.0;
        r.findings.push_back({"valence", s.str(), true});
    }

    for (const auto& z : arc.endpoint_roots)
        r.findings.push_back({"endpoint_root_arc", describe(z), false});
    for (const auto& z : side.endpoint_roots)
        r.findings.push_back({"endpoint_root_side", describe(z), false});

    const PredictedCounts& p = r.predicted;
    const bool stabilized = wp.n >= 1 && wp.k >= p.sp;
    const bool enforce = stabilized && wp.l >= kAssertFromL;
    if (r.A != p.predicted_A) {
        std::ostringstream s;
        s << "A = " << r.A << ", predicted " << p.predicted_A << (stabilized ? "" : " (extrapolated rule)");
        r.findings.push_back({"arc_count", s.str(), enforce});
    }
    if (r.B != p.predicted_B) {
        std::ostringstream s;
        s << "B = " << r.B << ", predicted " << p.predicted_B << (stabilized ? "" : " (extrapolated rule)");
        r.findings.push_back({"side_count", s.str(), enforce});
    }

    if (opts.probe_orders) {
        const TrivialOrders m{order_probe(wp, UpperHalfPoint{0.0, 1.0}),
                              order_probe(wp, UpperHalfPoint::on_arc(kPi / 3))};
        r.measured = m;
        if (!(m == r.trivial)) {
            std::ostringstream s;
            s << "orders at (i, rho) = (" << m.v_i << ", " << m.v_rho << "), forced (" << r.trivial.v_i << ", "
              << r.trivial.v_rho << ")";
            r.findings.push_back({"order", s.str(), true});
        }
    }

    if (opts.hunt_interior) {
        for (const auto& z : hunt_interior(wp, cutoff.y_max, opts.eps)) {
            std::ostringstream s;
            s.precision(12);
            s << "z = " << z.x << " + " << z.y << "i, relative |Delta| = " << z.ratio;
            r.findings.push_back({"interior_zero", s.str(), true});
        }
    }
    return r;
}

std::vector<WeightPair> weight_grid(int l_min, int l_max, int k_min, int k_max)
{
    if (l_min > l_max || k_min > k_max)
        throw std::invalid_argument("weight_grid: empty range");
    std::vector<WeightPair> out;
    for (int l = std::max(4, l_min + (l_min & 1)); l <= l_max; l += 2) {
        int k0 = std::max(k_min, l);
        k0 += k0 & 1;
        for (int k = k0; k <= k_max; k += 2) {
            const int w = k + l;
            if (w < 16)
                continue;
            out.push_back(WeightPair::make(k, l));
        }
    }
    return out;
}

}  // namespace eiszero

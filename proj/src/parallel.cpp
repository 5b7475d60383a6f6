#include <omp.h>

#include "eiszero/zeros.hpp"

namespace eiszero {

namespace {

ZeroCountReport audit_isolated(const WeightPair& wp, const ScanOptions& opts)
{
    try {
        return audit(wp, opts);
    } catch (const std::exception& e) {
        ZeroCountReport r;
        r.wp = wp;
        r.error = e.what();
        return r;
    }
}

}  // namespace

std::vector<ZeroCountReport> audit_range_serial(std::span<const WeightPair> pairs, const ScanOptions& opts)
{
    std::vector<ZeroCountReport> out;
    out.reserve(pairs.size());
    for (const auto& wp : pairs)
        out.push_back(audit_isolated(wp, opts));
    return out;
}

std::vector<ZeroCountReport> audit_range_parallel(std::span<const WeightPair> pairs, const ScanOptions& opts, int jobs)
{
    std::vector<ZeroCountReport> out(pairs.size());
    ScanOptions inner = opts;
    inner.parallel_points = false;
    const long long n = static_cast<long long>(pairs.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    // results land at their own index, so the output order does not depend on scheduling
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = n - 1; i >= 0; --i)
        out[i] = audit_isolated(pairs[i], inner);
    return out;
}

}  // namespace eiszero

#include "econokit/impact.hpp"

#include "econokit/errors.hpp"

namespace econokit {

std::vector<std::uint64_t> district_totals(const DistrictCounts& counts) {
    std::vector<std::uint64_t> totals(counts.districts.size(), 0);
    for (std::size_t i = 0; i < counts.counts.size(); ++i) {
        for (std::uint64_t c : counts.counts[i]) {
            totals[i] += c;
        }
    }
    return totals;
}

FrequencyVector relative_frequency(const DistrictCounts& counts) {
    const auto totals = district_totals(counts);
    std::uint64_t grand = 0;
    for (std::uint64_t t : totals) {
        grand += t;
    }
    if (grand == 0) {
        throw EmptyPeriod("no bookings in period " + counts.period_id);
    }
    FrequencyVector out;
    out.period = counts.period_id;
    out.districts = counts.districts;
    out.p.resize(totals.size());
    for (std::size_t i = 0; i < totals.size(); ++i) {
        out.p[i] = static_cast<double>(totals[i]) / static_cast<double>(grand);
    }
    return out;
}

ImpactRatios impact_ratio(const FrequencyVector& after, const FrequencyVector& before) {
    if (after.districts != before.districts) {
        throw DistrictMismatch("before/after district lists differ");
    }
    ImpactRatios out;
    out.before = before.period;
    out.after = after.period;
    out.districts = before.districts;
    out.q.resize(before.p.size());
    for (std::size_t i = 0; i < before.p.size(); ++i) {
        if (before.p[i] == 0.0) {
            out.q[i] = std::nullopt;
        } else {
            out.q[i] = after.p[i] / before.p[i];
        }
    }
    return out;
}

ImpactRatios impact_ratio_from_counts(std::span<const std::uint64_t> n_after,
                                      std::span<const std::uint64_t> n_before,
                                      std::uint64_t total_after, std::uint64_t total_before,
                                      std::vector<std::string> districts) {
    if (total_before == 0 || total_after == 0) {
        throw ZeroTotal("period totals must be positive");
    }
    if (n_after.size() != n_before.size() || n_after.size() != districts.size()) {
        throw DistrictMismatch("count vectors and district list must agree in length");
    }
    ImpactRatios out;
    out.districts = std::move(districts);
    out.q.resize(n_after.size());
    const double total_ratio = static_cast<double>(total_after) / static_cast<double>(total_before);
    for (std::size_t i = 0; i < n_after.size(); ++i) {
        if (n_before[i] == 0) {
            out.q[i] = std::nullopt;
        } else {
            const double district_ratio =
                static_cast<double>(n_after[i]) / static_cast<double>(n_before[i]);
            out.q[i] = district_ratio / total_ratio;
        }
    }
    return out;
}

}  // namespace econokit

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "econokit/ingest.hpp"

namespace econokit {

// District shares of available hotels within one period.
struct FrequencyVector {
    std::string period;
    std::vector<std::string> districts;
    std::vector<double> p;  // sums to 1
};

// p_i = sum_t x_i(t) / sum_i sum_t x_i(t). Throws EmptyPeriod when the
// period holds no counts at all.
FrequencyVector relative_frequency(const DistrictCounts& counts);

// After/before ratio of district shares. Entries with a zero before-share
// are undefined (nullopt), never a sentinel number.
struct ImpactRatios {
    std::string before;
    std::string after;
    std::vector<std::string> districts;
    std::vector<std::optional<double>> q;
};

ImpactRatios impact_ratio(const FrequencyVector& after, const FrequencyVector& before);

// Same ratio straight from counts: (n_after/n_before) / (N_after/N_before).
// Throws ZeroTotal when either total is zero.
ImpactRatios impact_ratio_from_counts(std::span<const std::uint64_t> n_after,
                                      std::span<const std::uint64_t> n_before,
                                      std::uint64_t total_after, std::uint64_t total_before,
                                      std::vector<std::string> districts);

// Per-district totals over the period, in district order.
std::vector<std::uint64_t> district_totals(const DistrictCounts& counts);

}  // namespace econokit

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "econokit/dates.hpp"

namespace econokit {

// Log-likelihood gain of splitting a series at each admissible index into
// two independent Gaussians versus keeping one. gains[k] corresponds to a
// split leaving first_split + k points on the left; candidates whose side
// standard deviation is degenerate (< 1e-12 relative to the whole span)
// are excluded and stored as NaN.
struct SplitGainProfile {
    int first_split = 0;
    std::vector<double> gains;
    int best_split = 0;
    double best_gain = 0.0;
};

// Closed form n*ln(sigma) - t*ln(sigma_L) - (n-t)*ln(sigma_R) with
// maximum-likelihood standard deviations, evaluated in O(n) from prefix
// sums. Throws TooShort if n < 2*min_side, AllDegenerate if every
// candidate is excluded.
SplitGainProfile split_gain_profile(std::span<const double> xs, int min_side);

// Maximal contiguous span modelled as one stationary Gaussian.
// Indices are 0-based and inclusive; variance is the maximum-likelihood
// estimate (divisor = span length). label is the variance quintile 1..5,
// 0 while unset.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;
    double mean = 0.0;
    double variance = 0.0;
    int label = 0;
};

struct Segmentation {
    std::string ticker;
    std::vector<Segment> segments;  // partition of [0, n), left to right
    double min_gain = 0.0;
};

// Recursive segmentation: split a span at its best gain while the gain
// exceeds min_gain, then recurse into both sides (left first). Ties in the
// argmax break toward the smallest split index.
Segmentation segment_series(std::span<const double> xs, double min_gain, int min_side);

// Ranks segments by variance ascending (ties by start index) and labels
// rank r of m with quintile ceil(5r/m).
void quintile_labels(std::span<Segment> segments);

// One ticker's labelled segmentation tied to its trading calendar.
struct LabelledSeries {
    std::string ticker;
    std::vector<Date> dates;        // strictly increasing, one per series point
    std::vector<Segment> segments;  // labelled partition of [0, dates.size())
};

enum class QuintileCounting {
    SpanDays,      // a segment counts on every calendar day it covers
    StartDayOnly,  // a segment counts only on its start date
};

struct RegimeCounts {
    std::vector<Date> dates;
    std::vector<std::uint32_t> starts;                   // segment starts per day
    std::array<std::vector<std::uint32_t>, 5> quintile;  // active segments per label per day
};

// calendar must be sorted and unique; counts cover exactly those days.
RegimeCounts regime_counts(std::span<const LabelledSeries> series,
                           std::span<const Date> calendar,
                           QuintileCounting counting = QuintileCounting::SpanDays);

}  // namespace econokit

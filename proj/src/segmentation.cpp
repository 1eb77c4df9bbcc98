#include "econokit/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "econokit/errors.hpp"

namespace econokit {

namespace {

constexpr double kDegenerateSigmaRel = 1e-12;

// Prefix sums of x and x^2 with compensated accumulation, giving O(1)
// mean/variance for any subspan. Differencing two large prefixes cancels
// catastrophically when a short span has tiny variance, so spans up to
// kDirectSpan points fall back to a direct two-pass evaluation; the
// fallback work per candidate is bounded, keeping the profile O(n).
class SpanStats {
public:
    static constexpr std::size_t kDirectSpan = 32;

    explicit SpanStats(std::span<const double> xs) : xs_(xs) {
        sum_.resize(xs.size() + 1, 0.0);
        sumsq_.resize(xs.size() + 1, 0.0);
        double s = 0.0;
        double sc = 0.0;  // Neumaier compensation, added back at readout
        double q = 0.0;
        double qc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            accumulate(s, sc, xs[i]);
            accumulate(q, qc, xs[i] * xs[i]);
            sum_[i + 1] = s + sc;
            sumsq_[i + 1] = q + qc;
        }
    }

    // inclusive bounds
    double mean(std::size_t l, std::size_t r) const {
        const std::size_t m = r - l + 1;
        if (m <= kDirectSpan) {
            double s = 0.0;
            for (std::size_t i = l; i <= r; ++i) {
                s += xs_[i];
            }
            return s / static_cast<double>(m);
        }
        return (sum_[r + 1] - sum_[l]) / static_cast<double>(m);
    }

    // maximum-likelihood variance, clamped at zero against cancellation
    double variance(std::size_t l, std::size_t r) const {
        const std::size_t m = r - l + 1;
        if (m <= kDirectSpan) {
            const double mu = mean(l, r);
            double acc = 0.0;
            for (std::size_t i = l; i <= r; ++i) {
                acc += (xs_[i] - mu) * (xs_[i] - mu);
            }
            return acc / static_cast<double>(m);
        }
        const double s = sum_[r + 1] - sum_[l];
        const double q = sumsq_[r + 1] - sumsq_[l];
        return std::max(0.0, (q - s * s / static_cast<double>(m)) / static_cast<double>(m));
    }

private:
    static void accumulate(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    std::span<const double> xs_;
    std::vector<double> sum_;
    std::vector<double> sumsq_;
};

struct SpanGain {
    bool found = false;       // at least one non-degenerate candidate
    int best_split = 0;       // points on the left side
    double best_gain = 0.0;
};

// Best split of xs[l..r]; fills gains (resized to the admissible range)
// when collect is non-null.
SpanGain best_split_of_span(const SpanStats& stats, std::size_t l, std::size_t r, int min_side,
                            std::vector<double>* collect) {
    const std::size_t n = r - l + 1;
    const int t_last = static_cast<int>(n) - min_side;
    if (collect) {
        collect->assign(static_cast<std::size_t>(t_last - min_side + 1),
                        std::numeric_limits<double>::quiet_NaN());
    }
    const double sigma = std::sqrt(stats.variance(l, r));
    const double sigma_floor = kDegenerateSigmaRel * (sigma + 1e-300);
    const double n_log_sigma = static_cast<double>(n) * std::log(sigma);

    SpanGain out;
    for (int t = min_side; t <= t_last; ++t) {
        const double sigma_left = std::sqrt(stats.variance(l, l + static_cast<std::size_t>(t) - 1));
        const double sigma_right = std::sqrt(stats.variance(l + static_cast<std::size_t>(t), r));
        if (sigma_left < sigma_floor || sigma_right < sigma_floor) {
            continue;
        }
        const double gain = n_log_sigma - t * std::log(sigma_left) -
                            (static_cast<double>(n) - t) * std::log(sigma_right);
        if (collect) {
            (*collect)[static_cast<std::size_t>(t - min_side)] = gain;
        }
        if (!out.found || gain > out.best_gain) {
            out.found = true;
            out.best_split = t;
            out.best_gain = gain;
        }
    }
    return out;
}

}  // namespace

SplitGainProfile split_gain_profile(std::span<const double> xs, int min_side) {
    if (min_side < 1) {
        throw Error("min_side must be at least 1");
    }
    const std::size_t n = xs.size();
    if (n < 2 * static_cast<std::size_t>(min_side)) {
        throw TooShort("series of length " + std::to_string(n) + " cannot be split with min_side " +
                       std::to_string(min_side));
    }
    const SpanStats stats(xs);
    SplitGainProfile profile;
    profile.first_split = min_side;
    const SpanGain best = best_split_of_span(stats, 0, n - 1, min_side, &profile.gains);
    if (!best.found) {
        throw AllDegenerate("every split candidate has a degenerate side variance");
    }
    profile.best_split = best.best_split;
    profile.best_gain = best.best_gain;
    return profile;
}

Segmentation segment_series(std::span<const double> xs, double min_gain, int min_side) {
    if (min_gain <= 0.0) {
        throw Error("min_gain must be positive");
    }
    if (min_side < 1) {
        throw Error("min_side must be at least 1");
    }
    if (xs.empty()) {
        throw EmptySeries("cannot segment an empty series");
    }
    const SpanStats stats(xs);

    Segmentation result;
    result.min_gain = min_gain;
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    stack.emplace_back(0, xs.size() - 1);
    while (!stack.empty()) {
        const auto [l, r] = stack.back();
        stack.pop_back();
        const std::size_t len = r - l + 1;
        bool terminal = true;
        if (len >= 2 * static_cast<std::size_t>(min_side)) {
            const SpanGain best = best_split_of_span(stats, l, r, min_side, nullptr);
            if (best.found && best.best_gain > min_gain) {
                const std::size_t boundary = l + static_cast<std::size_t>(best.best_split);
                stack.emplace_back(boundary, r);      // popped after the left span
                stack.emplace_back(l, boundary - 1);
                terminal = false;
            }
        }
        if (terminal) {
            result.segments.push_back(
                Segment{l, r, stats.mean(l, r), stats.variance(l, r), 0});
        }
    }
    return result;
}

void quintile_labels(std::span<Segment> segments) {
    const std::size_t m = segments.size();
    if (m == 0) {
        return;
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (segments[a].variance != segments[b].variance) {
            return segments[a].variance < segments[b].variance;
        }
        return segments[a].start < segments[b].start;
    });
    for (std::size_t rank = 1; rank <= m; ++rank) {
        segments[order[rank - 1]].label = static_cast<int>((5 * rank + m - 1) / m);
    }
}

RegimeCounts regime_counts(std::span<const LabelledSeries> series,
                           std::span<const Date> calendar, QuintileCounting counting) {
    RegimeCounts out;
    out.dates.assign(calendar.begin(), calendar.end());
    const std::size_t days = out.dates.size();
    out.starts.assign(days, 0);
    for (auto& q : out.quintile) {
        q.assign(days, 0);
    }
    if (days == 0) {
        return out;
    }

    // difference arrays, integrated once at the end
    std::array<std::vector<std::int64_t>, 5> diff;
    for (auto& d : diff) {
        d.assign(days + 1, 0);
    }

    auto index_of = [&](Date d) {
        return static_cast<std::size_t>(
            std::lower_bound(out.dates.begin(), out.dates.end(), d) - out.dates.begin());
    };

    for (const auto& ls : series) {
        for (const auto& seg : ls.segments) {
            if (seg.label < 1 || seg.label > 5) {
                throw Error("regime_counts requires labelled segments (ticker " + ls.ticker + ")");
            }
            if (seg.end >= ls.dates.size()) {
                throw Error("segment range exceeds its calendar (ticker " + ls.ticker + ")");
            }
            const Date start_date = ls.dates[seg.start];
            const Date end_date = ls.dates[seg.end];
            const std::size_t si = index_of(start_date);
            if (si < days && out.dates[si] == start_date) {
                out.starts[si] += 1;
            }
            auto& d = diff[static_cast<std::size_t>(seg.label - 1)];
            if (counting == QuintileCounting::StartDayOnly) {
                if (si < days && out.dates[si] == start_date) {
                    d[si] += 1;
                    d[si + 1] -= 1;
                }
            } else {
                const std::size_t first = index_of(start_date);
                const std::size_t last = static_cast<std::size_t>(
                    std::upper_bound(out.dates.begin(), out.dates.end(), end_date) -
                    out.dates.begin());
                if (first < last) {
                    d[first] += 1;
                    d[last] -= 1;
                }
            }
        }
    }
    for (std::size_t k = 0; k < 5; ++k) {
        std::int64_t running = 0;
        for (std::size_t i = 0; i < days; ++i) {
            running += diff[k][i];
            out.quintile[k][i] = static_cast<std::uint32_t>(running);
        }
    }
    return out;
}

}  // namespace econokit

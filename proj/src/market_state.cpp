#include "econokit/market_state.hpp"

#include <cmath>
#include <utility>

#include "econokit/errors.hpp"
#include "econokit/parallel.hpp"

namespace econokit {

double xlogx(double v) {
    if (v < 0.0) {
        throw NegativeInput("xlogx requires v >= 0, got " + std::to_string(v));
    }
    if (v == 0.0) {
        return 0.0;
    }
    return v * std::log(v);
}

double shannon_entropy(std::span<const double> p, double tolerance) {
    double sum = 0.0;
    double h = 0.0;
    for (double v : p) {
        sum += v;
        h -= xlogx(v);
    }
    if (std::abs(sum - 1.0) > tolerance) {
        throw NotNormalized("distribution sums to " + std::to_string(sum));
    }
    return h;
}

double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw ShapeMismatch("distributions of size " + std::to_string(p.size()) + " and " +
                            std::to_string(q.size()));
    }
    const double hp = shannon_entropy(p);
    const double hq = shannon_entropy(q);
    std::vector<double> mid(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        mid[i] = 0.5 * (p[i] + q[i]);
    }
    double d = shannon_entropy(mid) - 0.5 * (hp + hq);
    if (d < 0.0 && d > -1e-12) {
        d = 0.0;  // rounding noise on nearly identical inputs
    }
    return d;
}

ActivityMatrix activity_density(const ActivityTensor& tensor, const std::string& period) {
    const auto totals = tensor.pair_totals(period);
    std::uint64_t total = 0;
    for (auto c : totals) {
        total += c;
    }
    if (total == 0) {
        throw EmptyPeriod("no activity in period " + period);
    }
    ActivityMatrix out;
    out.period = period;
    out.currencies = tensor.currencies();
    out.a.resize(totals.size());
    const double denom = static_cast<double>(total);
    for (std::size_t i = 0; i < totals.size(); ++i) {
        out.a[i] = static_cast<double>(totals[i]) / denom;
    }
    return out;
}

OccurrenceVector occurrence_rates(const ActivityMatrix& a) {
    const std::size_t n = a.currencies.size();
    OccurrenceVector out;
    out.period = a.period;
    out.currencies = a.currencies;
    out.k.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += a.at(i, j);
        }
        out.k[i] = row;
    }
    return out;
}

SimilarityResult similarity_matrix(const ActivityTensor& tensor, SimilarityKind kind,
                                   int threads) {
    SimilarityResult result;
    result.matrix.kind = kind;

    std::vector<std::vector<double>> reps;
    for (const auto& period : tensor.periods()) {
        try {
            const ActivityMatrix a = activity_density(tensor, period);
            if (kind == SimilarityKind::Pairs) {
                reps.push_back(a.a);
            } else {
                reps.push_back(occurrence_rates(a).k);
            }
            result.matrix.periods.push_back(period);
        } catch (const EmptyPeriod&) {
            result.dropped_periods.push_back(period);
        }
    }
    const std::size_t p = result.matrix.periods.size();
    if (p < 2) {
        throw EmptyPeriod("similarity needs at least 2 non-empty periods, have " +
                          std::to_string(p));
    }
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    cells.reserve(p * (p - 1) / 2);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            cells.emplace_back(a, b);
        }
    }
    result.matrix.d.assign(p * p, 0.0);
    parallel_for(cells.size(), threads, [&](std::size_t i) {
        const auto [a, b] = cells[i];
        const double d = jensen_shannon_divergence(reps[a], reps[b]);
        result.matrix.d[a * p + b] = d;
        result.matrix.d[b * p + a] = d;
    });
    return result;
}

}  // namespace econokit

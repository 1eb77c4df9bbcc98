#pragma once

#include <span>
#include <string>
#include <vector>

#include "econokit/ingest.hpp"

namespace econokit {

// x*ln(x) with the 0*log(0) = 0 convention, so entropies stay finite on
// distributions containing zeros. Throws NegativeInput for x < 0.
double xlogx(double v);

// H = -sum xlogx(p_i), natural log. p must be non-negative and sum to 1
// within `tolerance` (NotNormalized otherwise).
double shannon_entropy(std::span<const double> p, double tolerance = 1e-9);

// Jensen-Shannon divergence H((p+q)/2) - (H(p)+H(q))/2; symmetric,
// bounded by ln 2, zero iff p == q. Throws ShapeMismatch on length
// disagreement.
double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q);

// Per-pair share of all activity within one period: symmetric, zero
// diagonal, sums to 1 over the full N*N matrix.
struct ActivityMatrix {
    std::string period;
    std::vector<std::string> currencies;
    std::vector<double> a;  // N*N row-major
    double at(std::size_t i, std::size_t j) const { return a[i * currencies.size() + j]; }
};

ActivityMatrix activity_density(const ActivityTensor& tensor, const std::string& period);

// Marginal share of each currency: row sums of an ActivityMatrix.
struct OccurrenceVector {
    std::string period;
    std::vector<std::string> currencies;
    std::vector<double> k;
};

OccurrenceVector occurrence_rates(const ActivityMatrix& a);

enum class SimilarityKind {
    Pairs,       // divergence between activity matrices
    Currencies,  // divergence between occurrence vectors
};

struct SimilarityMatrix {
    std::vector<std::string> periods;
    std::vector<double> d;  // P*P row-major, symmetric, zero diagonal
    SimilarityKind kind = SimilarityKind::Pairs;
    double at(std::size_t a, std::size_t b) const { return d[a * periods.size() + b]; }
};

struct SimilarityResult {
    SimilarityMatrix matrix;
    std::vector<std::string> dropped_periods;  // empty periods, with no distribution
};

// Pairwise divergences across every period of the tensor, optionally
// computed on a worker pool (one cell per work item, so the result does
// not depend on the thread count). Throws EmptyPeriod when fewer than two
// periods carry any activity.
SimilarityResult similarity_matrix(const ActivityTensor& tensor, SimilarityKind kind,
                                   int threads = 1);

}  // namespace econokit

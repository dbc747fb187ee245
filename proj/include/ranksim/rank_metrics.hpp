#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ranksim/core.hpp"

namespace ranksim {

/// Prefix-set agreement A_d = |S_d ∩ T_d| / d, where S_d is the prefix of S
/// capped at |S| (a shorter list contributes its full extent). d >= 1.
double agreement_at_depth(const RankedFeatureList& s, const RankedFeatureList& t, std::size_t d);

/// AO(S,T,k) = (1/k) Σ_{d=1..k} A_d. k >= 1.
double average_overlap(const RankedFeatureList& s, const RankedFeatureList& t, std::size_t k);

enum class RboTail {
    Analytic,  // closed form, exact sum of the infinite series
    Truncated, // numeric series, stops when the remaining geometric mass < tolerance
};

/// How the agreement series continues once a list (or both) is exhausted.
enum class RboExtrapolation {
    // Webber et al. extrapolated RBO: the shorter list is assumed to keep
    // agreeing at rate X_s/s over the uneven region and the final agreement
    // A_l carries forward past both lists. rbo(S,S) = 1. Default: this is the
    // variant that reproduces published scores computed with standard tools.
    CarryLastAgreement,
    // Fixed-overlap tail: past both lists the intersection stops growing, so
    // A_d = |S∩T|/d decays; the analytic form closes the tail with the exact
    // logarithmic series (|S∩T|/p)(−ln(1−p) − Σ_{d<=D} p^d/d). rbo(S,S) < 1.
    FixedOverlap,
};

struct RboParams {
    double p = 0.98; // top-weighting persistence, 0 < p < 1
    RboTail tail = RboTail::Analytic;
    RboExtrapolation extrapolation = RboExtrapolation::CarryLastAgreement;
    std::size_t truncate_depth = 1000000;
    double truncate_tolerance = 1e-9;

    void validate() const;
};

/// Rank-biased overlap (1−p)·Σ_{d>=1} p^{d−1}·A_d under the configured
/// finite-list extrapolation. Both lists empty -> 1.0; exactly one empty -> 0.0.
double rbo(const RankedFeatureList& s, const RankedFeatureList& t, const RboParams& params);

/// Set Jaccard over the feature ids; both empty -> 1.0 by convention.
double jaccard(const RankedFeatureList& s, const RankedFeatureList& t);

/// Cosine similarity over feature->frequency mappings (missing key = 0).
/// Rejects zero vectors, naming the offending side.
double cosine(const std::map<std::string, double>& u, const std::map<std::string, double>& v,
              const std::string& name_u = "u", const std::string& name_v = "v");

/// Kendall's tau over two conjoint rankings (identical feature sets required).
double kendall_tau(const RankedFeatureList& s, const RankedFeatureList& t);

/// Spearman's rho over two conjoint rankings, 1 − 6Σd_i²/(n(n²−1)).
double spearman_rho(const RankedFeatureList& s, const RankedFeatureList& t);

/// Inputs for the Wikipedia Link-based Measure: in-link set sizes of the two
/// articles, their overlap, and the corpus size.
struct WlmInput {
    std::uint64_t size_a = 0;  // |A| >= 1
    std::uint64_t size_b = 0;  // |B| >= 1
    std::uint64_t overlap = 0; // |A ∩ B|
    std::uint64_t corpus = 0;  // |W|

    void validate() const;
};

/// (log max(|A|,|B|) − log |A∩B|) / (log |W| − log min(|A|,|B|)), clamped to
/// [0,1]; zero overlap -> 1.0 (the formula diverges). Base-invariant ratio.
double wlm_distance(const WlmInput& x);

/// 1 − wlm_distance, for use as a similarity baseline.
double wlm_relatedness(const WlmInput& x);

/// Metric selector for similarity-matrix assembly.
struct MatrixMetric {
    enum class Kind { Rbo, AverageOverlap, Jaccard, Cosine };
    Kind kind = Kind::Rbo;
    RboParams rbo{};
    std::size_t ao_depth = 10;

    std::string describe() const;
};

/// Builds the symmetric pairwise similarity matrix (diagonal 1.0). Only the
/// lower triangle is computed, then mirrored; pairs are evaluated in parallel
/// with deterministic output. `threads` = 0 picks the hardware concurrency.
SimilarityMatrix similarity_matrix(const std::vector<RankedFeatureList>& lists,
                                   const MatrixMetric& metric, std::size_t threads = 0);

/// The k entities most similar to `target`, score descending, ties broken
/// lexicographically by entity id; the target itself is excluded. k <= n−1.
std::vector<std::pair<EntityId, double>> rank_similars(const EntityId& target,
                                                       const SimilarityMatrix& m, std::size_t k);

} // namespace ranksim

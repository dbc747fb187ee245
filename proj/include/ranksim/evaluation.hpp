#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ranksim/cluster.hpp"
#include "ranksim/core.hpp"

namespace ranksim {

/// Gain values aligned with a predicted ranking.
using GainVector = std::vector<double>;

/// DCG@k = Σ_{i=1..min(k,Z)} g_i / log2(i+1). k >= 1, gains finite and >= 0.
double dcg(const GainVector& gains, std::size_t k);

/// nDCG@k = DCG(predicted, k) / DCG(ideal, k). `ideal` must be non-increasing;
/// an all-zero ideal at depth k is rejected (undefined ratio). The log base
/// cancels in the ratio.
double ndcg_at_k(const GainVector& predicted, const GainVector& ideal, std::size_t k);

/// Gains for a predicted ranking measured against a reference ranking: an item
/// found at reference rank r gains N − r + 1 (N = reference length), absent
/// items gain 0. Returns {predicted gains, ideal gains (N, N−1, …, 1)}.
std::pair<GainVector, GainVector> gains_from_reference(const std::vector<EntityId>& predicted,
                                                       const std::vector<EntityId>& reference);

/// Fraction of entity pairs on which the two partitions agree (co-clustered in
/// both or separated in both). Requires equal length, n >= 2.
double rand_index(const Partition& p, const Partition& q);

/// Permutation-model chance-corrected Rand index over the contingency table.
/// Exact rational arithmetic; the degenerate 0/0 case (both partitions trivial
/// in the same way) returns 1.0.
double adjusted_rand_index(const Partition& p, const Partition& q);

/// Rows follow the ground-truth group order, columns the predicted labels;
/// cell (i,j) = |truth group i ∩ predicted cluster j|.
std::vector<std::vector<std::size_t>> confusion_matrix(const Partition& truth,
                                                       const Partition& predicted);

} // namespace ranksim

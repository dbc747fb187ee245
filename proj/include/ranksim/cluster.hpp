#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ranksim/core.hpp"

namespace ranksim {

enum class Linkage { Single, Complete, Average, Ward };

Linkage linkage_from_string(const std::string& name);
std::string to_string(Linkage l);

/// One agglomerative merge. Leaf ids are 0..n−1, internal ids n..2n−2 in
/// merge order; left < right always.
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double height = 0.0;
    std::size_t size = 0; // members in the new cluster
};

struct Dendrogram {
    std::size_t n_leaves = 0;
    std::vector<Merge> merges; // exactly n−1 entries
};

/// A k-way assignment of entity indices to cluster labels 0..k−1.
struct Partition {
    std::vector<std::size_t> labels;

    std::size_t size() const { return labels.size(); }
    std::size_t cluster_count() const;
};

/// Hierarchical agglomerative clustering with Lance–Williams updates.
/// Requires a symmetric, finite, non-negative matrix with zero diagonal and
/// n >= 2. Ties in the minimum inter-cluster distance are broken by the
/// smallest (left id, right id) pair of dendrogram node ids.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage);

/// Undoes the last k−1 merges; groups are labeled 0..k−1 in order of their
/// smallest member index. 1 <= k <= n.
Partition cut(const Dendrogram& t, std::size_t k);

} // namespace ranksim

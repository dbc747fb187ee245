#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ranksim/errors.hpp"

namespace ranksim {

/// Opaque entity identifier (an IRI or a local name). Non-empty.
using EntityId = std::string;

/// A feature identifier paired with its relevance score (unitless, >= 0).
struct ScoredFeature {
    std::string feature;
    double score = 0.0;

    friend bool operator==(const ScoredFeature& a, const ScoredFeature& b) {
        return a.feature == b.feature && a.score == b.score;
    }
};

/// How equal scores are ordered when building a ranked list.
enum class TieBreak {
    Lexicographic,    // feature id ascending
    BySecondaryScore, // supplied secondary score descending, then lexicographic
    StableInputOrder, // input order preserved among ties
};

/// An entity's features ordered by non-increasing relevance. May be empty
/// (a poorly described entity). Feature ids are unique within the list.
struct RankedFeatureList {
    EntityId entity;
    std::vector<ScoredFeature> items;

    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }

    /// Feature ids in rank order.
    std::vector<std::string> feature_ids() const;

    /// Throws DataError if an invariant is violated (duplicate feature,
    /// increasing score, bad value). Used when lists arrive from files.
    void validate() const;
};

/// Sorts `scored` by score descending, resolving equal scores with the given
/// policy, and rejects duplicate features and invalid scores.
/// `secondary` is consulted only for TieBreak::BySecondaryScore; a feature
/// missing from it gets secondary score 0.
RankedFeatureList build_ranked_list(const EntityId& entity, std::vector<ScoredFeature> scored,
                                    TieBreak tie_break,
                                    const std::map<std::string, double>* secondary = nullptr);

/// Dense symmetric matrix of pairwise similarity scores over an entity set.
/// Diagonal is the metric maximum (1.0 for every metric in this library).
struct SimilarityMatrix {
    std::vector<EntityId> entities;
    std::vector<double> values; // row-major n*n

    std::size_t size() const { return entities.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * entities.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * entities.size() + j]; }
    std::optional<std::size_t> index_of(const EntityId& e) const;
};

/// Dense symmetric distance matrix (zero diagonal).
struct DistanceMatrix {
    std::vector<EntityId> entities;
    std::vector<double> values; // row-major n*n

    std::size_t size() const { return entities.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * entities.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * entities.size() + j]; }
};

/// Maps each similarity s in [0,1] to distance 1 - s. Rejects values outside
/// [0,1] naming the offending cell.
DistanceMatrix to_distance(const SimilarityMatrix& m);

/// Reference data for evaluation: either a partition of the entities into
/// groups, or per-entity reference rankings (ids ordered most-similar-first).
struct GroundTruth {
    // group label -> members, in declared (file) order
    std::vector<std::pair<std::string, std::vector<EntityId>>> groups;
    // entity -> reference ranking
    std::map<EntityId, std::vector<EntityId>> rankings;

    bool has_partition() const { return !groups.empty(); }
    bool has_rankings() const { return !rankings.empty(); }
    void validate() const;
};

} // namespace ranksim

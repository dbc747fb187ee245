#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ranksim/core.hpp"

namespace ranksim {

enum class Direction { Forward, Undirected };

/// Directed labeled graph of (subject, predicate, object) triples. Triples
/// are deduplicated; adding an edge registers its endpoints.
class FeatureGraph {
public:
    void add_node(const EntityId& id);
    void add_edge(const EntityId& subject, const std::string& predicate, const EntityId& object);

    bool has_node(const EntityId& id) const { return nodes_.count(id) > 0; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_total_; }
    const std::set<EntityId>& nodes() const { return nodes_; }

    struct Arc {
        std::string predicate;
        EntityId to;
        bool operator<(const Arc& o) const {
            return to != o.to ? to < o.to : predicate < o.predicate;
        }
    };
    /// Traversable arcs from `id`: out-edges, plus reversed in-edges when
    /// undirected.
    std::vector<Arc> arcs(const EntityId& id, Direction direction,
                          const std::optional<std::set<std::string>>& predicate_filter) const;

    /// In-neighbors of `id` restricted to one predicate (for marker closures).
    std::vector<EntityId> in_neighbors(const EntityId& id, const std::string& predicate) const;

private:
    std::set<EntityId> nodes_;
    std::map<EntityId, std::set<Arc>> out_;
    std::map<EntityId, std::set<Arc>> in_;
    std::size_t edge_total_ = 0;
};

/// Parameters of the path-count connectivity score.
struct ScsParams {
    std::size_t tau = 4;  // maximum path length
    double beta = 0.5;    // damping, 0 < beta < 1
    std::optional<std::set<std::string>> edge_filter; // predicate whitelist
    Direction direction = Direction::Forward;

    void validate() const;
};

/// Number of simple paths (no repeated node) of exactly length l from a to b.
std::size_t count_paths(const FeatureGraph& g, const EntityId& a, const EntityId& b, std::size_t l,
                        Direction direction = Direction::Forward,
                        const std::optional<std::set<std::string>>& edge_filter = std::nullopt);

/// Σ_{l=1..τ} β^l · count_paths(a, b, l). a must differ from b.
double scs(const FeatureGraph& g, const EntityId& a, const EntityId& b, const ScsParams& params);

/// Designates which nodes count as features: those reaching `target` through
/// one or more `predicate`-labeled hops (an empty predicate admits any label).
struct FeatureMarker {
    std::string predicate;
    EntityId target;

    /// All qualifying nodes in the graph (excluding the target itself).
    std::set<EntityId> qualifying(const FeatureGraph& g) const;
};

/// Collects qualifying feature nodes within `depth` hops of `root` (traversal
/// honors params.direction and params.edge_filter), scores each with
/// scs(root, feature), and ranks them with lexicographic tie-breaking.
RankedFeatureList graph_explore_features(const FeatureGraph& g, const EntityId& root,
                                         std::size_t depth, const FeatureMarker& marker,
                                         const ScsParams& params);

} // namespace ranksim

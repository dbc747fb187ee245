#include "ranksim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace ranksim {

void FeatureGraph::add_node(const EntityId& id) {
    if (id.empty()) throw DataError("graph: empty node id");
    nodes_.insert(id);
}

void FeatureGraph::add_edge(const EntityId& subject, const std::string& predicate,
                            const EntityId& object) {
    if (predicate.empty()) throw DataError("graph: empty predicate");
    add_node(subject);
    add_node(object);
    if (out_[subject].insert(Arc{predicate, object}).second) {
        in_[object].insert(Arc{predicate, subject});
        ++edge_total_;
    }
}

std::vector<FeatureGraph::Arc> FeatureGraph::arcs(
    const EntityId& id, Direction direction,
    const std::optional<std::set<std::string>>& predicate_filter) const {
    std::vector<Arc> result;
    auto admit = [&](const Arc& a) {
        return !predicate_filter || predicate_filter->count(a.predicate) > 0;
    };
    if (auto it = out_.find(id); it != out_.end())
        for (const auto& a : it->second)
            if (admit(a)) result.push_back(a);
    if (direction == Direction::Undirected) {
        if (auto it = in_.find(id); it != in_.end())
            for (const auto& a : it->second)
                if (admit(a)) result.push_back(a);
    }
    return result;
}

std::vector<EntityId> FeatureGraph::in_neighbors(const EntityId& id,
                                                 const std::string& predicate) const {
    std::vector<EntityId> result;
    if (auto it = in_.find(id); it != in_.end())
        for (const auto& a : it->second)
            if (predicate.empty() || a.predicate == predicate) result.push_back(a.to);
    return result;
}

void ScsParams::validate() const {
    if (tau < 1) throw DataError("scs: tau must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw DataError("scs: beta must be in (0,1)");
}

namespace {

// DFS counting simple paths of exactly `len` from `at` to `goal`. Parallel
// edges with distinct predicates count as distinct paths.
std::size_t dfs_count(const FeatureGraph& g, const EntityId& at, const EntityId& goal,
                      std::size_t len, Direction direction,
                      const std::optional<std::set<std::string>>& filter,
                      std::set<EntityId>& visited) {
    if (len == 0) return at == goal ? 1 : 0;
    std::size_t total = 0;
    for (const auto& arc : g.arcs(at, direction, filter)) {
        if (visited.count(arc.to)) continue;
        visited.insert(arc.to);
        total += dfs_count(g, arc.to, goal, len - 1, direction, filter, visited);
        visited.erase(arc.to);
    }
    return total;
}

} // namespace

std::size_t count_paths(const FeatureGraph& g, const EntityId& a, const EntityId& b, std::size_t l,
                        Direction direction,
                        const std::optional<std::set<std::string>>& edge_filter) {
    if (!g.has_node(a)) throw DataError("count_paths: unknown node '" + a + "'");
    if (!g.has_node(b)) throw DataError("count_paths: unknown node '" + b + "'");
    if (l < 1) throw DataError("count_paths: path length must be >= 1");
    std::set<EntityId> visited{a};
    return dfs_count(g, a, b, l, direction, edge_filter, visited);
}

double scs(const FeatureGraph& g, const EntityId& a, const EntityId& b, const ScsParams& params) {
    params.validate();
    if (a == b) throw DataError("scs: self-score is undefined (a == b)");
    if (!g.has_node(a)) throw DataError("scs: unknown node '" + a + "'");
    if (!g.has_node(b)) throw DataError("scs: unknown node '" + b + "'");
    double total = 0.0;
    for (std::size_t l = 1; l <= params.tau; ++l)
        total += std::pow(params.beta, static_cast<double>(l)) *
                 static_cast<double>(count_paths(g, a, b, l, params.direction, params.edge_filter));
    return total;
}

std::set<EntityId> FeatureMarker::qualifying(const FeatureGraph& g) const {
    // Reverse closure from the target along the marker predicate.
    std::set<EntityId> seen;
    std::deque<EntityId> frontier{target};
    while (!frontier.empty()) {
        EntityId cur = frontier.front();
        frontier.pop_front();
        for (const auto& prev : g.in_neighbors(cur, predicate)) {
            if (seen.insert(prev).second) frontier.push_back(prev);
        }
    }
    seen.erase(target);
    return seen;
}

RankedFeatureList graph_explore_features(const FeatureGraph& g, const EntityId& root,
                                         std::size_t depth, const FeatureMarker& marker,
                                         const ScsParams& params) {
    params.validate();
    if (!g.has_node(root)) throw DataError("graph_explore_features: unknown root '" + root + "'");
    if (depth < 1) throw DataError("graph_explore_features: depth must be >= 1");
    if (!g.has_node(marker.target))
        throw DataError("graph_explore_features: unknown marker target '" + marker.target + "'");

    const std::set<EntityId> features = marker.qualifying(g);

    // BFS to `depth` hops under the same traversal rules used for scoring.
    std::map<EntityId, std::size_t> hops{{root, 0}};
    std::deque<EntityId> frontier{root};
    while (!frontier.empty()) {
        EntityId cur = frontier.front();
        frontier.pop_front();
        std::size_t h = hops[cur];
        if (h == depth) continue;
        for (const auto& arc : g.arcs(cur, params.direction, params.edge_filter)) {
            if (hops.emplace(arc.to, h + 1).second) frontier.push_back(arc.to);
        }
    }

    std::vector<ScoredFeature> scored;
    for (const auto& [node, h] : hops) {
        if (node == root || h == 0) continue;
        if (!features.count(node)) continue;
        scored.push_back(ScoredFeature{node, scs(g, root, node, params)});
    }
    return build_ranked_list(root, std::move(scored), TieBreak::Lexicographic);
}

} // namespace ranksim

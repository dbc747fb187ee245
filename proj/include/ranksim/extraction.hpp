#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ranksim/core.hpp"
#include "ranksim/sparql.hpp"

namespace ranksim {

/// A SPARQL SELECT template with a `{{entity}}` placeholder. The query must
/// aggregate and order descending by a count so that row order encodes rank.
struct QueryTemplate {
    std::string text;
    std::string feature_variable;
    std::string score_variable; // optional projected count; empty = rank-only

    void validate() const;
    std::string instantiate(const EntityId& entity) const;
};

/// Executes the instantiated template and reads result rows top-to-bottom as
/// rank order. When `score_variable` is projected its numeric value becomes
/// the score; otherwise scores are assigned n, n−1, …, 1 from row order.
/// An empty result yields an empty list (callers flag it).
RankedFeatureList query_based_extract(const SparqlClient& client, const QueryTemplate& tmpl,
                                      const EntityId& entity, TieBreak tie_break);

/// child -> parents edges plus the designated top-level roots.
struct CategoryHierarchy {
    std::map<std::string, std::vector<std::string>> parents;
    std::set<std::string> top_levels;

    void validate() const;
};

/// Histogram of an entity's counts over the top-level categories. Leaves that
/// reach no top level are tallied separately.
struct ProfileHistogram {
    EntityId entity;
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t unclassified = 0;
    std::vector<std::string> unclassified_leaves;
};

/// Adds each leaf's count to every distinct top-level category reachable from
/// it (ancestor closure; a leaf counts once per reachable top level, not once
/// per path). Cycles along any traversal are rejected, naming the cycle.
ProfileHistogram rollup_categories(const EntityId& entity,
                                   const std::map<std::string, std::uint64_t>& leaf_counts,
                                   const CategoryHierarchy& h);

/// Categories ordered by count descending; zero-count categories are omitted.
RankedFeatureList histogram_to_ranked_list(const ProfileHistogram& hist, TieBreak tie_break);

struct FilterResult {
    std::vector<RankedFeatureList> kept;
    std::vector<std::pair<EntityId, std::size_t>> dropped; // entity, list size
};

/// Partitions lists by |items| >= min_count (boundary inclusive).
FilterResult filter_min_features(std::vector<RankedFeatureList> lists, std::size_t min_count);

/// Tokenizes on non-alphanumeric boundaries, lowercases, drops stopwords and
/// tokens shorter than 2 letters, Porter-stems, and ranks stems by frequency.
RankedFeatureList stem_extract(const EntityId& entity, const std::vector<std::string>& documents,
                               const std::set<std::string>& stopwords);

} // namespace ranksim

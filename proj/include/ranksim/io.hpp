#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ranksim/cluster.hpp"
#include "ranksim/core.hpp"
#include "ranksim/extraction.hpp"
#include "ranksim/graph.hpp"

namespace ranksim {

// ---- ranked feature lists ----
// JSON-lines: {"entity": str, "features": [{"id": str, "score": number}, ...]}
std::vector<RankedFeatureList> read_ranked_lists_jsonl(const std::filesystem::path& path);
void write_ranked_lists_jsonl(const std::filesystem::path& path,
                              const std::vector<RankedFeatureList>& lists);

// TSV: entity <TAB> feature [<TAB> score]. Without scores, row order encodes
// rank (scores n..1 are assigned per entity); with scores, ties keep row order.
std::vector<RankedFeatureList> read_ranked_lists_tsv(const std::filesystem::path& path);
void write_ranked_lists_tsv(const std::filesystem::path& path,
                            const std::vector<RankedFeatureList>& lists);

/// Dispatches on extension: .jsonl/.ndjson vs .tsv
std::vector<RankedFeatureList> read_ranked_lists(const std::filesystem::path& path);

// ---- matrices ----
void write_matrix_csv(const std::filesystem::path& path, const std::vector<EntityId>& entities,
                      const std::vector<double>& values);
SimilarityMatrix read_similarity_matrix_csv(const std::filesystem::path& path);
void write_matrix_json(const std::filesystem::path& path, const std::vector<EntityId>& entities,
                       const std::vector<double>& values);

// ---- graphs ----
// N-Triples-style TSV: subject <TAB> predicate <TAB> object (angle brackets
// around IRIs are accepted and stripped).
FeatureGraph read_graph_tsv(const std::filesystem::path& path);
// JSON adjacency: {"edges": [{"s": ..., "p": ..., "o": ...}], "nodes": [...]}
FeatureGraph read_graph_json(const std::filesystem::path& path);
FeatureGraph read_graph(const std::filesystem::path& path);

// ---- query templates / hierarchies / corpora ----
/// Reads a SPARQL template file. When `feature_variable` is empty the first
/// projected ?variable is used.
QueryTemplate load_query_template(const std::filesystem::path& path,
                                  const std::string& feature_variable = "",
                                  const std::string& score_variable = "");

CategoryHierarchy read_hierarchy(const std::filesystem::path& edges_tsv,
                                 const std::filesystem::path& top_levels_txt);
/// JSON-lines: {"entity": str, "counts": {category: count, ...}}
std::vector<std::pair<EntityId, std::map<std::string, std::uint64_t>>> read_leaf_counts_jsonl(
    const std::filesystem::path& path);
std::set<std::string> read_word_list(const std::filesystem::path& path);
/// One document per line, UTF-8.
std::vector<std::string> read_corpus_lines(const std::filesystem::path& path);

// ---- partitions & ground truth ----
void write_partition_csv(const std::filesystem::path& path, const std::vector<EntityId>& entities,
                         const Partition& partition);
/// CSV entity,group (header line optional). Group order follows first
/// appearance in the file.
GroundTruth read_ground_truth_partition_csv(const std::filesystem::path& path);
/// JSON-lines: {"entity": str, "ranking": [str, ...]}
GroundTruth read_ground_truth_rankings_jsonl(const std::filesystem::path& path);

/// Dendrogram as a JSON merge list.
void write_dendrogram_json(const std::filesystem::path& path, const Dendrogram& tree);

/// Numeric formatting used in every CSV we emit (9 decimal digits).
std::string format_value(double v);

} // namespace ranksim

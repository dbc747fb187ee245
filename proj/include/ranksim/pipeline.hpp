#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ranksim/cluster.hpp"
#include "ranksim/core.hpp"
#include "ranksim/rank_metrics.hpp"

namespace ranksim {

/// Declarative pipeline description; loadable from a JSON file, overridable
/// by CLI flags (flags win).
struct PipelineConfig {
    std::filesystem::path lists;        // ranked-list input (.jsonl/.tsv)
    std::filesystem::path ground_truth; // partition CSV or rankings JSONL; optional
    std::vector<MatrixMetric> metrics;
    std::vector<Linkage> linkages;
    std::size_t k_clusters = 0;
    std::vector<std::size_t> ndcg_depths; // ranking-ground-truth curves
    std::filesystem::path out_dir;
    std::size_t threads = 0;

    void validate() const;
};

/// Reads the JSON config; relative paths resolve against the file's directory.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct GridCell {
    std::string metric;
    Linkage linkage = Linkage::Average;
    double ari = 0.0;
};

struct PipelineReport {
    std::vector<GridCell> grid;           // metric-major, linkage-minor
    std::optional<GridCell> best;         // absent when no partition ground truth
    std::vector<std::filesystem::path> outputs;
    bool evaluated = false;               // false = ground truth missing, grid only
};

/// extract -> matrix -> cluster -> evaluate. Writes the ARI grid CSV, the
/// best cell's confusion matrix and partition, per-metric matrices, and NDCG
/// curves when a ranking ground truth is supplied. Any stage failure aborts
/// with the stage named and removes partial outputs.
PipelineReport run_pipeline(const PipelineConfig& config, std::ostream& log);

/// Regression harness over the desk-verifiable published values (the prefix
/// agreement table, the two-dataset metric quartet, the recorded museum
/// extraction). Prints one line per check; returns false if any is out of
/// tolerance or a fixture is missing.
bool run_reproduce(const std::filesystem::path& fixtures_dir, std::ostream& out);

} // namespace ranksim

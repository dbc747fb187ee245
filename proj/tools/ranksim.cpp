// ranksim: entity similarity from ranked feature lists.
// Subcommands: extract | compare | matrix | cluster | evaluate | pipeline | reproduce

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ranksim/evaluation.hpp"
#include "ranksim/extraction.hpp"
#include "ranksim/graph.hpp"
#include "ranksim/io.hpp"
#include "ranksim/pipeline.hpp"
#include "ranksim/rank_metrics.hpp"

namespace fs = std::filesystem;
using namespace ranksim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitTransport = 4;
constexpr int kExitCheckFailed = 5;

TieBreak tie_break_from_string(const std::string& name) {
    if (name == "lex" || name == "lexicographic") return TieBreak::Lexicographic;
    if (name == "secondary") return TieBreak::BySecondaryScore;
    if (name == "input") return TieBreak::StableInputOrder;
    throw ConfigError("unknown tie-break '" + name + "' (lex|secondary|input)");
}

// "jaccard" | "cosine" | "rbo" | "rbo:0.95" | "ao" | "ao:10"
MatrixMetric metric_from_spec(const std::string& spec, double default_p) {
    MatrixMetric m;
    std::string kind = spec;
    std::string arg;
    if (auto pos = spec.find(':'); pos != std::string::npos) {
        kind = spec.substr(0, pos);
        arg = spec.substr(pos + 1);
    }
    if (kind == "jaccard") {
        m.kind = MatrixMetric::Kind::Jaccard;
    } else if (kind == "cosine") {
        m.kind = MatrixMetric::Kind::Cosine;
    } else if (kind == "rbo") {
        m.kind = MatrixMetric::Kind::Rbo;
        m.rbo.p = arg.empty() ? default_p : std::stod(arg);
    } else if (kind == "ao") {
        m.kind = MatrixMetric::Kind::AverageOverlap;
        if (!arg.empty()) m.ao_depth = static_cast<std::size_t>(std::stoul(arg));
    } else {
        throw ConfigError("unknown metric '" + spec + "' (jaccard|cosine|rbo[:p]|ao[:k])");
    }
    return m;
}

EndpointConfig make_endpoint(const std::string& endpoint_flag, const std::string& endpoint_file,
                             const std::string& replay_dir, const std::string& record_dir,
                             double timeout_s, int retries) {
    EndpointConfig cfg;
    cfg.timeout_s = timeout_s;
    cfg.max_retries = retries;
    if (!endpoint_file.empty()) {
        std::ifstream in(endpoint_file);
        if (!in) throw ConfigError("cannot open endpoint config " + endpoint_file);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(endpoint_file + ": " + e.what());
        }
        if (doc.contains("url")) cfg.url = doc["url"].get<std::string>();
        if (doc.contains("timeout_s")) cfg.timeout_s = doc["timeout_s"].get<double>();
        if (doc.contains("max_retries")) cfg.max_retries = doc["max_retries"].get<int>();
        if (doc.contains("backoff_ms")) cfg.backoff_ms = doc["backoff_ms"].get<int>();
    }
    if (const char* env = std::getenv("RANKSIM_ENDPOINT"); env && *env) cfg.url = env;
    if (!endpoint_flag.empty()) cfg.url = endpoint_flag; // flags win
    if (!replay_dir.empty()) {
        cfg.mode = EndpointConfig::Mode::Replay;
        cfg.fixture_dir = replay_dir;
    } else if (!record_dir.empty()) {
        cfg.mode = EndpointConfig::Mode::Record;
        cfg.fixture_dir = record_dir;
    }
    return cfg;
}

std::vector<EntityId> read_entities_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open entities file " + path.string());
    std::vector<EntityId> entities;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') entities.push_back(line);
    return entities;
}

void write_lists(const fs::path& out, const std::vector<RankedFeatureList>& lists) {
    if (out.extension() == ".tsv")
        write_ranked_lists_tsv(out, lists);
    else
        write_ranked_lists_jsonl(out, lists);
    std::cerr << "wrote " << lists.size() << " ranked list(s) to " << out.string() << "\n";
}

// ---- extract ----

int cmd_extract(const std::string& mode, const fs::path& out_path, std::size_t min_features,
                TieBreak tie_break,
                // query mode
                const std::string& template_path, const std::string& entities_path,
                const std::string& feature_var, const std::string& score_var,
                const EndpointConfig& endpoint,
                // rollup mode
                const std::string& leaf_counts_path, const std::string& hierarchy_path,
                const std::string& top_levels_path,
                // graph mode
                const std::string& graph_path, const std::string& root,
                std::size_t depth, const ScsParams& scs_params, const FeatureMarker& marker,
                // stems mode
                const std::string& corpus_dir, const std::string& corpus_file,
                const std::string& entity_flag, const std::string& stopwords_path) {
    std::vector<RankedFeatureList> lists;

    if (mode == "query") {
        if (template_path.empty() || entities_path.empty())
            throw ConfigError("extract --mode query needs --template and --entities");
        QueryTemplate tmpl = load_query_template(template_path, feature_var, score_var);
        SparqlClient client(endpoint);
        for (const auto& entity : read_entities_file(entities_path)) {
            auto list = query_based_extract(client, tmpl, entity, tie_break);
            if (list.empty()) std::cerr << "warning: empty result for entity " << entity << "\n";
            lists.push_back(std::move(list));
        }
    } else if (mode == "rollup") {
        if (leaf_counts_path.empty() || hierarchy_path.empty() || top_levels_path.empty())
            throw ConfigError(
                "extract --mode rollup needs --leaf-counts, --hierarchy and --top-levels");
        CategoryHierarchy h = read_hierarchy(hierarchy_path, top_levels_path);
        for (const auto& [entity, counts] : read_leaf_counts_jsonl(leaf_counts_path)) {
            ProfileHistogram hist = rollup_categories(entity, counts, h);
            if (hist.unclassified > 0)
                std::cerr << "warning: " << hist.unclassified << " count(s) from "
                          << hist.unclassified_leaves.size() << " leaf categorie(s) of " << entity
                          << " reached no top level\n";
            lists.push_back(histogram_to_ranked_list(hist, tie_break));
        }
    } else if (mode == "graph") {
        if (graph_path.empty() || root.empty() || marker.target.empty())
            throw ConfigError("extract --mode graph needs --graph, --root and --marker-target");
        FeatureGraph g = read_graph(graph_path);
        lists.push_back(graph_explore_features(g, root, depth, marker, scs_params));
    } else if (mode == "stems") {
        std::set<std::string> stopwords;
        if (!stopwords_path.empty()) stopwords = read_word_list(stopwords_path);
        if (!corpus_dir.empty()) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(corpus_dir))
                if (e.is_regular_file()) files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files)
                lists.push_back(stem_extract(f.stem().string(), read_corpus_lines(f), stopwords));
        } else if (!corpus_file.empty()) {
            if (entity_flag.empty()) throw ConfigError("extract --corpus needs --entity");
            lists.push_back(stem_extract(entity_flag, read_corpus_lines(corpus_file), stopwords));
        } else {
            throw ConfigError("extract --mode stems needs --corpus-dir or --corpus");
        }
    } else {
        throw ConfigError("unknown extract mode '" + mode + "' (query|rollup|graph|stems)");
    }

    if (min_features > 0) {
        FilterResult filtered = filter_min_features(std::move(lists), min_features);
        for (const auto& [entity, size] : filtered.dropped)
            std::cerr << "dropped " << entity << " (" << size << " feature(s) < " << min_features
                      << ")\n";
        std::cerr << "kept " << filtered.kept.size() << ", dropped " << filtered.dropped.size()
                  << "\n";
        lists = std::move(filtered.kept);
    }
    if (lists.empty()) std::cerr << "warning: nothing extracted\n";
    write_lists(out_path, lists);
    return kExitOk;
}

// ---- compare ----

int cmd_compare(const std::string& lists_path, const std::string& entity_a,
                const std::string& entity_b, const std::vector<std::string>& metric_specs,
                double default_p, const std::string& out_path) {
    auto lists = read_ranked_lists(lists_path);
    const RankedFeatureList* a = nullptr;
    const RankedFeatureList* b = nullptr;
    for (const auto& l : lists) {
        if (l.entity == entity_a) a = &l;
        if (l.entity == entity_b) b = &l;
    }
    if (!a) throw DataError("unknown entity '" + entity_a + "'");
    if (!b) throw DataError("unknown entity '" + entity_b + "'");

    auto freq = [](const RankedFeatureList& l) {
        std::map<std::string, double> f;
        for (const auto& it : l.items) f[it.feature] = it.score;
        return f;
    };

    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const auto& spec : metric_specs) {
        double value;
        std::string label;
        if (spec == "kendall") {
            value = kendall_tau(*a, *b);
            label = "kendall";
        } else if (spec == "spearman") {
            value = spearman_rho(*a, *b);
            label = "spearman";
        } else {
            MatrixMetric m = metric_from_spec(spec, default_p);
            label = m.describe();
            switch (m.kind) {
                case MatrixMetric::Kind::Rbo: value = rbo(*a, *b, m.rbo); break;
                case MatrixMetric::Kind::AverageOverlap:
                    value = average_overlap(*a, *b, m.ao_depth);
                    break;
                case MatrixMetric::Kind::Jaccard: value = jaccard(*a, *b); break;
                case MatrixMetric::Kind::Cosine:
                    value = cosine(freq(*a), freq(*b), a->entity, b->entity);
                    break;
                default: throw ConfigError("unhandled metric");
            }
        }
        std::cout << label << "\t" << format_value(value) << "\n";
        report.push_back({{"metric", label}, {"value", value}});
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << report.dump(2) << "\n";
    }
    return kExitOk;
}

// ---- evaluate ----

int cmd_evaluate(const std::string& partition_path, const std::string& truth_path,
                 const std::string& out_dir) {
    GroundTruth gt = read_ground_truth_partition_csv(truth_path);
    GroundTruth predicted_file = read_ground_truth_partition_csv(partition_path);

    // Align both files on the predicted file's entity order.
    std::vector<EntityId> entities;
    std::map<EntityId, std::size_t> pred_label;
    for (std::size_t g = 0; g < predicted_file.groups.size(); ++g)
        for (const auto& e : predicted_file.groups[g].second) {
            entities.push_back(e);
            pred_label[e] = g;
        }
    std::map<EntityId, std::size_t> truth_label;
    for (std::size_t g = 0; g < gt.groups.size(); ++g)
        for (const auto& e : gt.groups[g].second) truth_label[e] = g;

    Partition truth, predicted;
    for (const auto& e : entities) {
        auto it = truth_label.find(e);
        if (it == truth_label.end()) throw DataError("ground truth has no group for '" + e + "'");
        truth.labels.push_back(it->second);
        predicted.labels.push_back(pred_label[e]);
    }

    double ri = rand_index(truth, predicted);
    double ari = adjusted_rand_index(truth, predicted);
    std::cout << "rand_index\t" << format_value(ri) << "\n";
    std::cout << "adjusted_rand_index\t" << format_value(ari) << "\n";

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        nlohmann::ordered_json doc;
        doc["rand_index"] = ri;
        doc["adjusted_rand_index"] = ari;
        std::ofstream out(fs::path(out_dir) / "evaluation.json", std::ios::binary);
        out << doc.dump(2) << "\n";
        auto confusion = confusion_matrix(truth, predicted);
        std::ofstream cm(fs::path(out_dir) / "confusion.csv", std::ios::binary);
        cm << "group";
        const std::size_t n_cols = confusion.empty() ? 0 : confusion[0].size();
        for (std::size_t j = 0; j < n_cols; ++j) cm << ",cluster_" << j;
        cm << ",total\n";
        std::vector<std::size_t> col_sums(n_cols, 0);
        for (std::size_t i = 0; i < confusion.size(); ++i) {
            cm << gt.groups[i].first;
            std::size_t row_sum = 0;
            for (std::size_t j = 0; j < confusion[i].size(); ++j) {
                cm << "," << confusion[i][j];
                row_sum += confusion[i][j];
                col_sums[j] += confusion[i][j];
            }
            cm << "," << row_sum << "\n";
        }
        cm << "total";
        for (auto c : col_sums) cm << "," << c;
        cm << "," << entities.size() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entity similarity from relevance-ranked feature lists"};
    app.require_subcommand(1);

    // ---- extract ----
    auto* extract = app.add_subcommand("extract", "produce ranked feature lists");
    std::string ex_mode = "query", ex_out = "ranked_lists.jsonl", ex_tiebreak = "lex";
    std::size_t ex_min_features = 0;
    std::string ex_template, ex_entities, ex_feature_var, ex_score_var;
    std::string ex_endpoint, ex_endpoint_file, ex_replay_dir, ex_record_dir;
    double ex_timeout = 30.0;
    int ex_retries = 3;
    std::string ex_leaf_counts, ex_hierarchy, ex_top_levels;
    std::string ex_graph, ex_root, ex_marker_pred = "skos:broader", ex_marker_target;
    std::size_t ex_depth = 4, ex_tau = 4;
    double ex_beta = 0.5;
    std::string ex_direction = "forward", ex_predicates;
    std::string ex_corpus_dir, ex_corpus, ex_entity, ex_stopwords;
    extract->add_option("--mode", ex_mode, "query|rollup|graph|stems");
    extract->add_option("--out", ex_out, "output file (.jsonl or .tsv)");
    extract->add_option("--min-features", ex_min_features, "drop lists with fewer features");
    extract->add_option("--tie-break", ex_tiebreak, "lex|secondary|input");
    extract->add_option("--template", ex_template, "SPARQL template with {{entity}}");
    extract->add_option("--entities", ex_entities, "file with one entity per line");
    extract->add_option("--feature-var", ex_feature_var, "projected feature variable");
    extract->add_option("--score-var", ex_score_var, "projected count variable (optional)");
    extract->add_option("--endpoint", ex_endpoint, "SPARQL endpoint URL");
    extract->add_option("--endpoint-config", ex_endpoint_file, "endpoint JSON config");
    extract->add_option("--replay-dir", ex_replay_dir, "replay fixtures instead of the network");
    extract->add_option("--record-dir", ex_record_dir, "record fixtures while querying live");
    extract->add_option("--timeout", ex_timeout, "endpoint timeout, seconds");
    extract->add_option("--retries", ex_retries, "max retries");
    extract->add_option("--leaf-counts", ex_leaf_counts, "JSONL of per-entity category counts");
    extract->add_option("--hierarchy", ex_hierarchy, "child<TAB>parent category edges");
    extract->add_option("--top-levels", ex_top_levels, "top-level category list");
    extract->add_option("--graph", ex_graph, "feature graph (.tsv or .json)");
    extract->add_option("--root", ex_root, "root entity for graph exploration");
    extract->add_option("--depth", ex_depth, "graph exploration depth");
    extract->add_option("--tau", ex_tau, "maximum path length");
    extract->add_option("--beta", ex_beta, "path damping factor");
    extract->add_option("--direction", ex_direction, "forward|undirected");
    extract->add_option("--edge-predicates", ex_predicates, "comma-separated predicate whitelist");
    extract->add_option("--marker-predicate", ex_marker_pred, "feature marker predicate");
    extract->add_option("--marker-target", ex_marker_target, "feature marker target node");
    extract->add_option("--corpus-dir", ex_corpus_dir, "directory of per-entity corpus files");
    extract->add_option("--corpus", ex_corpus, "single corpus file (one document per line)");
    extract->add_option("--entity", ex_entity, "entity id for --corpus");
    extract->add_option("--stopwords", ex_stopwords, "stopword list");

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "score two entities under chosen metrics");
    std::string cp_lists, cp_a, cp_b, cp_out;
    std::vector<std::string> cp_metrics{"jaccard", "cosine", "rbo"};
    double cp_p = 0.98;
    compare->add_option("--lists", cp_lists, "ranked-list file")->required();
    compare->add_option("-a,--entity-a", cp_a)->required();
    compare->add_option("-b,--entity-b", cp_b)->required();
    compare->add_option("--metric", cp_metrics,
                        "jaccard|cosine|rbo[:p]|ao[:k]|kendall|spearman (repeatable)");
    compare->add_option("--p", cp_p, "default p for rbo");
    compare->add_option("--out", cp_out, "optional JSON report");

    // ---- matrix ----
    auto* matrix = app.add_subcommand("matrix", "build a pairwise similarity matrix");
    std::string mx_lists, mx_metric = "rbo", mx_out = "matrix.csv", mx_json;
    double mx_p = 0.98;
    matrix->add_option("--lists", mx_lists)->required();
    matrix->add_option("--metric", mx_metric, "jaccard|cosine|rbo[:p]|ao[:k]");
    matrix->add_option("--p", mx_p, "default p for rbo");
    matrix->add_option("--out", mx_out, "CSV output");
    matrix->add_option("--json", mx_json, "optional JSON output");

    // ---- cluster ----
    auto* cluster_cmd = app.add_subcommand("cluster", "agglomerate a similarity matrix");
    std::string cl_matrix, cl_linkage = "average", cl_partition = "partition.csv", cl_dendrogram;
    std::size_t cl_k = 0;
    cluster_cmd->add_option("--matrix", cl_matrix, "similarity matrix CSV")->required();
    cluster_cmd->add_option("--linkage", cl_linkage, "single|complete|average|ward");
    cluster_cmd->add_option("--k", cl_k, "number of clusters")->required();
    cluster_cmd->add_option("--out", cl_partition, "partition CSV");
    cluster_cmd->add_option("--dendrogram", cl_dendrogram, "optional dendrogram JSON");

    // ---- evaluate ----
    auto* evaluate = app.add_subcommand("evaluate", "score a partition against ground truth");
    std::string ev_partition, ev_truth, ev_out;
    evaluate->add_option("--partition", ev_partition, "partition CSV")->required();
    evaluate->add_option("--ground-truth", ev_truth, "ground-truth partition CSV")->required();
    evaluate->add_option("--out", ev_out, "report directory");

    // ---- pipeline ----
    auto* pipeline = app.add_subcommand("pipeline", "extract -> matrix -> cluster -> evaluate");
    std::string pl_config, pl_lists, pl_truth, pl_out;
    std::vector<std::string> pl_metrics;
    std::vector<std::string> pl_linkages;
    double pl_p = -1.0;
    std::size_t pl_k = 0;
    pipeline->add_option("--config", pl_config, "pipeline JSON config");
    pipeline->add_option("--lists", pl_lists, "override: ranked-list input");
    pipeline->add_option("--ground-truth", pl_truth, "override: ground truth");
    pipeline->add_option("--metric", pl_metrics, "override: metrics (repeatable)");
    pipeline->add_option("--linkage", pl_linkages, "override: linkages (repeatable)");
    pipeline->add_option("--p", pl_p, "override: default p for rbo metrics");
    pipeline->add_option("--k", pl_k, "override: cluster count");
    pipeline->add_option("--out", pl_out, "override: output directory");

    // ---- reproduce ----
    auto* reproduce = app.add_subcommand("reproduce", "check the bundled fixture expectations");
    std::string rp_fixtures = "fixtures";
    reproduce->add_option("--fixtures", rp_fixtures, "fixtures directory");

    try {
        app.parse(argc, argv);

        if (extract->parsed()) {
            ScsParams scs_params;
            scs_params.tau = ex_tau;
            scs_params.beta = ex_beta;
            if (ex_direction == "undirected")
                scs_params.direction = Direction::Undirected;
            else if (ex_direction != "forward")
                throw ConfigError("unknown direction '" + ex_direction + "'");
            if (!ex_predicates.empty()) {
                std::set<std::string> preds;
                std::istringstream ss(ex_predicates);
                std::string p;
                while (std::getline(ss, p, ','))
                    if (!p.empty()) preds.insert(p);
                scs_params.edge_filter = std::move(preds);
            }
            return cmd_extract(ex_mode, ex_out, ex_min_features, tie_break_from_string(ex_tiebreak),
                               ex_template, ex_entities, ex_feature_var, ex_score_var,
                               make_endpoint(ex_endpoint, ex_endpoint_file, ex_replay_dir,
                                             ex_record_dir, ex_timeout, ex_retries),
                               ex_leaf_counts, ex_hierarchy, ex_top_levels, ex_graph, ex_root,
                               ex_depth, scs_params, FeatureMarker{ex_marker_pred, ex_marker_target},
                               ex_corpus_dir, ex_corpus, ex_entity, ex_stopwords);
        }
        if (compare->parsed())
            return cmd_compare(cp_lists, cp_a, cp_b, cp_metrics, cp_p, cp_out);
        if (matrix->parsed()) {
            auto lists = read_ranked_lists(mx_lists);
            auto m = similarity_matrix(lists, metric_from_spec(mx_metric, mx_p));
            write_matrix_csv(mx_out, m.entities, m.values);
            if (!mx_json.empty()) write_matrix_json(mx_json, m.entities, m.values);
            std::cerr << "wrote " << m.size() << "x" << m.size() << " matrix to " << mx_out << "\n";
            return kExitOk;
        }
        if (cluster_cmd->parsed()) {
            auto sim = read_similarity_matrix_csv(cl_matrix);
            auto dist = to_distance(sim);
            Dendrogram tree = agglomerate(dist, linkage_from_string(cl_linkage));
            Partition part = cut(tree, cl_k);
            write_partition_csv(cl_partition, sim.entities, part);
            if (!cl_dendrogram.empty()) write_dendrogram_json(cl_dendrogram, tree);
            std::cerr << "wrote " << part.cluster_count() << "-cluster partition to " << cl_partition
                      << "\n";
            return kExitOk;
        }
        if (evaluate->parsed()) return cmd_evaluate(ev_partition, ev_truth, ev_out);
        if (pipeline->parsed()) {
            PipelineConfig cfg;
            if (!pl_config.empty()) cfg = load_pipeline_config(pl_config);
            if (!pl_lists.empty()) cfg.lists = pl_lists;
            if (!pl_truth.empty()) cfg.ground_truth = pl_truth;
            if (!pl_out.empty()) cfg.out_dir = pl_out;
            if (pl_k > 0) cfg.k_clusters = pl_k;
            if (!pl_metrics.empty()) {
                cfg.metrics.clear();
                for (const auto& spec : pl_metrics)
                    cfg.metrics.push_back(metric_from_spec(spec, pl_p > 0 ? pl_p : 0.98));
            } else if (pl_p > 0) {
                for (auto& m : cfg.metrics)
                    if (m.kind == MatrixMetric::Kind::Rbo) m.rbo.p = pl_p;
            }
            if (!pl_linkages.empty()) {
                cfg.linkages.clear();
                for (const auto& l : pl_linkages) cfg.linkages.push_back(linkage_from_string(l));
            }
            if (cfg.linkages.empty())
                cfg.linkages = {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward};
            PipelineReport report = run_pipeline(cfg, std::cerr);
            if (report.evaluated && report.best)
                std::cout << "best: " << report.best->metric << " + "
                          << to_string(report.best->linkage) << " linkage, ARI "
                          << format_value(report.best->ari) << "\n";
            for (const auto& p : report.outputs) std::cerr << "wrote " << p.string() << "\n";
            return kExitOk;
        }
        if (reproduce->parsed())
            return run_reproduce(rp_fixtures, std::cout) ? kExitOk : kExitCheckFailed;
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << " (attempts=" << e.attempts() << ")\n";
        return kExitTransport;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

#include "ranksim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ranksim/evaluation.hpp"
#include "ranksim/extraction.hpp"
#include "ranksim/io.hpp"

namespace ranksim {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string slug(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.')
            out.push_back(c);
        else if (!out.empty() && out.back() != '-')
            out.push_back('-');
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

MatrixMetric metric_from_json(const json& spec) {
    MatrixMetric m;
    std::string kind = spec.at("kind").get<std::string>();
    if (kind == "jaccard") {
        m.kind = MatrixMetric::Kind::Jaccard;
    } else if (kind == "cosine") {
        m.kind = MatrixMetric::Kind::Cosine;
    } else if (kind == "rbo") {
        m.kind = MatrixMetric::Kind::Rbo;
        if (spec.contains("p")) m.rbo.p = spec["p"].get<double>();
        if (spec.contains("extrapolation")) {
            std::string e = spec["extrapolation"].get<std::string>();
            if (e == "carry-last")
                m.rbo.extrapolation = RboExtrapolation::CarryLastAgreement;
            else if (e == "fixed-overlap")
                m.rbo.extrapolation = RboExtrapolation::FixedOverlap;
            else
                throw ConfigError("unknown rbo extrapolation '" + e + "'");
        }
    } else if (kind == "ao") {
        m.kind = MatrixMetric::Kind::AverageOverlap;
        if (spec.contains("k")) m.ao_depth = spec["k"].get<std::size_t>();
    } else {
        throw ConfigError("unknown metric kind '" + kind + "'");
    }
    return m;
}

Partition truth_partition_for(const GroundTruth& gt, const std::vector<EntityId>& entities) {
    std::map<EntityId, std::size_t> label_of;
    for (std::size_t g = 0; g < gt.groups.size(); ++g)
        for (const auto& e : gt.groups[g].second) label_of[e] = g;
    Partition p;
    p.labels.reserve(entities.size());
    for (const auto& e : entities) {
        auto it = label_of.find(e);
        if (it == label_of.end())
            throw DataError("ground truth has no group for entity '" + e + "'");
        p.labels.push_back(it->second);
    }
    return p;
}

} // namespace

void PipelineConfig::validate() const {
    if (lists.empty()) throw ConfigError("pipeline: 'lists' input is required");
    if (!fs::exists(lists)) throw ConfigError("pipeline: lists file not found: " + lists.string());
    if (metrics.empty()) throw ConfigError("pipeline: at least one metric is required");
    if (linkages.empty()) throw ConfigError("pipeline: at least one linkage is required");
    if (k_clusters < 1) throw ConfigError("pipeline: k_clusters must be >= 1");
    if (out_dir.empty()) throw ConfigError("pipeline: out_dir is required");
    if (!ground_truth.empty() && !fs::exists(ground_truth))
        throw ConfigError("pipeline: ground truth file not found: " + ground_truth.string());
}

PipelineConfig load_pipeline_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    PipelineConfig cfg;
    const fs::path base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };
    try {
        cfg.lists = resolve(doc.at("lists").get<std::string>());
        if (doc.contains("ground_truth"))
            cfg.ground_truth = resolve(doc["ground_truth"].get<std::string>());
        for (const auto& m : doc.at("metrics")) cfg.metrics.push_back(metric_from_json(m));
        if (doc.contains("linkages"))
            for (const auto& l : doc["linkages"])
                cfg.linkages.push_back(linkage_from_string(l.get<std::string>()));
        else
            cfg.linkages = {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward};
        cfg.k_clusters = doc.at("k_clusters").get<std::size_t>();
        if (doc.contains("ndcg_depths"))
            for (const auto& d : doc["ndcg_depths"]) cfg.ndcg_depths.push_back(d.get<std::size_t>());
        cfg.out_dir = doc.contains("out_dir") ? resolve(doc["out_dir"].get<std::string>()) : base / "out";
        if (doc.contains("threads")) cfg.threads = doc["threads"].get<std::size_t>();
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return cfg;
}

PipelineReport run_pipeline(const PipelineConfig& config, std::ostream& log) {
    config.validate();
    PipelineReport report;
    std::vector<fs::path> written;
    auto emit = [&](const fs::path& p) { written.push_back(p); };

    std::string stage = "load";
    try {
        auto lists = read_ranked_lists(config.lists);
        if (lists.size() < 2) throw DataError("need at least 2 entities, got " +
                                              std::to_string(lists.size()));
        if (config.k_clusters > lists.size())
            throw DataError("k_clusters exceeds the number of entities");
        std::vector<EntityId> entities;
        entities.reserve(lists.size());
        for (const auto& l : lists) entities.push_back(l.entity);

        GroundTruth gt;
        bool have_partition_gt = false, have_ranking_gt = false;
        if (!config.ground_truth.empty()) {
            if (config.ground_truth.extension() == ".csv") {
                gt = read_ground_truth_partition_csv(config.ground_truth);
                have_partition_gt = true;
            } else {
                gt = read_ground_truth_rankings_jsonl(config.ground_truth);
                have_ranking_gt = true;
            }
        }

        fs::create_directories(config.out_dir);

        // matrix stage: one similarity matrix per metric
        stage = "matrix";
        std::vector<SimilarityMatrix> matrices;
        std::vector<DistanceMatrix> distances;
        for (const auto& metric : config.metrics) {
            SimilarityMatrix m = similarity_matrix(lists, metric, config.threads);
            fs::path mpath = config.out_dir / ("matrix_" + slug(metric.describe()) + ".csv");
            write_matrix_csv(mpath, m.entities, m.values);
            emit(mpath);
            distances.push_back(to_distance(m));
            matrices.push_back(std::move(m));
        }

        // cluster stage: metric x linkage grid, cells fan out in parallel
        stage = "cluster";
        std::vector<Partition> partitions(config.metrics.size() * config.linkages.size());
        {
            std::vector<std::future<void>> cells;
            for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
                for (std::size_t li = 0; li < config.linkages.size(); ++li) {
                    cells.push_back(std::async(std::launch::async, [&, mi, li] {
                        Dendrogram tree = agglomerate(distances[mi], config.linkages[li]);
                        partitions[mi * config.linkages.size() + li] =
                            cut(tree, config.k_clusters);
                    }));
                }
            }
            for (auto& c : cells) c.get();
        }

        // evaluate stage
        stage = "evaluate";
        if (have_partition_gt) {
            Partition truth = truth_partition_for(gt, entities);
            for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
                for (std::size_t li = 0; li < config.linkages.size(); ++li) {
                    GridCell cell;
                    cell.metric = config.metrics[mi].describe();
                    cell.linkage = config.linkages[li];
                    cell.ari = adjusted_rand_index(
                        truth, partitions[mi * config.linkages.size() + li]);
                    report.grid.push_back(cell);
                }
            }
            report.evaluated = true;

            // ARI grid CSV, metric rows x linkage columns
            fs::path grid_path = config.out_dir / "ari_grid.csv";
            {
                std::ofstream out(grid_path, std::ios::binary);
                out << "metric";
                for (auto l : config.linkages) out << "," << to_string(l);
                out << "\n";
                std::size_t idx = 0;
                for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
                    out << config.metrics[mi].describe();
                    for (std::size_t li = 0; li < config.linkages.size(); ++li)
                        out << "," << format_value(report.grid[idx++].ari);
                    out << "\n";
                }
            }
            emit(grid_path);

            std::size_t best_idx = 0;
            for (std::size_t i = 1; i < report.grid.size(); ++i)
                if (report.grid[i].ari > report.grid[best_idx].ari) best_idx = i;
            report.best = report.grid[best_idx];

            // confusion matrix for the best cell, with labeled margins
            const Partition& best_partition = partitions[best_idx];
            auto confusion = confusion_matrix(truth, best_partition);
            fs::path conf_path = config.out_dir / "best_confusion.csv";
            {
                std::ofstream out(conf_path, std::ios::binary);
                const std::size_t n_cols = confusion.empty() ? 0 : confusion[0].size();
                out << "group";
                for (std::size_t j = 0; j < n_cols; ++j) out << ",cluster_" << j;
                out << ",total\n";
                for (std::size_t i = 0; i < confusion.size(); ++i) {
                    out << gt.groups[i].first;
                    std::size_t row_sum = 0;
                    for (std::size_t j = 0; j < confusion[i].size(); ++j) {
                        out << "," << confusion[i][j];
                        row_sum += confusion[i][j];
                    }
                    out << "," << row_sum << "\n";
                }
                out << "total";
                if (!confusion.empty()) {
                    for (std::size_t j = 0; j < confusion[0].size(); ++j) {
                        std::size_t col_sum = 0;
                        for (std::size_t i = 0; i < confusion.size(); ++i) col_sum += confusion[i][j];
                        out << "," << col_sum;
                    }
                }
                out << "," << entities.size() << "\n";
            }
            emit(conf_path);

            fs::path part_path = config.out_dir / "best_partition.csv";
            write_partition_csv(part_path, entities, best_partition);
            emit(part_path);
        } else {
            log << "notice: no partition ground truth supplied; grid computed, "
                   "evaluation skipped\n";
            for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
                for (std::size_t li = 0; li < config.linkages.size(); ++li) {
                    fs::path part_path =
                        config.out_dir / ("partition_" + slug(config.metrics[mi].describe()) + "_" +
                                          to_string(config.linkages[li]) + ".csv");
                    write_partition_csv(part_path, entities,
                                        partitions[mi * config.linkages.size() + li]);
                    emit(part_path);
                }
            }
        }

        // plot-ready NDCG curves when a ranking ground truth is available
        if (have_ranking_gt && !config.ndcg_depths.empty()) {
            fs::path curve_path = config.out_dir / "ndcg_curves.csv";
            std::ofstream out(curve_path, std::ios::binary);
            out << "metric,k,ndcg\n";
            for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
                const auto& m = matrices[mi];
                for (std::size_t k : config.ndcg_depths) {
                    double sum = 0.0;
                    std::size_t counted = 0;
                    for (const auto& [entity, reference] : gt.rankings) {
                        auto idx = m.index_of(entity);
                        if (!idx || reference.empty()) continue;
                        auto similars = rank_similars(entity, m, m.size() - 1);
                        std::vector<EntityId> predicted;
                        predicted.reserve(similars.size());
                        for (const auto& [id, score] : similars) predicted.push_back(id);
                        auto [pred_gains, ideal_gains] = gains_from_reference(predicted, reference);
                        sum += ndcg_at_k(pred_gains, ideal_gains, k);
                        ++counted;
                    }
                    if (counted == 0) continue;
                    out << config.metrics[mi].describe() << "," << k << ","
                        << format_value(sum / static_cast<double>(counted)) << "\n";
                }
            }
            emit(curve_path);
        }

        // summary report
        stage = "report";
        fs::path summary_path = config.out_dir / "summary.json";
        {
            ordered_json doc;
            doc["lists"] = config.lists.filename().string();
            doc["entities"] = entities.size();
            doc["k_clusters"] = config.k_clusters;
            doc["metrics"] = ordered_json::array();
            for (const auto& m : config.metrics) doc["metrics"].push_back(m.describe());
            doc["linkages"] = ordered_json::array();
            for (auto l : config.linkages) doc["linkages"].push_back(to_string(l));
            doc["evaluated"] = report.evaluated;
            if (report.evaluated) {
                doc["grid"] = ordered_json::array();
                for (const auto& c : report.grid)
                    doc["grid"].push_back(ordered_json{{"metric", c.metric},
                                                       {"linkage", to_string(c.linkage)},
                                                       {"ari", c.ari}});
                doc["best"] = ordered_json{{"metric", report.best->metric},
                                           {"linkage", to_string(report.best->linkage)},
                                           {"ari", report.best->ari}};
            }
            doc["outputs"] = ordered_json::array();
            for (const auto& p : written) doc["outputs"].push_back(p.filename().string());
            std::ofstream out(summary_path, std::ios::binary);
            out << doc.dump(2) << "\n";
        }
        emit(summary_path);
        report.outputs = written;
        return report;
    } catch (const Error&) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw;
    } catch (const std::exception& e) {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        throw DataError("pipeline stage '" + stage + "': " + e.what());
    }
}

namespace {

struct CheckPrinter {
    std::ostream& out;
    bool all_pass = true;

    void result(const std::string& name, bool pass, const std::string& detail) {
        all_pass = all_pass && pass;
        out << (pass ? "PASS" : "FAIL") << "  " << name << "  " << detail << "\n";
    }

    void numeric(const std::string& name, double measured, double expected, double tol) {
        std::ostringstream os;
        os << "measured=" << measured << " expected=" << expected << " tol=" << tol;
        result(name, std::abs(measured - expected) <= tol, os.str());
    }

    void missing(const std::string& name, const std::string& what) {
        all_pass = false;
        out << "FAIL  " << name << "  MISSING FIXTURE: " << what << "\n";
    }
};

RankedFeatureList list_of(const EntityId& entity, const std::vector<std::string>& ids) {
    RankedFeatureList l;
    l.entity = entity;
    const double n = static_cast<double>(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        l.items.push_back(ScoredFeature{ids[i], n - static_cast<double>(i)});
    return l;
}

} // namespace

bool run_reproduce(const fs::path& fixtures_dir, std::ostream& out) {
    CheckPrinter check{out};

    // Prefix agreement and average overlap series over the worked example pair.
    {
        auto s = list_of("S", {"a", "b", "c", "d", "e", "f", "g"});
        auto t = list_of("T", {"z", "c", "a", "v", "w", "x", "y"});
        const double expected_a[] = {0.000, 0.000, 0.667, 0.500, 0.400, 0.333, 0.286};
        const double expected_ao[] = {0.000, 0.000, 0.222, 0.292, 0.313, 0.317, 0.312};
        for (std::size_t d = 1; d <= 7; ++d) {
            check.numeric("agreement@" + std::to_string(d), agreement_at_depth(s, t, d),
                          expected_a[d - 1], 0.0005);
            check.numeric("average_overlap@" + std::to_string(d), average_overlap(s, t, d),
                          expected_ao[d - 1], 0.0005);
        }
    }

    // Two-dataset metric quartet from the bundled top-level category lists.
    {
        const fs::path path = fixtures_dir / "lod" / "dataset_profiles.jsonl";
        try {
            auto lists = read_ranked_lists_jsonl(path);
            const RankedFeatureList* eu = nullptr;
            const RankedFeatureList* rkb = nullptr;
            for (const auto& l : lists) {
                if (l.entity == "eu-agencies-bodies") eu = &l;
                if (l.entity == "rkb-explorer-citeseer") rkb = &l;
            }
            if (!eu || !rkb) throw DataError("expected entities missing from " + path.string());
            check.numeric("dataset-pair.jaccard", jaccard(*eu, *rkb), 0.9565, 0.001);
            auto freq = [](const RankedFeatureList& l) {
                std::map<std::string, double> f;
                for (const auto& it : l.items) f[it.feature] = it.score;
                return f;
            };
            check.numeric("dataset-pair.cosine", cosine(freq(*eu), freq(*rkb), eu->entity, rkb->entity),
                          0.784, 0.005);
            RboParams p98;
            p98.p = 0.98;
            check.numeric("dataset-pair.rbo(p=0.98)", rbo(*eu, *rkb, p98), 0.887, 0.02);
            RboParams p99;
            p99.p = 0.99;
            check.numeric("dataset-pair.rbo(p=0.99)", rbo(*eu, *rkb, p99), 0.940, 0.02);
        } catch (const DataError& e) {
            check.missing("dataset-pair", e.what());
        }
    }

    // Recorded museum extraction: order must match the published list exactly.
    {
        const fs::path tmpl_path = fixtures_dir / "museums" / "art_movements.rq";
        const fs::path replay_dir = fixtures_dir / "museums" / "sparql";
        try {
            QueryTemplate tmpl = load_query_template(tmpl_path);
            EndpointConfig cfg;
            cfg.mode = EndpointConfig::Mode::Replay;
            cfg.fixture_dir = replay_dir;
            SparqlClient client(cfg);
            auto list = query_based_extract(
                client, tmpl, "http://dbpedia.org/resource/J._Paul_Getty_Museum",
                TieBreak::Lexicographic);
            const std::vector<std::string> expected = {
                "http://dbpedia.org/resource/Symbolism_(arts)",
                "http://dbpedia.org/resource/Baroque",
                "http://dbpedia.org/resource/Expressionism",
                "http://dbpedia.org/resource/Romanticism",
                "http://dbpedia.org/resource/High_Renaissance",
                "http://dbpedia.org/resource/Dutch_Golden_Age_painting",
                "http://dbpedia.org/resource/Academic_art",
                "http://dbpedia.org/resource/Post-Impressionism",
                "http://dbpedia.org/resource/Mannerism",
            };
            bool ok = list.feature_ids() == expected;
            check.result("getty.extraction_order", ok,
                         ok ? "9 art movements in the published order"
                            : "ordering differs from the recorded fixture expectation");
        } catch (const Error& e) {
            check.missing("getty.extraction_order", e.what());
        }
    }

    out << (check.all_pass ? "reproduce: all checks passed\n"
                           : "reproduce: some checks FAILED\n");
    return check.all_pass;
}

} // namespace ranksim

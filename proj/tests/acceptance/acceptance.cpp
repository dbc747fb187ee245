// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "../oracles.hpp"
#include "ranksim/cluster.hpp"
#include "ranksim/evaluation.hpp"
#include "ranksim/io.hpp"
#include "ranksim/rank_metrics.hpp"

using namespace ranksim;
namespace fs = std::filesystem;

namespace {

const std::string kCli = RANKSIM_CLI_PATH;
const std::string kFixtures = RANKSIM_FIXTURES_DIR;

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    if (!pass) ++g_failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
}

RankedFeatureList list_of(const EntityId& e, const std::vector<std::string>& ids) {
    RankedFeatureList l;
    l.entity = e;
    const double n = static_cast<double>(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        l.items.push_back({ids[i], n - static_cast<double>(i)});
    return l;
}

RankedFeatureList random_list(std::mt19937& rng, const EntityId& e, std::size_t pool_size = 20,
                              std::size_t max_len = 12) {
    std::vector<std::string> pool;
    for (std::size_t i = 0; i < pool_size; ++i) pool.push_back("f" + std::to_string(i));
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(1 + rng() % max_len);
    return list_of(e, pool);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args, const fs::path& log_dir, const std::string& tag) {
    std::string cmd = kCli + " " + args + " > " + (log_dir / (tag + ".out")).string() + " 2> " +
                      (log_dir / (tag + ".err")).string();
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---- criterion 1: prefix agreement / average overlap series ----
void criterion_1() {
    auto s = list_of("S", {"a", "b", "c", "d", "e", "f", "g"});
    auto t = list_of("T", {"z", "c", "a", "v", "w", "x", "y"});
    const double expected_a[] = {0.000, 0.000, 0.667, 0.500, 0.400, 0.333, 0.286};
    const double expected_ao[] = {0.000, 0.000, 0.222, 0.292, 0.313, 0.317, 0.312};

    bool values_ok = true;
    std::ostringstream detail;
    auto start = std::chrono::steady_clock::now();
    double a_got[7], ao_got[7];
    for (std::size_t d = 1; d <= 7; ++d) {
        a_got[d - 1] = agreement_at_depth(s, t, d);
        ao_got[d - 1] = average_overlap(s, t, d);
    }
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             start)
                       .count();
    for (std::size_t d = 1; d <= 7; ++d) {
        if (std::abs(a_got[d - 1] - expected_a[d - 1]) > 0.0005) values_ok = false;
        if (std::abs(ao_got[d - 1] - expected_ao[d - 1]) > 0.0005) values_ok = false;
    }
    detail << "runtime " << elapsed << " ms";
    report(1, "prefix agreement and average overlap series (±0.0005, <1ms)",
           values_ok && elapsed < 1.0, detail.str());
}

// ---- criterion 2: Table 10 metric quartet ----
void criterion_2() {
    bool ok = true;
    std::ostringstream detail;
    try {
        auto lists = read_ranked_lists_jsonl(kFixtures + "/lod/dataset_profiles.jsonl");
        const auto& eu = lists.at(0);
        const auto& rkb = lists.at(1);
        std::map<std::string, double> fu, fv;
        for (const auto& it : eu.items) fu[it.feature] = it.score;
        for (const auto& it : rkb.items) fv[it.feature] = it.score;

        double j = jaccard(eu, rkb);
        double c = cosine(fu, fv);
        RboParams p98;
        p98.p = 0.98;
        RboParams p99;
        p99.p = 0.99;
        double r98 = rbo(eu, rkb, p98);
        double r99 = rbo(eu, rkb, p99);
        ok = std::abs(j - 0.9565) <= 0.001 && std::abs(c - 0.784) <= 0.005 &&
             std::abs(r98 - 0.887) <= 0.02 && std::abs(r99 - 0.940) <= 0.02;
        detail << "jaccard=" << j << " cosine=" << c << " rbo98=" << r98 << " rbo99=" << r99;
    } catch (const std::exception& e) {
        ok = false;
        detail << e.what();
    }
    report(2, "two-dataset metric quartet (0.9565/0.784/0.887/0.940)", ok, detail.str());
}

// ---- criterion 3: RBO property suite ----
void criterion_3() {
    std::mt19937 rng(20260811);
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        auto s = random_list(rng, "s");
        auto t = random_list(rng, "t");
        RboParams params;
        params.p = 0.05 + 0.9 * (static_cast<double>(rng() % 1000) / 1000.0);

        double v = rbo(s, t, params);
        if (!(v >= 0.0 && v <= 1.0)) { ok = false; why = "range"; }
        if (rbo(t, s, params) != v) { ok = false; why = "symmetry"; }
        if (std::abs(rbo(s, s, params) - 1.0) > 1e-9) { ok = false; why = "identity"; }

        RankedFeatureList disjoint{"d", {}};
        for (std::size_t i = 0; i < t.size(); ++i)
            disjoint.items.push_back(
                {"other" + std::to_string(i), static_cast<double>(t.size() - i)});
        if (rbo(s, disjoint, params) != 0.0) { ok = false; why = "disjoint"; }

        RboParams truncated = params;
        truncated.tail = RboTail::Truncated;
        truncated.truncate_tolerance = 1e-12;
        if (std::abs(rbo(s, t, truncated) - v) > 1e-9) { ok = false; why = "analytic-vs-truncated"; }
    }
    // top-weighting on single-shared-item constructions
    RboParams params;
    params.p = 0.9;
    auto make = [](std::size_t pos, std::size_t len, const std::string& fill) {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < len; ++i)
            ids.push_back(i + 1 == pos ? "shared" : fill + std::to_string(i));
        return ids;
    };
    double top = rbo(list_of("s", make(1, 7, "s")), list_of("t", make(1, 7, "t")),
                     params);
    for (std::size_t i = 1; i <= 7 && ok; ++i) {
        for (std::size_t j = 1; j <= 7 && ok; ++j) {
            double v = rbo(list_of("s", make(i, 7, "s")), list_of("t", make(j, 7, "t")),
                           params);
            if (top < v || ((i != 1 || j != 1) && !(top > v))) { ok = false; why = "top-weighting"; }
        }
    }
    report(3, "RBO property suite over 1000 randomized pairs", ok, why);
}

// ---- criterion 4: clustering oracle equivalence ----
void criterion_4() {
    std::mt19937 rng(4242);
    bool ok = true;
    std::string why;
    int trials = 0;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        std::size_t n = 4 + rng() % 9; // 4..12
        DistanceMatrix d;
        for (std::size_t i = 0; i < n; ++i) d.entities.push_back("e" + std::to_string(i));
        d.values.assign(n * n, 0.0);
        std::uniform_real_distribution<double> uni(0.1, 2.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                double v = uni(rng);
                d.at(i, j) = v;
                d.at(j, i) = v;
            }
        for (auto linkage :
             {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward}) {
            auto fast = agglomerate(d, linkage);
            auto naive = oracles::naive_agglomerate(d, linkage);
            for (std::size_t s = 0; s < fast.merges.size(); ++s) {
                if (fast.merges[s].left != naive.merges[s].left ||
                    fast.merges[s].right != naive.merges[s].right) {
                    ok = false;
                    why = "merge sequence differs (" + to_string(linkage) + ")";
                    break;
                }
                if (std::abs(fast.merges[s].height - naive.merges[s].height) > 1e-9) {
                    ok = false;
                    why = "merge height differs (" + to_string(linkage) + ")";
                    break;
                }
            }
        }
        ++trials;
    }
    report(4, "Lance-Williams matches the naive re-scan oracle (100 matrices, 4 linkages)", ok,
           ok ? std::to_string(trials) + " matrices" : why);
}

// ---- criterion 5: ARI oracle equivalence ----
void criterion_5() {
    std::mt19937 rng(555);
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        std::size_t n = 2 + rng() % 9; // 2..10
        Partition p, q;
        for (std::size_t i = 0; i < n; ++i) {
            p.labels.push_back(rng() % 4);
            q.labels.push_back(rng() % 4);
        }
        auto compact = [](Partition& part) {
            std::map<std::size_t, std::size_t> remap;
            for (auto& l : part.labels) {
                auto [it, ins] = remap.emplace(l, remap.size());
                l = it->second;
            }
        };
        compact(p);
        compact(q);
        double lib = adjusted_rand_index(p, q);
        double ora = oracles::pair_counting_ari(p.labels, q.labels);
        if (std::abs(lib - ora) > 1e-12) { ok = false; why = "oracle disagreement"; }

        if (p.cluster_count() > 1) {
            Partition single;
            single.labels.assign(n, 0);
            if (adjusted_rand_index(p, single) != 0.0) {
                ok = false;
                why = "single-cluster not exactly 0";
            }
        }
    }
    report(5, "ARI matches the pair-counting oracle (500 pairs, 1e-12)", ok, why);
}

// ---- criterion 6: SCS oracle equivalence + monotonicity ----
void criterion_6() {
    std::mt19937 rng(666);
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        FeatureGraph g;
        std::size_t n = 2 + rng() % 7; // 2..8 nodes
        std::vector<EntityId> nodes;
        for (std::size_t i = 0; i < n; ++i) {
            nodes.push_back("n" + std::to_string(i));
            g.add_node(nodes.back());
        }
        std::size_t edges = rng() % (n * n);
        const char* preds[] = {"p", "q"};
        for (std::size_t e = 0; e < edges; ++e) {
            auto a = nodes[rng() % n];
            auto b = nodes[rng() % n];
            if (a != b) g.add_edge(a, preds[rng() % 2], b);
        }
        auto a = nodes[0];
        auto b = nodes[n - 1];
        if (a == b) continue;
        std::size_t tau = 1 + rng() % 4;

        double last = -1.0;
        bool any_path = false;
        for (double beta : {0.3, 0.5, 0.9}) {
            ScsParams params;
            params.tau = tau;
            params.beta = beta;
            double lib = scs(g, a, b, params);
            double ora = oracles::enumerate_scs(g, a, b, tau, beta, Direction::Forward);
            if (std::abs(lib - ora) > 1e-12) { ok = false; why = "enumeration disagreement"; }
            if (lib < last) { ok = false; why = "beta monotonicity"; }
            if (last >= 0.0 && last > 0.0 && lib <= last) { ok = false; why = "beta strictness"; }
            if (lib > 0.0) any_path = true;
            last = lib;
        }
        (void)any_path;
        ScsParams shallow, deep;
        shallow.tau = std::max<std::size_t>(1, tau - 1);
        deep.tau = tau;
        if (scs(g, a, b, shallow) > scs(g, a, b, deep) + 1e-15) {
            ok = false;
            why = "tau monotonicity";
        }
    }
    report(6, "SCS matches exhaustive path enumeration (200 graphs, 1e-12)", ok, why);
}

// ---- criterion 7: NDCG properties ----
void criterion_7() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> uni(0.0, 4.0);
    bool ok = true;
    std::string why;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        std::size_t z = 1 + rng() % 10;
        GainVector gains(z);
        for (auto& g : gains) g = uni(rng);
        GainVector ideal = gains;
        std::sort(ideal.rbegin(), ideal.rend());
        if (ideal[0] == 0.0) continue;
        std::size_t k = 1 + rng() % z;

        if (ndcg_at_k(ideal, ideal, k) != 1.0) { ok = false; why = "ideal != 1"; }
        GainVector shuffled = gains;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        double v = ndcg_at_k(shuffled, ideal, k);
        if (v > 1.0 + 1e-12) { ok = false; why = "permutation > 1"; }

        // base invariance: recompute the ratio with natural logs
        auto dcg_ln = [&](const GainVector& g) {
            double sum = 0.0;
            for (std::size_t i = 1; i <= std::min(k, g.size()); ++i)
                sum += g[i - 1] / std::log(static_cast<double>(i) + 1.0);
            return sum;
        };
        double via_ln = dcg_ln(shuffled) / dcg_ln(ideal);
        if (std::abs(v - via_ln) > 1e-12) { ok = false; why = "base invariance"; }
    }
    report(7, "NDCG: ideal=1 exactly, permutations <=1, base-invariant (10000 vectors)", ok, why);
}

// ---- criterion 8: recorded-extraction determinism ----
void criterion_8(const fs::path& work) {
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::string> outputs;
    for (int run = 1; run <= 3 && ok; ++run) {
        fs::path out = work / ("extract_run" + std::to_string(run) + ".jsonl");
        int code = run_cli("extract --mode query --template " + kFixtures +
                               "/museums/art_movements.rq --entities " + kFixtures +
                               "/museums/entities.txt --replay-dir " + kFixtures +
                               "/museums/sparql --out " + out.string(),
                           work, "extract" + std::to_string(run));
        if (code != 0) {
            ok = false;
            detail << "exit code " << code;
            break;
        }
        outputs.push_back(slurp(out));
    }
    if (ok && (outputs[0] != outputs[1] || outputs[1] != outputs[2])) {
        ok = false;
        detail << "runs differ byte-wise";
    }
    if (ok) {
        auto lists = read_ranked_lists_jsonl(work / "extract_run1.jsonl");
        const auto& getty = lists.at(0);
        ok = getty.size() == 9 &&
             getty.items.front().feature == "http://dbpedia.org/resource/Symbolism_(arts)" &&
             getty.items.back().feature == "http://dbpedia.org/resource/Mannerism";
        if (!ok) detail << "ordering differs from the recorded expectation";
    }
    report(8, "recorded museum extraction: published order, byte-identical over 3 runs", ok,
           detail.str());
}

// ---- criteria 9 & 10: synthetic pipeline grid + end-to-end determinism ----
struct GridFile {
    std::vector<std::string> linkages;
    std::vector<std::pair<std::string, std::vector<double>>> rows;
};

GridFile parse_grid(const fs::path& path) {
    GridFile grid;
    std::ifstream in(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty grid file");
    std::istringstream header(line);
    std::string cell;
    std::getline(header, cell, ',');
    while (std::getline(header, cell, ',')) grid.linkages.push_back(cell);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string metric;
        std::getline(row, metric, ',');
        std::vector<double> values;
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        grid.rows.emplace_back(metric, values);
    }
    return grid;
}

void criteria_9_and_10(const fs::path& work) {
    bool ok9 = true, ok10 = true;
    std::ostringstream detail9, detail10;
    fs::path out1 = work / "pipe1";
    fs::path out2 = work / "pipe2";

    auto start = std::chrono::steady_clock::now();
    int code = run_cli("pipeline --config " + kFixtures + "/synthetic/pipeline.json --out " +
                           out1.string(),
                       work, "pipe1");
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (code != 0) {
        ok9 = false;
        detail9 << "exit code " << code;
    } else {
        try {
            auto grid = parse_grid(out1 / "ari_grid.csv");
            double best = -2.0;
            std::string best_metric, best_linkage;
            int best_count = 0;
            for (const auto& [metric, values] : grid.rows) {
                for (std::size_t li = 0; li < values.size(); ++li) {
                    if (values[li] > best) {
                        best = values[li];
                        best_metric = metric;
                        best_linkage = grid.linkages[li];
                        best_count = 1;
                    } else if (values[li] == best) {
                        ++best_count;
                    }
                }
            }
            detail9 << "max " << best_metric << "+" << best_linkage << " ari=" << best
                    << " runtime=" << elapsed << "s";
            if (best_metric.rfind("rbo", 0) != 0 || best_linkage != "average" || best < 0.9 ||
                best_count != 1)
                ok9 = false;
            if (elapsed >= 10.0) ok9 = false;

            // naive-oracle recomputation of the whole grid
            auto lists = read_ranked_lists_jsonl(kFixtures + "/synthetic/communities.jsonl");
            auto gt = read_ground_truth_partition_csv(kFixtures + "/synthetic/ground_truth.csv");
            std::map<EntityId, std::size_t> label_of;
            for (std::size_t g = 0; g < gt.groups.size(); ++g)
                for (const auto& e : gt.groups[g].second) label_of[e] = g;
            Partition truth;
            for (const auto& l : lists) truth.labels.push_back(label_of.at(l.entity));

            std::vector<std::pair<std::string, MatrixMetric>> metrics;
            {
                MatrixMetric jac;
                jac.kind = MatrixMetric::Kind::Jaccard;
                metrics.emplace_back("jaccard", jac);
                MatrixMetric cos;
                cos.kind = MatrixMetric::Kind::Cosine;
                metrics.emplace_back("cosine", cos);
                MatrixMetric rb;
                rb.kind = MatrixMetric::Kind::Rbo;
                rb.rbo.p = 0.8;
                metrics.emplace_back("rbo(p=0.8)", rb);
            }
            for (std::size_t mi = 0; mi < metrics.size() && ok9; ++mi) {
                auto dist = to_distance(similarity_matrix(lists, metrics[mi].second));
                if (grid.rows[mi].first != metrics[mi].first) {
                    ok9 = false;
                    detail9 << "; grid row order unexpected";
                    break;
                }
                for (std::size_t li = 0; li < grid.linkages.size(); ++li) {
                    auto tree = oracles::naive_agglomerate(dist,
                                                           linkage_from_string(grid.linkages[li]));
                    Partition part = cut(tree, 3);
                    double expect = adjusted_rand_index(truth, part);
                    if (std::abs(expect - grid.rows[mi].second[li]) > 1e-9) {
                        ok9 = false;
                        detail9 << "; naive oracle disagrees at " << metrics[mi].first << "+"
                                << grid.linkages[li];
                    }
                }
            }
        } catch (const std::exception& e) {
            ok9 = false;
            detail9 << e.what();
        }
    }
    report(9, "synthetic 3-community pipeline: rbo+average is the unique grid max >= 0.9", ok9,
           detail9.str());

    // criterion 10: run again, compare every report byte-for-byte
    int code2 = run_cli("pipeline --config " + kFixtures + "/synthetic/pipeline.json --out " +
                            out2.string(),
                        work, "pipe2");
    if (code != 0 || code2 != 0) {
        ok10 = false;
        detail10 << "exit codes " << code << "/" << code2;
    } else {
        std::size_t compared = 0;
        for (const auto& entry : fs::directory_iterator(out1)) {
            fs::path other = out2 / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
                ok10 = false;
                detail10 << "mismatch: " << entry.path().filename().string() << " ";
            }
            ++compared;
        }
        detail10 << compared << " reports compared";
    }
    report(10, "running the pipeline twice yields byte-identical reports", ok10, detail10.str());
}

} // namespace

int main() {
    fs::path work = fs::temp_directory_path() / "ranksim-acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(work);
    criteria_9_and_10(work);

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) FAILED\n";
    return 1;
}

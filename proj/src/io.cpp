#include "ranksim/io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ranksim {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) cells.push_back(cell);
    return cells;
}

std::string strip_angle(std::string s) {
    if (s.size() >= 2 && s.front() == '<' && s.back() == '>') return s.substr(1, s.size() - 2);
    return s;
}

json parse_json_line(const std::string& line, const fs::path& path, std::size_t line_no) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
}

} // namespace

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

std::vector<RankedFeatureList> read_ranked_lists_jsonl(const fs::path& path) {
    auto in = open_in(path);
    std::vector<RankedFeatureList> lists;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = parse_json_line(line, path, line_no);
        RankedFeatureList l;
        try {
            l.entity = rec.at("entity").get<std::string>();
            for (const auto& f : rec.at("features"))
                l.items.push_back(
                    ScoredFeature{f.at("id").get<std::string>(), f.value("score", 0.0)});
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        l.validate();
        lists.push_back(std::move(l));
    }
    return lists;
}

void write_ranked_lists_jsonl(const fs::path& path, const std::vector<RankedFeatureList>& lists) {
    auto out = open_out(path);
    for (const auto& l : lists) {
        ordered_json rec;
        rec["entity"] = l.entity;
        rec["features"] = ordered_json::array();
        for (const auto& it : l.items)
            rec["features"].push_back(ordered_json{{"id", it.feature}, {"score", it.score}});
        out << rec.dump() << "\n";
    }
}

std::vector<RankedFeatureList> read_ranked_lists_tsv(const fs::path& path) {
    auto in = open_in(path);
    // entity -> (features in row order, scores or empty)
    std::vector<EntityId> order;
    std::map<EntityId, std::vector<std::pair<std::string, std::optional<double>>>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line, '\t');
        if (cells.size() != 2 && cells.size() != 3)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 2 or 3 tab-separated columns");
        std::optional<double> score;
        if (cells.size() == 3) {
            try {
                score = std::stod(cells[2]);
            } catch (const std::exception&) {
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": bad score '" + cells[2] + "'");
            }
        }
        if (!rows.count(cells[0])) order.push_back(cells[0]);
        rows[cells[0]].emplace_back(cells[1], score);
    }
    std::vector<RankedFeatureList> lists;
    for (const auto& entity : order) {
        const auto& feats = rows[entity];
        std::vector<ScoredFeature> scored;
        scored.reserve(feats.size());
        const double n = static_cast<double>(feats.size());
        for (std::size_t i = 0; i < feats.size(); ++i) {
            double s = feats[i].second ? *feats[i].second : n - static_cast<double>(i);
            scored.push_back(ScoredFeature{feats[i].first, s});
        }
        lists.push_back(build_ranked_list(entity, std::move(scored), TieBreak::StableInputOrder));
    }
    return lists;
}

void write_ranked_lists_tsv(const fs::path& path, const std::vector<RankedFeatureList>& lists) {
    auto out = open_out(path);
    for (const auto& l : lists)
        for (const auto& it : l.items)
            out << l.entity << "\t" << it.feature << "\t" << format_value(it.score) << "\n";
}

std::vector<RankedFeatureList> read_ranked_lists(const fs::path& path) {
    auto ext = path.extension().string();
    if (ext == ".tsv") return read_ranked_lists_tsv(path);
    if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return read_ranked_lists_jsonl(path);
    throw ConfigError("unknown ranked-list format '" + ext + "' (want .jsonl or .tsv): " +
                      path.string());
}

void write_matrix_csv(const fs::path& path, const std::vector<EntityId>& entities,
                      const std::vector<double>& values) {
    auto out = open_out(path);
    const std::size_t n = entities.size();
    out << "entity";
    for (const auto& e : entities) out << "," << e;
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << entities[i];
        for (std::size_t j = 0; j < n; ++j) out << "," << format_value(values[i * n + j]);
        out << "\n";
    }
}

SimilarityMatrix read_similarity_matrix_csv(const fs::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty matrix file");
    auto header = split(line, ',');
    if (header.size() < 3 || header[0] != "entity")
        throw DataError(path.string() + ": expected 'entity,<id>,...' header");
    SimilarityMatrix m;
    m.entities.assign(header.begin() + 1, header.end());
    const std::size_t n = m.entities.size();
    m.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw DataError(path.string() + ": expected " + std::to_string(n) + " matrix rows");
        auto cells = split(line, ',');
        if (cells.size() != n + 1 || cells[0] != m.entities[i])
            throw DataError(path.string() + ": malformed row for '" + m.entities[i] + "'");
        for (std::size_t j = 0; j < n; ++j) {
            try {
                m.at(i, j) = std::stod(cells[j + 1]);
            } catch (const std::exception&) {
                throw DataError(path.string() + ": bad value '" + cells[j + 1] + "'");
            }
        }
    }
    return m;
}

void write_matrix_json(const fs::path& path, const std::vector<EntityId>& entities,
                       const std::vector<double>& values) {
    auto out = open_out(path);
    ordered_json doc;
    doc["entities"] = entities;
    doc["values"] = ordered_json::array();
    const std::size_t n = entities.size();
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(values[i * n + j]);
        doc["values"].push_back(std::move(row));
    }
    out << doc.dump(2) << "\n";
}

FeatureGraph read_graph_tsv(const fs::path& path) {
    auto in = open_in(path);
    FeatureGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line, '\t');
        if (cells.size() != 3)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected subject<TAB>predicate<TAB>object");
        g.add_edge(strip_angle(cells[0]), strip_angle(cells[1]), strip_angle(cells[2]));
    }
    return g;
}

FeatureGraph read_graph_json(const fs::path& path) {
    auto in = open_in(path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    FeatureGraph g;
    try {
        if (doc.contains("nodes"))
            for (const auto& n : doc["nodes"]) g.add_node(n.get<std::string>());
        for (const auto& e : doc.at("edges"))
            g.add_edge(e.at("s").get<std::string>(), e.at("p").get<std::string>(),
                       e.at("o").get<std::string>());
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return g;
}

FeatureGraph read_graph(const fs::path& path) {
    auto ext = path.extension().string();
    if (ext == ".tsv" || ext == ".nt") return read_graph_tsv(path);
    if (ext == ".json") return read_graph_json(path);
    throw ConfigError("unknown graph format '" + ext + "': " + path.string());
}

QueryTemplate load_query_template(const fs::path& path, const std::string& feature_variable,
                                  const std::string& score_variable) {
    auto in = open_in(path);
    std::ostringstream os;
    os << in.rdbuf();
    QueryTemplate tmpl;
    tmpl.text = os.str();
    tmpl.score_variable = score_variable;
    if (!feature_variable.empty()) {
        tmpl.feature_variable = feature_variable;
    } else {
        // first projected ?variable
        auto pos = tmpl.text.find('?');
        if (pos == std::string::npos)
            throw ConfigError(path.string() + ": no projected variable found");
        std::size_t end = pos + 1;
        while (end < tmpl.text.size() &&
               (std::isalnum(static_cast<unsigned char>(tmpl.text[end])) || tmpl.text[end] == '_'))
            ++end;
        tmpl.feature_variable = tmpl.text.substr(pos + 1, end - pos - 1);
    }
    tmpl.validate();
    return tmpl;
}

CategoryHierarchy read_hierarchy(const fs::path& edges_tsv, const fs::path& top_levels_txt) {
    CategoryHierarchy h;
    {
        auto in = open_in(edges_tsv);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            auto cells = split(line, '\t');
            if (cells.size() != 2)
                throw DataError(edges_tsv.string() + ":" + std::to_string(line_no) +
                                ": expected child<TAB>parent");
            h.parents[cells[0]].push_back(cells[1]);
        }
    }
    {
        auto in = open_in(top_levels_txt);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            h.top_levels.insert(line);
        }
    }
    h.validate();
    return h;
}

std::vector<std::pair<EntityId, std::map<std::string, std::uint64_t>>> read_leaf_counts_jsonl(
    const fs::path& path) {
    auto in = open_in(path);
    std::vector<std::pair<EntityId, std::map<std::string, std::uint64_t>>> result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = parse_json_line(line, path, line_no);
        try {
            std::map<std::string, std::uint64_t> counts;
            for (auto it = rec.at("counts").begin(); it != rec.at("counts").end(); ++it)
                counts[it.key()] = it.value().get<std::uint64_t>();
            result.emplace_back(rec.at("entity").get<std::string>(), std::move(counts));
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return result;
}

std::set<std::string> read_word_list(const fs::path& path) {
    auto in = open_in(path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        words.insert(line);
    }
    return words;
}

std::vector<std::string> read_corpus_lines(const fs::path& path) {
    auto in = open_in(path);
    std::vector<std::string> docs;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) docs.push_back(line);
    return docs;
}

void write_partition_csv(const fs::path& path, const std::vector<EntityId>& entities,
                         const Partition& partition) {
    if (entities.size() != partition.labels.size())
        throw DataError("write_partition_csv: entity/label size mismatch");
    auto out = open_out(path);
    out << "entity,cluster\n";
    for (std::size_t i = 0; i < entities.size(); ++i)
        out << entities[i] << "," << partition.labels[i] << "\n";
}

GroundTruth read_ground_truth_partition_csv(const fs::path& path) {
    auto in = open_in(path);
    GroundTruth gt;
    std::map<std::string, std::size_t> group_index;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line_no == 1 && (line == "entity,group" || line == "entity,cluster")) continue;
        auto cells = split(line, ',');
        if (cells.size() != 2)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected entity,group");
        auto [it, inserted] = group_index.emplace(cells[1], gt.groups.size());
        if (inserted) gt.groups.emplace_back(cells[1], std::vector<EntityId>{});
        gt.groups[it->second].second.push_back(cells[0]);
    }
    gt.validate();
    return gt;
}

GroundTruth read_ground_truth_rankings_jsonl(const fs::path& path) {
    auto in = open_in(path);
    GroundTruth gt;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = parse_json_line(line, path, line_no);
        try {
            std::vector<EntityId> ranking;
            for (const auto& e : rec.at("ranking")) ranking.push_back(e.get<std::string>());
            gt.rankings[rec.at("entity").get<std::string>()] = std::move(ranking);
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    gt.validate();
    return gt;
}

void write_dendrogram_json(const fs::path& path, const Dendrogram& tree) {
    auto out = open_out(path);
    ordered_json doc;
    doc["n_leaves"] = tree.n_leaves;
    doc["merges"] = ordered_json::array();
    for (const auto& m : tree.merges)
        doc["merges"].push_back(ordered_json{
            {"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
    out << doc.dump(2) << "\n";
}

} // namespace ranksim

#include "ranksim/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <sstream>

#include "ranksim/stemmer.hpp"

namespace ranksim {

namespace {

constexpr const char* kPlaceholder = "{{entity}}";

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool contains_ci(const std::string& haystack, const std::string& needle) {
    return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

} // namespace

void QueryTemplate::validate() const {
    if (text.find(kPlaceholder) == std::string::npos)
        throw ConfigError("query template: missing " + std::string(kPlaceholder) + " placeholder");
    if (feature_variable.empty()) throw ConfigError("query template: feature variable not set");
    if (text.find("?" + feature_variable) == std::string::npos)
        throw ConfigError("query template: variable ?" + feature_variable + " is not projected");
    if (!score_variable.empty() && text.find("?" + score_variable) == std::string::npos)
        throw ConfigError("query template: variable ?" + score_variable + " is not projected");
    if (!contains_ci(text, "ORDER BY DESC("))
        throw ConfigError("query template: must aggregate and ORDER BY DESC(...) a count");
}

std::string QueryTemplate::instantiate(const EntityId& entity) const {
    validate();
    std::string out = text;
    std::size_t pos = 0;
    while ((pos = out.find(kPlaceholder, pos)) != std::string::npos) {
        out.replace(pos, std::strlen(kPlaceholder), entity);
        pos += entity.size();
    }
    return out;
}

RankedFeatureList query_based_extract(const SparqlClient& client, const QueryTemplate& tmpl,
                                      const EntityId& entity, TieBreak tie_break) {
    BindingsTable table = client.execute_select(tmpl.instantiate(entity));
    std::vector<ScoredFeature> scored;
    scored.reserve(table.rows.size());
    const double n = static_cast<double>(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        auto it = row.find(tmpl.feature_variable);
        if (it == row.end())
            throw DataError("query_based_extract('" + entity + "'): row " + std::to_string(i + 1) +
                            " lacks ?" + tmpl.feature_variable);
        double score = n - static_cast<double>(i); // row order encodes rank
        if (!tmpl.score_variable.empty()) {
            auto sit = row.find(tmpl.score_variable);
            if (sit == row.end())
                throw DataError("query_based_extract('" + entity + "'): row " +
                                std::to_string(i + 1) + " lacks ?" + tmpl.score_variable);
            try {
                score = std::stod(sit->second.value);
            } catch (const std::exception&) {
                throw DataError("query_based_extract('" + entity + "'): non-numeric count '" +
                                sit->second.value + "'");
            }
        }
        scored.push_back(ScoredFeature{it->second.value, score});
    }
    return build_ranked_list(entity, std::move(scored), tie_break);
}

void CategoryHierarchy::validate() const {
    for (const auto& [child, ps] : parents) {
        for (const auto& p : ps)
            if (p == child) throw DataError("hierarchy: category '" + child + "' is its own parent");
        if (top_levels.count(child))
            throw DataError("hierarchy: top-level category '" + child + "' has a parent");
    }
}

ProfileHistogram rollup_categories(const EntityId& entity,
                                   const std::map<std::string, std::uint64_t>& leaf_counts,
                                   const CategoryHierarchy& h) {
    h.validate();
    ProfileHistogram hist;
    hist.entity = entity;

    for (const auto& [leaf, count] : leaf_counts) {
        // DFS ancestor closure with an explicit stack; gray nodes are the
        // current path, so re-entering one is a cycle.
        std::set<std::string> closure;
        std::set<std::string> on_path;
        std::vector<std::string> path;

        std::function<void(const std::string&)> visit = [&](const std::string& cat) {
            if (on_path.count(cat)) {
                std::ostringstream os;
                os << "rollup_categories: cycle detected: ";
                bool in_cycle = false;
                for (const auto& step : path) {
                    if (step == cat) in_cycle = true;
                    if (in_cycle) os << step << " -> ";
                }
                os << cat;
                throw DataError(os.str());
            }
            if (!closure.insert(cat).second) return;
            on_path.insert(cat);
            path.push_back(cat);
            if (auto it = h.parents.find(cat); it != h.parents.end())
                for (const auto& parent : it->second) visit(parent);
            on_path.erase(cat);
            path.pop_back();
        };
        visit(leaf);

        bool reached_top = false;
        for (const auto& cat : closure) {
            if (h.top_levels.count(cat)) {
                hist.counts[cat] += count;
                reached_top = true;
            }
        }
        if (!reached_top) {
            hist.unclassified += count;
            hist.unclassified_leaves.push_back(leaf);
        }
    }
    return hist;
}

RankedFeatureList histogram_to_ranked_list(const ProfileHistogram& hist, TieBreak tie_break) {
    std::vector<ScoredFeature> scored;
    for (const auto& [cat, count] : hist.counts)
        if (count > 0) scored.push_back(ScoredFeature{cat, static_cast<double>(count)});
    return build_ranked_list(hist.entity, std::move(scored), tie_break);
}

FilterResult filter_min_features(std::vector<RankedFeatureList> lists, std::size_t min_count) {
    FilterResult result;
    for (auto& l : lists) {
        if (l.size() >= min_count)
            result.kept.push_back(std::move(l));
        else
            result.dropped.emplace_back(l.entity, l.size());
    }
    return result;
}

RankedFeatureList stem_extract(const EntityId& entity, const std::vector<std::string>& documents,
                               const std::set<std::string>& stopwords) {
    std::map<std::string, std::uint64_t> freq;
    for (const auto& doc : documents) {
        std::string token;
        auto flush = [&] {
            if (token.size() >= 2 && !stopwords.count(token)) ++freq[porter_stem(token)];
            token.clear();
        };
        for (unsigned char c : doc) {
            if (std::isalnum(c))
                token.push_back(static_cast<char>(std::tolower(c)));
            else
                flush();
        }
        flush();
    }
    ProfileHistogram hist;
    hist.entity = entity;
    hist.counts = std::move(freq);
    return histogram_to_ranked_list(hist, TieBreak::Lexicographic);
}

} // namespace ranksim

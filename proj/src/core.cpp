#include "ranksim/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ranksim {

std::vector<std::string> RankedFeatureList::feature_ids() const {
    std::vector<std::string> ids;
    ids.reserve(items.size());
    for (const auto& it : items) ids.push_back(it.feature);
    return ids;
}

void RankedFeatureList::validate() const {
    if (entity.empty()) throw DataError("ranked list: empty entity id");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        if (it.feature.empty())
            throw DataError("ranked list '" + entity + "': empty feature id at rank " +
                            std::to_string(i + 1));
        if (!std::isfinite(it.score) || it.score < 0.0)
            throw DataError("ranked list '" + entity + "': invalid score for feature '" +
                            it.feature + "'");
        if (!seen.insert(it.feature).second)
            throw DataError("ranked list '" + entity + "': duplicate feature '" + it.feature + "'");
        if (i > 0 && items[i - 1].score < it.score)
            throw DataError("ranked list '" + entity + "': scores increase at rank " +
                            std::to_string(i + 1) + " ('" + it.feature + "')");
    }
}

RankedFeatureList build_ranked_list(const EntityId& entity, std::vector<ScoredFeature> scored,
                                    TieBreak tie_break,
                                    const std::map<std::string, double>* secondary) {
    if (entity.empty()) throw DataError("build_ranked_list: empty entity id");
    std::set<std::string> seen;
    for (const auto& sf : scored) {
        if (sf.feature.empty()) throw DataError("build_ranked_list('" + entity + "'): empty feature id");
        if (!std::isfinite(sf.score))
            throw DataError("build_ranked_list('" + entity + "'): non-finite score for feature '" +
                            sf.feature + "'");
        if (sf.score < 0.0)
            throw DataError("build_ranked_list('" + entity + "'): negative score for feature '" +
                            sf.feature + "'");
        if (!seen.insert(sf.feature).second)
            throw DataError("build_ranked_list('" + entity + "'): duplicate feature '" + sf.feature +
                            "'");
    }

    auto second_of = [&](const ScoredFeature& sf) {
        if (!secondary) return 0.0;
        auto it = secondary->find(sf.feature);
        return it == secondary->end() ? 0.0 : it->second;
    };

    switch (tie_break) {
        case TieBreak::Lexicographic:
            std::sort(scored.begin(), scored.end(), [](const ScoredFeature& a, const ScoredFeature& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.feature < b.feature;
            });
            break;
        case TieBreak::BySecondaryScore:
            std::sort(scored.begin(), scored.end(),
                      [&](const ScoredFeature& a, const ScoredFeature& b) {
                          if (a.score != b.score) return a.score > b.score;
                          double sa = second_of(a), sb = second_of(b);
                          if (sa != sb) return sa > sb;
                          return a.feature < b.feature;
                      });
            break;
        case TieBreak::StableInputOrder:
            std::stable_sort(scored.begin(), scored.end(),
                             [](const ScoredFeature& a, const ScoredFeature& b) {
                                 return a.score > b.score;
                             });
            break;
    }
    return RankedFeatureList{entity, std::move(scored)};
}

std::optional<std::size_t> SimilarityMatrix::index_of(const EntityId& e) const {
    for (std::size_t i = 0; i < entities.size(); ++i)
        if (entities[i] == e) return i;
    return std::nullopt;
}

DistanceMatrix to_distance(const SimilarityMatrix& m) {
    const std::size_t n = m.size();
    DistanceMatrix d{m.entities, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = m.at(i, j);
            if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
                std::ostringstream os;
                os << "to_distance: similarity out of [0,1] at (" << m.entities[i] << ", "
                   << m.entities[j] << "): " << s;
                throw DataError(os.str());
            }
            d.at(i, j) = (i == j) ? 0.0 : 1.0 - s;
        }
    }
    return d;
}

void GroundTruth::validate() const {
    std::set<EntityId> all;
    for (const auto& [label, members] : groups) {
        std::set<EntityId> in_group;
        for (const auto& e : members) {
            if (!in_group.insert(e).second)
                throw DataError("ground truth: entity '" + e + "' repeated in group '" + label + "'");
            if (!all.insert(e).second)
                throw DataError("ground truth: entity '" + e + "' appears in more than one group");
        }
    }
    for (const auto& [entity, ranking] : rankings) {
        std::set<EntityId> in_list;
        for (const auto& e : ranking)
            if (!in_list.insert(e).second)
                throw DataError("ground truth: entity '" + e + "' repeated in ranking for '" +
                                entity + "'");
    }
}

} // namespace ranksim

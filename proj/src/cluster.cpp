#include "ranksim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ranksim {

Linkage linkage_from_string(const std::string& name) {
    if (name == "single") return Linkage::Single;
    if (name == "complete") return Linkage::Complete;
    if (name == "average") return Linkage::Average;
    if (name == "ward") return Linkage::Ward;
    throw ConfigError("unknown linkage '" + name + "' (single|complete|average|ward)");
}

std::string to_string(Linkage l) {
    switch (l) {
        case Linkage::Single: return "single";
        case Linkage::Complete: return "complete";
        case Linkage::Average: return "average";
        case Linkage::Ward: return "ward";
    }
    return "?";
}

std::size_t Partition::cluster_count() const {
    std::size_t mx = 0;
    for (auto l : labels) mx = std::max(mx, l + 1);
    return mx;
}

namespace {

void validate_distances(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    if (n < 2) throw DataError("agglomerate: need at least 2 entities");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = d.at(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream os;
                os << "agglomerate: invalid distance at (" << i << "," << j << "): " << v;
                throw DataError(os.str());
            }
            if (d.at(i, j) != d.at(j, i)) {
                std::ostringstream os;
                os << "agglomerate: matrix not symmetric at (" << i << "," << j << "): " << d.at(i, j)
                   << " vs " << d.at(j, i);
                throw DataError(os.str());
            }
        }
        if (d.at(i, i) != 0.0) {
            std::ostringstream os;
            os << "agglomerate: nonzero diagonal at (" << i << "," << i << "): " << d.at(i, i);
            throw DataError(os.str());
        }
    }
}

double lance_williams(Linkage linkage, double d_ik, double d_jk, double d_ij, double ni, double nj,
                      double nk) {
    switch (linkage) {
        case Linkage::Single:
            return std::min(d_ik, d_jk);
        case Linkage::Complete:
            return std::max(d_ik, d_jk);
        case Linkage::Average:
            return (ni * d_ik + nj * d_jk) / (ni + nj);
        case Linkage::Ward:
            return ((ni + nk) * d_ik + (nj + nk) * d_jk - nk * d_ij) / (ni + nj + nk);
    }
    return 0.0;
}

} // namespace

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
    validate_distances(d);
    const std::size_t n = d.size();

    // Active clusters keyed by dendrogram node id; dist holds the current
    // inter-cluster distances among active ids.
    std::map<std::size_t, std::size_t> sizes; // node id -> member count
    std::map<std::pair<std::size_t, std::size_t>, double> dist;
    for (std::size_t i = 0; i < n; ++i) sizes[i] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) dist[{i, j}] = d.at(i, j);

    Dendrogram tree{n, {}};
    tree.merges.reserve(n - 1);
    double last_height = -std::numeric_limits<double>::infinity();

    for (std::size_t step = 0; step < n - 1; ++step) {
        // Minimum-distance active pair, ties to the smallest (left, right).
        std::pair<std::size_t, std::size_t> best{0, 0};
        double best_d = std::numeric_limits<double>::infinity();
        for (auto it = sizes.begin(); it != sizes.end(); ++it) {
            for (auto jt = std::next(it); jt != sizes.end(); ++jt) {
                double v = dist[{it->first, jt->first}];
                if (v < best_d) {
                    best_d = v;
                    best = {it->first, jt->first};
                }
            }
        }

        const auto [i, j] = best;
        const std::size_t new_id = n + step;
        const double ni = static_cast<double>(sizes[i]);
        const double nj = static_cast<double>(sizes[j]);

        for (const auto& [k, sz] : sizes) {
            if (k == i || k == j) continue;
            double d_ik = dist[{std::min(i, k), std::max(i, k)}];
            double d_jk = dist[{std::min(j, k), std::max(j, k)}];
            dist[{k, new_id}] =
                lance_williams(linkage, d_ik, d_jk, best_d, ni, nj, static_cast<double>(sz));
        }
        tree.merges.push_back(Merge{i, j, best_d, sizes[i] + sizes[j]});
        sizes[new_id] = sizes[i] + sizes[j];
        sizes.erase(i);
        sizes.erase(j);

        // All four linkages are monotone under these coefficients; tiny
        // floating-point dips are tolerated, real inversions are a bug.
        if (best_d < last_height - 1e-9 * std::max(1.0, std::abs(last_height))) {
            std::ostringstream os;
            os << "agglomerate(" << to_string(linkage) << "): non-monotone merge height "
               << best_d << " after " << last_height;
            throw DataError(os.str());
        }
        last_height = std::max(last_height, best_d);
    }
    return tree;
}

Partition cut(const Dendrogram& t, std::size_t k) {
    const std::size_t n = t.n_leaves;
    if (t.merges.size() + 1 != n) throw DataError("cut: malformed dendrogram");
    if (k < 1 || k > n)
        throw DataError("cut: k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));

    // Apply the first n−k merges with a union-find over node ids.
    std::vector<std::size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t s = 0; s < n - k; ++s) {
        const auto& m = t.merges[s];
        std::size_t new_id = n + s;
        parent[find(m.left)] = new_id;
        parent[find(m.right)] = new_id;
    }

    // Group leaves by root, then label groups by smallest member index.
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t leaf = 0; leaf < n; ++leaf) groups[find(leaf)].push_back(leaf);
    std::vector<std::pair<std::size_t, const std::vector<std::size_t>*>> ordered;
    for (const auto& [root, members] : groups) ordered.emplace_back(members.front(), &members);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Partition p{std::vector<std::size_t>(n, 0)};
    for (std::size_t label = 0; label < ordered.size(); ++label)
        for (std::size_t leaf : *ordered[label].second) p.labels[leaf] = label;
    return p;
}

} // namespace ranksim

#include "ranksim/rank_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace ranksim {

namespace {

// X[d-1] = |prefix(S, min(d,|S|)) ∩ prefix(T, min(d,|T|))| for d = 1..depth.
// Lists are deduplicated, so an element seen from one side is either matched
// against the other side's seen-set or parked there for a later match.
std::vector<std::size_t> overlap_counts(const std::vector<std::string>& s,
                                        const std::vector<std::string>& t, std::size_t depth) {
    std::vector<std::size_t> counts(depth, 0);
    std::unordered_set<std::string> pending_s, pending_t;
    std::size_t overlap = 0;
    for (std::size_t d = 1; d <= depth; ++d) {
        if (d <= s.size()) {
            const std::string& e = s[d - 1];
            if (pending_t.erase(e) == 1)
                ++overlap;
            else
                pending_s.insert(e);
        }
        if (d <= t.size()) {
            const std::string& e = t[d - 1];
            if (pending_s.erase(e) == 1)
                ++overlap;
            else
                pending_t.insert(e);
        }
        counts[d - 1] = overlap;
    }
    return counts;
}

std::set<std::string> feature_set(const RankedFeatureList& l) {
    std::set<std::string> out;
    for (const auto& it : l.items) out.insert(it.feature);
    return out;
}

void require_conjoint(const RankedFeatureList& s, const RankedFeatureList& t,
                      const char* metric) {
    auto fs = feature_set(s), ft = feature_set(t);
    if (fs == ft) return;
    std::vector<std::string> only_s, only_t;
    std::set_difference(fs.begin(), fs.end(), ft.begin(), ft.end(), std::back_inserter(only_s));
    std::set_difference(ft.begin(), ft.end(), fs.begin(), fs.end(), std::back_inserter(only_t));
    std::ostringstream os;
    os << metric << ": lists are not conjoint; only in '" << s.entity << "': {";
    for (std::size_t i = 0; i < only_s.size(); ++i) os << (i ? ", " : "") << only_s[i];
    os << "}, only in '" << t.entity << "': {";
    for (std::size_t i = 0; i < only_t.size(); ++i) os << (i ? ", " : "") << only_t[i];
    os << "}";
    throw DataError(os.str());
}

} // namespace

double agreement_at_depth(const RankedFeatureList& s, const RankedFeatureList& t, std::size_t d) {
    if (d == 0) throw DataError("agreement_at_depth: depth must be >= 1");
    s.validate();
    t.validate();
    auto counts = overlap_counts(s.feature_ids(), t.feature_ids(), d);
    return static_cast<double>(counts[d - 1]) / static_cast<double>(d);
}

double average_overlap(const RankedFeatureList& s, const RankedFeatureList& t, std::size_t k) {
    if (k == 0) throw DataError("average_overlap: k must be >= 1");
    s.validate();
    t.validate();
    auto counts = overlap_counts(s.feature_ids(), t.feature_ids(), k);
    double sum = 0.0;
    for (std::size_t d = 1; d <= k; ++d)
        sum += static_cast<double>(counts[d - 1]) / static_cast<double>(d);
    return sum / static_cast<double>(k);
}

void RboParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw DataError("rbo: p must be in (0,1)");
    if (truncate_depth == 0) throw DataError("rbo: truncation depth must be >= 1");
    if (!(truncate_tolerance > 0.0)) throw DataError("rbo: truncation tolerance must be > 0");
}

double rbo(const RankedFeatureList& s, const RankedFeatureList& t, const RboParams& params) {
    params.validate();
    s.validate();
    t.validate();

    const bool s_shorter = s.size() <= t.size();
    const std::vector<std::string> a = (s_shorter ? s : t).feature_ids(); // shorter
    const std::vector<std::string> b = (s_shorter ? t : s).feature_ids(); // longer
    const std::size_t short_len = a.size();
    const std::size_t long_len = b.size();
    const double p = params.p;

    if (long_len == 0) return 1.0; // two empty lists are identical
    if (short_len == 0) return 0.0;

    const auto counts = overlap_counts(a, b, long_len);
    const std::size_t x_short = counts[short_len - 1];
    const std::size_t x_long = counts[long_len - 1];

    // the series is bounded by [0,1]; summation can overshoot by an ulp
    auto clamped = [](double v) { return std::clamp(v, 0.0, 1.0); };

    if (params.tail == RboTail::Analytic) {
        if (params.extrapolation == RboExtrapolation::CarryLastAgreement) {
            // Webber et al., extrapolated RBO for uneven lists.
            double sum = 0.0;
            for (std::size_t d = 1; d <= long_len; ++d) {
                double term = static_cast<double>(counts[d - 1]) / static_cast<double>(d);
                if (d > short_len)
                    term += static_cast<double>(x_short) * static_cast<double>(d - short_len) /
                            (static_cast<double>(short_len) * static_cast<double>(d));
                sum += term * std::pow(p, static_cast<double>(d));
            }
            double a_ext = static_cast<double>(x_long - x_short) / static_cast<double>(long_len) +
                           static_cast<double>(x_short) / static_cast<double>(short_len);
            return clamped((1.0 - p) / p * sum +
                           a_ext * std::pow(p, static_cast<double>(long_len)));
        }
        // Fixed-overlap: head at the capped agreement, tail closed with the
        // logarithmic series Σ_{d>D} p^{d−1}·X/d = (X/p)(−ln(1−p) − Σ_{d<=D} p^d/d).
        double head = 0.0, log_series_head = 0.0;
        for (std::size_t d = 1; d <= long_len; ++d) {
            head += std::pow(p, static_cast<double>(d - 1)) * static_cast<double>(counts[d - 1]) /
                    static_cast<double>(d);
            log_series_head += std::pow(p, static_cast<double>(d)) / static_cast<double>(d);
        }
        double tail = static_cast<double>(x_long) / p * (-std::log1p(-p) - log_series_head);
        return clamped((1.0 - p) * (head + tail));
    }

    // Truncated: march the series until the remaining mass bound p^d drops
    // below tolerance (the summand is (1−p)p^{d−1}A_d with A_d <= 1).
    const double a_ext = static_cast<double>(x_long - x_short) / static_cast<double>(long_len) +
                         static_cast<double>(x_short) / static_cast<double>(short_len);
    double sum = 0.0;
    double weight = 1.0 - p; // (1−p)·p^{d−1}
    for (std::size_t d = 1; d <= params.truncate_depth; ++d) {
        double agreement;
        if (d <= long_len) {
            agreement = static_cast<double>(counts[d - 1]) / static_cast<double>(d);
            if (params.extrapolation == RboExtrapolation::CarryLastAgreement && d > short_len)
                agreement += static_cast<double>(x_short) * static_cast<double>(d - short_len) /
                             (static_cast<double>(short_len) * static_cast<double>(d));
        } else if (params.extrapolation == RboExtrapolation::CarryLastAgreement) {
            agreement = a_ext;
        } else {
            agreement = static_cast<double>(x_long) / static_cast<double>(d);
        }
        sum += weight * agreement;
        weight *= p;
        if (d >= long_len && weight / (1.0 - p) * p < params.truncate_tolerance) break;
    }
    return clamped(sum);
}

double jaccard(const RankedFeatureList& s, const RankedFeatureList& t) {
    s.validate();
    t.validate();
    auto fs = feature_set(s), ft = feature_set(t);
    if (fs.empty() && ft.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& e : fs) inter += ft.count(e);
    std::size_t uni = fs.size() + ft.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double cosine(const std::map<std::string, double>& u, const std::map<std::string, double>& v,
              const std::string& name_u, const std::string& name_v) {
    auto check = [](const std::map<std::string, double>& m, const std::string& name) {
        for (const auto& [k, val] : m)
            if (!std::isfinite(val) || val < 0.0)
                throw DataError("cosine: invalid frequency for '" + k + "' in " + name);
    };
    check(u, name_u);
    check(v, name_v);
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (const auto& [k, val] : u) {
        nu += val * val;
        auto it = v.find(k);
        if (it != v.end()) dot += val * it->second;
    }
    for (const auto& [k, val] : v) nv += val * val;
    if (nu == 0.0) throw DataError("cosine: zero vector for " + name_u);
    if (nv == 0.0) throw DataError("cosine: zero vector for " + name_v);
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double kendall_tau(const RankedFeatureList& s, const RankedFeatureList& t) {
    s.validate();
    t.validate();
    require_conjoint(s, t, "kendall_tau");
    const std::size_t n = s.size();
    if (n < 2) throw DataError("kendall_tau: need at least 2 features");
    std::unordered_map<std::string, std::size_t> pos_t;
    for (std::size_t i = 0; i < n; ++i) pos_t[t.items[i].feature] = i;
    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // i precedes j in S; concordant iff it also precedes in T
            if (pos_t[s.items[i].feature] < pos_t[s.items[j].feature])
                ++concordant;
            else
                ++discordant;
        }
    }
    double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(concordant - discordant) / pairs;
}

double spearman_rho(const RankedFeatureList& s, const RankedFeatureList& t) {
    s.validate();
    t.validate();
    require_conjoint(s, t, "spearman_rho");
    const std::size_t n = s.size();
    if (n < 2) throw DataError("spearman_rho: need at least 2 features");
    std::unordered_map<std::string, std::size_t> pos_t;
    for (std::size_t i = 0; i < n; ++i) pos_t[t.items[i].feature] = i;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = static_cast<double>(i) - static_cast<double>(pos_t[s.items[i].feature]);
        sum_sq += d * d;
    }
    double nn = static_cast<double>(n);
    return 1.0 - 6.0 * sum_sq / (nn * (nn * nn - 1.0));
}

void WlmInput::validate() const {
    if (size_a == 0 || size_b == 0) throw DataError("wlm: link set sizes must be positive");
    if (corpus == 0) throw DataError("wlm: corpus size must be positive");
    if (overlap > std::min(size_a, size_b))
        throw DataError("wlm: overlap exceeds the smaller link set");
    if (std::max(size_a, size_b) > corpus)
        throw DataError("wlm: link set larger than the corpus");
}

double wlm_distance(const WlmInput& x) {
    x.validate();
    const std::uint64_t lo = std::min(x.size_a, x.size_b);
    const std::uint64_t hi = std::max(x.size_a, x.size_b);
    if (x.corpus <= lo)
        throw DataError("wlm: corpus must exceed the smaller link set (zero denominator)");
    if (x.overlap == 0) return 1.0;
    double v = (std::log(static_cast<double>(hi)) - std::log(static_cast<double>(x.overlap))) /
               (std::log(static_cast<double>(x.corpus)) - std::log(static_cast<double>(lo)));
    return std::clamp(v, 0.0, 1.0);
}

double wlm_relatedness(const WlmInput& x) { return 1.0 - wlm_distance(x); }

std::string MatrixMetric::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Rbo:
            os << "rbo(p=" << rbo.p << ")";
            break;
        case Kind::AverageOverlap:
            os << "ao(k=" << ao_depth << ")";
            break;
        case Kind::Jaccard:
            os << "jaccard";
            break;
        case Kind::Cosine:
            os << "cosine";
            break;
    }
    return os.str();
}

SimilarityMatrix similarity_matrix(const std::vector<RankedFeatureList>& lists,
                                   const MatrixMetric& metric, std::size_t threads) {
    const std::size_t n = lists.size();
    if (n < 2) throw DataError("similarity_matrix: need at least 2 entities");
    {
        std::set<EntityId> ids;
        for (const auto& l : lists) {
            l.validate();
            if (!ids.insert(l.entity).second)
                throw DataError("similarity_matrix: duplicate entity '" + l.entity + "'");
        }
    }

    std::vector<std::map<std::string, double>> freqs;
    if (metric.kind == MatrixMetric::Kind::Cosine) {
        freqs.reserve(n);
        for (const auto& l : lists) {
            std::map<std::string, double> f;
            for (const auto& it : l.items) f[it.feature] = it.score;
            freqs.push_back(std::move(f));
        }
    }

    SimilarityMatrix m{{}, std::vector<double>(n * n, 0.0)};
    m.entities.reserve(n);
    for (const auto& l : lists) m.entities.push_back(l.entity);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;

    // Flattened lower-triangle pair indices, split across workers. Each cell
    // is independent, so the result is deterministic regardless of the split.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) pairs.emplace_back(i, j);

    auto cell = [&](std::size_t i, std::size_t j) {
        switch (metric.kind) {
            case MatrixMetric::Kind::Rbo:
                return rbo(lists[i], lists[j], metric.rbo);
            case MatrixMetric::Kind::AverageOverlap:
                return average_overlap(lists[i], lists[j], metric.ao_depth);
            case MatrixMetric::Kind::Jaccard:
                return jaccard(lists[i], lists[j]);
            case MatrixMetric::Kind::Cosine:
                return cosine(freqs[i], freqs[j], lists[i].entity, lists[j].entity);
        }
        throw DataError("similarity_matrix: unknown metric");
    };

    std::size_t workers = threads ? threads : std::max<unsigned>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(1, pairs.size()));
    std::vector<std::pair<std::size_t, std::string>> failures(workers, {SIZE_MAX, {}});
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t idx = w; idx < pairs.size(); idx += workers) {
                auto [i, j] = pairs[idx];
                try {
                    double v = cell(i, j);
                    m.at(i, j) = v;
                    m.at(j, i) = v;
                } catch (const std::exception& e) {
                    if (idx < failures[w].first)
                        failures[w] = {idx, "similarity_matrix: pair (" + lists[i].entity + ", " +
                                                lists[j].entity + "): " + e.what()};
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    std::pair<std::size_t, std::string> first{SIZE_MAX, {}};
    for (const auto& f : failures)
        if (f.first < first.first) first = f;
    if (first.first != SIZE_MAX) throw DataError(first.second);
    return m;
}

std::vector<std::pair<EntityId, double>> rank_similars(const EntityId& target,
                                                       const SimilarityMatrix& m, std::size_t k) {
    auto idx = m.index_of(target);
    if (!idx) throw DataError("rank_similars: unknown entity '" + target + "'");
    const std::size_t n = m.size();
    if (k == 0 || k > n - 1)
        throw DataError("rank_similars: k must be in [1, " + std::to_string(n - 1) + "]");
    std::vector<std::pair<EntityId, double>> scored;
    scored.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == *idx) continue;
        scored.emplace_back(m.entities[j], m.at(*idx, j));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    scored.resize(k);
    return scored;
}

} // namespace ranksim

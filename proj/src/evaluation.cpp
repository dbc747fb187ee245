#include "ranksim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace ranksim {

namespace {

void check_gains(const GainVector& g, const char* what) {
    for (double v : g)
        if (!std::isfinite(v) || v < 0.0)
            throw DataError(std::string(what) + ": gains must be finite and >= 0");
}

void check_same_universe(const Partition& p, const Partition& q, const char* what) {
    if (p.labels.size() != q.labels.size())
        throw DataError(std::string(what) + ": partitions cover different entity sets (" +
                        std::to_string(p.labels.size()) + " vs " + std::to_string(q.labels.size()) +
                        ")");
    if (p.labels.size() < 2) throw DataError(std::string(what) + ": need at least 2 entities");
}

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

} // namespace

double dcg(const GainVector& gains, std::size_t k) {
    if (k == 0) throw DataError("dcg: k must be >= 1");
    check_gains(gains, "dcg");
    double sum = 0.0;
    const std::size_t depth = std::min(k, gains.size());
    for (std::size_t i = 1; i <= depth; ++i)
        sum += gains[i - 1] / std::log2(static_cast<double>(i) + 1.0);
    return sum;
}

double ndcg_at_k(const GainVector& predicted, const GainVector& ideal, std::size_t k) {
    if (k == 0) throw DataError("ndcg_at_k: k must be >= 1");
    check_gains(predicted, "ndcg_at_k");
    check_gains(ideal, "ndcg_at_k");
    for (std::size_t i = 1; i < ideal.size(); ++i)
        if (ideal[i - 1] < ideal[i])
            throw DataError("ndcg_at_k: ideal gains must be non-increasing");
    double denom = dcg(ideal, k);
    if (denom == 0.0) throw DataError("ndcg_at_k: ideal DCG is zero (undefined ratio)");
    return dcg(predicted, k) / denom;
}

std::pair<GainVector, GainVector> gains_from_reference(const std::vector<EntityId>& predicted,
                                                       const std::vector<EntityId>& reference) {
    std::unordered_map<EntityId, std::size_t> ref_rank;
    for (std::size_t r = 0; r < reference.size(); ++r) ref_rank.emplace(reference[r], r + 1);
    const double n = static_cast<double>(reference.size());
    GainVector pred;
    pred.reserve(predicted.size());
    for (const auto& e : predicted) {
        auto it = ref_rank.find(e);
        pred.push_back(it == ref_rank.end() ? 0.0 : n - static_cast<double>(it->second) + 1.0);
    }
    GainVector ideal;
    ideal.reserve(reference.size());
    for (std::size_t r = 0; r < reference.size(); ++r) ideal.push_back(n - static_cast<double>(r));
    return {std::move(pred), std::move(ideal)};
}

double rand_index(const Partition& p, const Partition& q) {
    check_same_universe(p, q, "rand_index");
    const std::size_t n = p.labels.size();
    std::int64_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool same_p = p.labels[i] == p.labels[j];
            bool same_q = q.labels[i] == q.labels[j];
            if (same_p == same_q) ++agree;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(choose2(static_cast<std::int64_t>(n)));
}

double adjusted_rand_index(const Partition& p, const Partition& q) {
    check_same_universe(p, q, "adjusted_rand_index");
    const std::size_t n = p.labels.size();
    const std::size_t kp = p.cluster_count();
    const std::size_t kq = q.cluster_count();

    std::vector<std::vector<std::int64_t>> cont(kp, std::vector<std::int64_t>(kq, 0));
    std::vector<std::int64_t> a(kp, 0), b(kq, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++cont[p.labels[i]][q.labels[i]];
        ++a[p.labels[i]];
        ++b[q.labels[i]];
    }

    std::int64_t index = 0, sum_a = 0, sum_b = 0;
    for (const auto& row : cont)
        for (auto c : row) index += choose2(c);
    for (auto x : a) sum_a += choose2(x);
    for (auto x : b) sum_b += choose2(x);
    const std::int64_t pairs = choose2(static_cast<std::int64_t>(n));

    // ARI = (Index − SumA·SumB/C) / ((SumA+SumB)/2 − SumA·SumB/C), computed
    // as an exact integer ratio so the single-cluster case is 0.0 exactly.
    const std::int64_t num = 2 * (pairs * index - sum_a * sum_b);
    const std::int64_t den = pairs * (sum_a + sum_b) - 2 * sum_a * sum_b;
    if (den == 0) return 1.0; // both partitions trivial in the same way
    return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::vector<std::size_t>> confusion_matrix(const Partition& truth,
                                                       const Partition& predicted) {
    check_same_universe(truth, predicted, "confusion_matrix");
    std::vector<std::vector<std::size_t>> m(truth.cluster_count(),
                                            std::vector<std::size_t>(predicted.cluster_count(), 0));
    for (std::size_t i = 0; i < truth.labels.size(); ++i)
        ++m[truth.labels[i]][predicted.labels[i]];
    return m;
}

} // namespace ranksim

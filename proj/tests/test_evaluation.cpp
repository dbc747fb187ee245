#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ranksim/evaluation.hpp"

using namespace ranksim;

TEST_CASE("dcg examples") {
    CHECK(dcg({1, 0, 0}, 3) == 1.0);
    CHECK(dcg({0, 0, 0, 0}, 4) == 0.0);
    CHECK(dcg({3, 2, 1}, 3) ==
          doctest::Approx(3.0 + 2.0 / std::log2(3.0) + 0.5).epsilon(1e-12));
    CHECK(dcg({3, 2, 1}, 3) == doctest::Approx(4.7619).epsilon(1e-4));
    CHECK(dcg({3, 2, 1}, 2) == doctest::Approx(3.0 + 2.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(dcg({3, 2, 1}, 99) == dcg({3, 2, 1}, 3)); // k past the list end
    CHECK_THROWS_AS(dcg({1}, 0), DataError);
    CHECK_THROWS_AS(dcg({-1}, 1), DataError);
}

TEST_CASE("ndcg of the ideal ordering is exactly 1") {
    GainVector ideal{3, 2, 1};
    for (std::size_t k = 1; k <= 4; ++k) CHECK(ndcg_at_k(ideal, ideal, k) == 1.0);
}

TEST_CASE("ndcg of the worst ordering of {3,2,1}") {
    // direct arithmetic: dcg((1,2,3)) = 1 + 2/log2(3) + 3/2 = 3.76186...
    double expected = (1.0 + 2.0 / std::log2(3.0) + 1.5) / (3.0 + 2.0 / std::log2(3.0) + 0.5);
    CHECK(ndcg_at_k({1, 2, 3}, {3, 2, 1}, 3) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ndcg_at_k({1, 2, 3}, {3, 2, 1}, 3) == doctest::Approx(0.79).epsilon(1e-3));
}

TEST_CASE("every permutation scores at most 1") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t z = 1 + rng() % 8;
        GainVector gains(z);
        for (auto& g : gains) g = uni(rng);
        GainVector ideal = gains;
        std::sort(ideal.rbegin(), ideal.rend());
        if (ideal[0] == 0.0) continue;
        GainVector shuffled = gains;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::size_t k = 1 + rng() % z;
        CHECK(ndcg_at_k(shuffled, ideal, k) <= 1.0 + 1e-12);
    }
}

TEST_CASE("ndcg is invariant under the logarithm base") {
    // recompute the ratio with natural-log discounts and compare
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t z = 2 + rng() % 6;
        GainVector gains(z);
        for (auto& g : gains) g = uni(rng);
        GainVector ideal = gains;
        std::sort(ideal.rbegin(), ideal.rend());
        if (ideal[0] == 0.0) continue;
        std::size_t k = 1 + rng() % z;
        auto dcg_ln = [&](const GainVector& g) {
            double sum = 0.0;
            for (std::size_t i = 1; i <= std::min(k, g.size()); ++i)
                sum += g[i - 1] / std::log(static_cast<double>(i) + 1.0);
            return sum;
        };
        double via_ln = dcg_ln(gains) / dcg_ln(ideal);
        CHECK(std::abs(ndcg_at_k(gains, ideal, k) - via_ln) <= 1e-12);
    }
}

TEST_CASE("ndcg rejects degenerate input") {
    CHECK_THROWS_AS(ndcg_at_k({1, 0}, {0, 0}, 2), DataError);          // all-zero ideal
    CHECK_THROWS_AS(ndcg_at_k({1, 0}, {1, 2}, 2), DataError);          // ideal not sorted
}

TEST_CASE("gains against a reference ranking follow the declared scheme") {
    // reference of length 4: gains 4,3,2,1 by reference rank; absent -> 0
    auto [pred, ideal] = gains_from_reference({"b", "x", "a"}, {"a", "b", "c", "d"});
    CHECK(pred == GainVector{3, 0, 4});
    CHECK(ideal == GainVector{4, 3, 2, 1});
}

TEST_CASE("rand index examples") {
    Partition p{{0, 0, 1}};
    Partition q{{0, 1, 1}};
    CHECK(rand_index(p, p) == 1.0);
    CHECK(rand_index(p, q) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    Partition two_same{{0, 0}};
    Partition two_diff{{0, 1}};
    CHECK(rand_index(two_same, two_diff) == 0.0);
    Partition longer{{0, 0, 1, 1}};
    CHECK_THROWS_AS(rand_index(p, longer), DataError);
}

TEST_CASE("adjusted rand index identities") {
    Partition p{{0, 0, 1, 1, 2}};
    CHECK(adjusted_rand_index(p, p) == 1.0);
    Partition single{{0, 0, 0, 0, 0}};
    CHECK(adjusted_rand_index(p, single) == 0.0); // exact, by integer arithmetic
    Partition singletons{{0, 1, 2, 3, 4}};
    CHECK(adjusted_rand_index(singletons, singletons) == 1.0); // degenerate convention
    CHECK(adjusted_rand_index(single, single) == 1.0);
}

TEST_CASE("adjusted rand index is symmetric and relabel-invariant") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 9;
        Partition p, q;
        for (std::size_t i = 0; i < n; ++i) {
            p.labels.push_back(rng() % 3);
            q.labels.push_back(rng() % 3);
        }
        // compact labels to a contiguous range
        auto compact = [](Partition& part) {
            std::map<std::size_t, std::size_t> remap;
            for (auto& l : part.labels) {
                auto [it, _] = remap.emplace(l, remap.size());
                l = it->second;
            }
        };
        compact(p);
        compact(q);
        double pq = adjusted_rand_index(p, q);
        CHECK(adjusted_rand_index(q, p) == pq);
        CHECK(std::abs(pq - oracles::pair_counting_ari(p.labels, q.labels)) <= 1e-12);
        // relabeling: swap label ids 0 and 1 in q when both exist
        Partition relabeled = q;
        for (auto& l : relabeled.labels) l = (l == 0 ? 1 : (l == 1 ? 0 : l));
        compact(relabeled);
        CHECK(adjusted_rand_index(p, relabeled) == doctest::Approx(pq).epsilon(1e-12));
    }
}

TEST_CASE("confusion matrix marginals match group sizes") {
    Partition truth{{0, 0, 0, 1, 1, 2}};
    Partition same{{0, 0, 0, 1, 1, 2}};
    auto diag = confusion_matrix(truth, same);
    CHECK(diag == std::vector<std::vector<std::size_t>>{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});

    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 4 + rng() % 10;
        Partition t, q;
        for (std::size_t i = 0; i < n; ++i) {
            t.labels.push_back(rng() % 3);
            q.labels.push_back(rng() % 4);
        }
        for (std::size_t l = 0; l < 3; ++l)
            if (std::find(t.labels.begin(), t.labels.end(), l) == t.labels.end())
                t.labels[l % n] = l;
        for (std::size_t l = 0; l < 4; ++l)
            if (std::find(q.labels.begin(), q.labels.end(), l) == q.labels.end())
                q.labels[l % n] = l;
        auto m = confusion_matrix(t, q);
        for (std::size_t g = 0; g < m.size(); ++g) {
            std::size_t row_sum = 0;
            for (auto c : m[g]) row_sum += c;
            CHECK(row_sum == std::count(t.labels.begin(), t.labels.end(), g));
        }
        for (std::size_t c = 0; c < m[0].size(); ++c) {
            std::size_t col_sum = 0;
            for (std::size_t g = 0; g < m.size(); ++g) col_sum += m[g][c];
            CHECK(col_sum == std::count(q.labels.begin(), q.labels.end(), c));
        }
    }
}

TEST_CASE("a 19-of-20 regression pattern shows up in the right row") {
    // 20-member group of which 19 land in one predicted cluster, plus a
    // 10-member group predicted perfectly
    Partition truth, predicted;
    for (int i = 0; i < 20; ++i) {
        truth.labels.push_back(0);
        predicted.labels.push_back(i == 0 ? 1 : 0);
    }
    for (int i = 0; i < 10; ++i) {
        truth.labels.push_back(1);
        predicted.labels.push_back(1);
    }
    auto m = confusion_matrix(truth, predicted);
    CHECK(m[0][0] == 19);
    CHECK(m[0][1] == 1);
    CHECK(m[1][1] == 10);
}

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ranksim/cluster.hpp"

using namespace ranksim;

namespace {

DistanceMatrix from_points(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    DistanceMatrix d;
    for (std::size_t i = 0; i < n; ++i) d.entities.push_back("p" + std::to_string(i));
    d.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.at(i, j) = std::abs(xs[i] - xs[j]);
    return d;
}

DistanceMatrix random_distances(std::mt19937& rng, std::size_t n) {
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
    return d;
}

constexpr Linkage kAll[] = {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward};

} // namespace

TEST_CASE("two points merge once at their distance under any linkage") {
    auto d = from_points({0.0, 0.7});
    for (auto linkage : kAll) {
        auto tree = agglomerate(d, linkage);
        REQUIRE(tree.merges.size() == 1);
        CHECK(tree.merges[0].left == 0);
        CHECK(tree.merges[0].right == 1);
        CHECK(tree.merges[0].height == doctest::Approx(0.7));
        CHECK(tree.merges[0].size == 2);
    }
}

TEST_CASE("single vs complete linkage on the 1-D example {0, 1, 10}") {
    auto d = from_points({0.0, 1.0, 10.0});

    auto single = agglomerate(d, Linkage::Single);
    CHECK(single.merges[0].left == 0);
    CHECK(single.merges[0].right == 1);
    CHECK(single.merges[0].height == doctest::Approx(1.0));
    CHECK(single.merges[1].height == doctest::Approx(9.0));

    auto complete = agglomerate(d, Linkage::Complete);
    CHECK(complete.merges[0].height == doctest::Approx(1.0));
    CHECK(complete.merges[1].height == doctest::Approx(10.0));

    auto cut2 = cut(single, 2);
    CHECK(cut2.labels == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("cut produces k non-empty clusters at the extremes") {
    auto d = from_points({0.0, 1.0, 10.0, 11.0, 30.0});
    auto tree = agglomerate(d, Linkage::Average);
    auto all_one = cut(tree, 1);
    CHECK(all_one.cluster_count() == 1);
    auto singletons = cut(tree, 5);
    CHECK(singletons.cluster_count() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(singletons.labels[i] == i);
    CHECK_THROWS_AS(cut(tree, 0), DataError);
    CHECK_THROWS_AS(cut(tree, 6), DataError);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto rd = random_distances(rng, 8);
        auto t = agglomerate(rd, kAll[trial % 4]);
        for (std::size_t k = 1; k <= 8; ++k) {
            auto p = cut(t, k);
            std::set<std::size_t> labels(p.labels.begin(), p.labels.end());
            CHECK(labels.size() == k);
            for (std::size_t l = 0; l < k; ++l) CHECK(labels.count(l) == 1);
        }
    }
}

TEST_CASE("lance-williams agrees with the naive re-scan oracle") {
    std::mt19937 rng(97);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 4 + rng() % 9; // up to 12
        auto d = random_distances(rng, n);
        for (auto linkage : kAll) {
            auto fast = agglomerate(d, linkage);
            auto naive = oracles::naive_agglomerate(d, linkage);
            REQUIRE(fast.merges.size() == naive.merges.size());
            for (std::size_t s = 0; s < fast.merges.size(); ++s) {
                CHECK(fast.merges[s].left == naive.merges[s].left);
                CHECK(fast.merges[s].right == naive.merges[s].right);
                CHECK(fast.merges[s].height ==
                      doctest::Approx(naive.merges[s].height).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("merge heights never decrease") {
    std::mt19937 rng(131);
    for (int trial = 0; trial < 25; ++trial) {
        auto d = random_distances(rng, 10);
        for (auto linkage : kAll) {
            auto tree = agglomerate(d, linkage);
            for (std::size_t s = 1; s < tree.merges.size(); ++s)
                CHECK(tree.merges[s].height >= tree.merges[s - 1].height - 1e-12);
        }
    }
}

TEST_CASE("partitions are stable under entity permutation when distances are distinct") {
    std::mt19937 rng(151);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 9;
        auto d = random_distances(rng, n); // continuous draws: distinct a.s.
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        DistanceMatrix pd;
        pd.entities = d.entities;
        pd.values.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) pd.at(i, j) = d.at(perm[i], perm[j]);
        for (auto linkage : kAll) {
            auto p = cut(agglomerate(d, linkage), 3);
            auto q = cut(agglomerate(pd, linkage), 3);
            // un-permute q and compare as partitions (same co-membership)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    bool same_p = p.labels[perm[i]] == p.labels[perm[j]];
                    bool same_q = q.labels[i] == q.labels[j];
                    CHECK(same_p == same_q);
                }
        }
    }
}

TEST_CASE("agglomerate validates its input") {
    DistanceMatrix asym{{"a", "b"}, {0.0, 1.0, 2.0, 0.0}};
    CHECK_THROWS_WITH_AS(agglomerate(asym, Linkage::Single), doctest::Contains("not symmetric"),
                         DataError);
    DistanceMatrix diag{{"a", "b"}, {0.5, 1.0, 1.0, 0.0}};
    CHECK_THROWS_WITH_AS(agglomerate(diag, Linkage::Single), doctest::Contains("diagonal"),
                         DataError);
    DistanceMatrix nan{{"a", "b"}, {0.0, std::nan(""), std::nan(""), 0.0}};
    CHECK_THROWS_AS(agglomerate(nan, Linkage::Single), DataError);
    DistanceMatrix tiny{{"a"}, {0.0}};
    CHECK_THROWS_AS(agglomerate(tiny, Linkage::Single), DataError);
}

TEST_CASE("ties break toward the smallest node-id pair") {
    // equilateral: all pairwise distances equal
    DistanceMatrix d{{"a", "b", "c"}, {0, 1, 1, 1, 0, 1, 1, 1, 0}};
    for (auto linkage : kAll) {
        auto tree = agglomerate(d, linkage);
        CHECK(tree.merges[0].left == 0);
        CHECK(tree.merges[0].right == 1);
    }
}

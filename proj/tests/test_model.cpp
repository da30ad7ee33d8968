#include <algorithm>

#include "doctest.h"
#include "fairorder/model.hpp"
#include "fairorder/rng.hpp"

using namespace fairorder;

namespace {

TxRegistry make_registry(std::initializer_list<std::pair<const char*, double>> txs) {
    TxRegistry registry;
    for (const auto& [id, time] : txs)
        registry.add({id, Origin::Honest, time, {id}, {}});
    return registry;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("ground truth sorts by submission time") {
    auto registry = make_registry({{"x", 0.1}, {"y", 0.5}, {"z", 0.3}});
    CHECK(ground_truth_order(registry) == std::vector<TxId>{"x", "z", "y"});
}

TEST_CASE("ground truth breaks time ties by id") {
    auto registry = make_registry({{"b", 1.0}, {"a", 1.0}});
    CHECK(ground_truth_order(registry) == std::vector<TxId>{"a", "b"});
}

TEST_CASE("ground truth of an empty subset is empty") {
    auto registry = make_registry({{"a", 1.0}, {"b", 2.0}});
    CHECK(ground_truth_order(registry, std::vector<TxId>{}).empty());
}

TEST_CASE("ground truth rejects unknown subset ids") {
    auto registry = make_registry({{"a", 1.0}});
    std::vector<TxId> subset{"ghost"};
    CHECK_THROWS_AS(ground_truth_order(registry, subset), std::invalid_argument);
}

TEST_CASE("ground truth is a permutation and deterministic") {
    RngStream rng(7, "model-perm");
    TxRegistry registry;
    for (int i = 0; i < 40; ++i)
        registry.add({"tx" + std::to_string(i), Origin::Honest, rng.next_unit() * 10,
                      {}, {}});
    auto first = ground_truth_order(registry);
    auto second = ground_truth_order(registry);
    CHECK(first == second);
    auto sorted = first;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == registry.ids());
}

TEST_CASE("registry rejects duplicates and bad times") {
    TxRegistry registry;
    registry.add({"a", Origin::Honest, 0.0, {}, {}});
    CHECK_THROWS_AS(registry.add({"a", Origin::Honest, 1.0, {}, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(registry.add({"b", Origin::Honest, -0.5, {}, {}}),
                    std::invalid_argument);
}

TEST_CASE("transaction line record") {
    Transaction tx{"t7", Origin::Adversarial, 2.5, {"k1", "k2"}, "A"};
    CHECK(to_record(tx) == "t7,adversarial,2.5,k1;k2,A");
    Transaction plain{"t1", Origin::Honest, 0.0, {}, {}};
    CHECK(to_record(plain) == "t1,honest,0,,");
}

TEST_CASE("near-equal partitions") {
    auto p3 = near_equal_partition(4, 3);
    CHECK(p3.parts.size() == 3);
    CHECK(p3.parts[0].size() == 2);
    CHECK(p3.parts[1].size() == 1);
    CHECK(p3.parts[2].size() == 1);
    p3.validate(4);

    auto p4 = near_equal_partition(101, 4);
    CHECK(p4.parts[0].size() == 26);
    CHECK(p4.parts[1].size() == 25);
    p4.validate(101);

    CHECK_THROWS_AS(near_equal_partition(2, 3), std::invalid_argument);
}

TEST_CASE("partition validation catches overlap and gaps") {
    Partition overlapping{{{0, 1}, {1, 2}}};
    CHECK_THROWS_AS(overlapping.validate(3), std::invalid_argument);
    Partition gap{{{0}, {2}}};
    CHECK_THROWS_AS(gap.validate(3), std::invalid_argument);
}

}  // TEST_SUITE

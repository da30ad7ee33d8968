#include <algorithm>

#include "doctest.h"
#include "fairorder/attack.hpp"

using namespace fairorder;

TEST_SUITE("attack") {

TEST_CASE("two-transaction plan shapes") {
    auto plan = two_tx_plan(3, 10.0);
    CHECK(plan.partition.parts.size() == 3);
    for (const auto& part : plan.partition.parts) CHECK(part.size() == 1);
    CHECK(plan.init[0] == std::vector<TxId>{"A", "B"});
    CHECK(plan.init[1] == std::vector<TxId>{"B"});
    CHECK(plan.init[2].empty());
    CHECK(plan.finalize[0].empty());
    CHECK(plan.finalize[1] == std::vector<TxId>{"A"});
    CHECK(plan.finalize[2] == std::vector<TxId>{"A", "B"});

    auto wide = two_tx_plan(21, 10.0);
    for (const auto& part : wide.partition.parts) CHECK(part.size() == 7);

    auto uneven = two_tx_plan(4, 10.0);
    CHECK(uneven.partition.parts[0].size() == 2);
    CHECK(uneven.partition.parts[1].size() == 1);
    CHECK(uneven.partition.parts[2].size() == 1);

    CHECK_THROWS_AS(two_tx_plan(2, 10.0), std::invalid_argument);
}

TEST_CASE("four-transaction plan shapes") {
    auto plan = four_tx_plan(4, 10.0);
    CHECK(plan.partition.parts.size() == 4);
    CHECK(plan.init[0] == std::vector<TxId>{"A", "B"});
    CHECK(plan.init[1] == std::vector<TxId>{"B", "C"});
    CHECK(plan.init[2] == std::vector<TxId>{"C", "D"});
    CHECK(plan.init[3] == std::vector<TxId>{"D", "A"});
    CHECK(plan.finalize[0] == std::vector<TxId>{"C", "D"});
    CHECK(plan.finalize[1] == std::vector<TxId>{"D", "A"});
    CHECK(plan.finalize[2] == std::vector<TxId>{"A", "B"});
    CHECK(plan.finalize[3] == std::vector<TxId>{"B", "C"});

    auto sizes21 = four_tx_plan(21, 10.0);
    CHECK(sizes21.partition.parts[0].size() == 6);
    CHECK(sizes21.partition.parts[1].size() == 5);

    auto sizes101 = four_tx_plan(101, 10.0);
    CHECK(sizes101.partition.parts[0].size() == 26);
    CHECK(sizes101.partition.parts[3].size() == 25);

    CHECK_THROWS_AS(four_tx_plan(3, 10.0), std::invalid_argument);
}

TEST_CASE("cloning interleaves copies in place") {
    auto plan = clone_plan(two_tx_plan(3, 10.0), 2);
    CHECK(plan.init[0] == std::vector<TxId>{"A1", "A2", "B1", "B2"});
    CHECK(plan.init[1] == std::vector<TxId>{"B1", "B2"});
    CHECK(plan.finalize[1] == std::vector<TxId>{"A1", "A2"});
    CHECK(plan.finalize[2] == std::vector<TxId>{"A1", "A2", "B1", "B2"});
    CHECK(plan.clones == 2);
    CHECK(plan.clone_group.at("A1") == "A");
    CHECK(plan.clone_group.at("B2") == "B");
}

TEST_CASE("cloning with k = 1 is the identity") {
    auto plan = two_tx_plan(9, 5.0);
    auto same = clone_plan(plan, 1);
    CHECK(same.init == plan.init);
    CHECK(same.finalize == plan.finalize);
    CHECK(same.clones == 1);
}

TEST_CASE("cloning doubles every four-transaction sequence") {
    auto plan = clone_plan(four_tx_plan(8, 10.0), 2);
    for (const auto& sequence : plan.init) CHECK(sequence.size() == 4);
    for (const auto& sequence : plan.finalize) CHECK(sequence.size() == 4);
    CHECK(plan.tx_ids().size() == 8);
}

TEST_CASE("schedule expands the plan deterministically") {
    auto plan = two_tx_plan(3, 10.0);
    auto transmissions = schedule(plan, 0.0, 0.01);
    std::size_t expected = 0;
    for (const auto& sequence : plan.init) expected += sequence.size();
    for (const auto& sequence : plan.finalize) expected += sequence.size();
    CHECK(transmissions.size() == expected);
    CHECK(transmissions.size() == 6);

    auto at = [&](int part, int phase, const TxId& tx) -> double {
        for (const auto& tr : transmissions)
            if (tr.part == part && tr.phase == phase && tr.tx == tx) return tr.time;
        FAIL("missing transmission");
        return -1.0;
    };
    CHECK(at(0, 1, "A") == doctest::Approx(0.0));
    CHECK(at(0, 1, "B") == doctest::Approx(0.01));
    CHECK(at(1, 1, "B") == doctest::Approx(0.0));
    CHECK(at(1, 3, "A") == doctest::Approx(10.0));
    CHECK(at(2, 3, "A") == doctest::Approx(10.0));
    CHECK(at(2, 3, "B") == doctest::Approx(10.01));

    // No phase-1 transmissions for the part with an empty init sequence.
    for (const auto& tr : transmissions) CHECK_FALSE((tr.part == 2 && tr.phase == 1));

    CHECK(schedule(plan, 0.0, 0.01).size() == transmissions.size());
    CHECK_THROWS_AS(schedule(plan, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("cloned schedule doubles the transmissions") {
    auto plan = clone_plan(two_tx_plan(3, 10.0), 2);
    auto transmissions = schedule(plan, 0.0, 0.01);
    CHECK(transmissions.size() == 12);
    // The init burst of part 0 alternates the clone runs A1,A2,B1,B2.
    std::vector<TxId> part0;
    for (const auto& tr : transmissions)
        if (tr.part == 0 && tr.phase == 1) part0.push_back(tr.tx);
    CHECK(part0 == std::vector<TxId>{"A1", "A2", "B1", "B2"});
}

TEST_CASE("per-part sequences never repeat a transaction") {
    for (int k : {1, 2, 3}) {
        for (auto plan : {clone_plan(two_tx_plan(13, 10.0), k),
                          clone_plan(four_tx_plan(13, 10.0), k)}) {
            for (std::size_t part = 0; part < plan.partition.parts.size(); ++part) {
                auto combined = plan.init[part];
                combined.insert(combined.end(), plan.finalize[part].begin(),
                                plan.finalize[part].end());
                auto sorted = combined;
                std::sort(sorted.begin(), sorted.end());
                CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            }
        }
    }
}

TEST_CASE("reversal adversary flips only its own reports") {
    std::vector<LocalOrdering> orderings = {
        {0, {"x", "y", "z"}}, {1, {"x", "y", "z"}}, {2, {"y", "x", "z"}}};
    auto reversed = reverse_orderings(orderings, {0});
    CHECK(reversed[0].sequence == std::vector<TxId>{"z", "y", "x"});
    CHECK(reversed[1].sequence == std::vector<TxId>{"x", "y", "z"});
    CHECK(reversed[2].sequence == std::vector<TxId>{"y", "x", "z"});

    auto untouched = reverse_orderings(orderings, {});
    CHECK(untouched[0].sequence == orderings[0].sequence);

    std::vector<LocalOrdering> many;
    for (int node = 0; node < 21; ++node) many.push_back({node, {"a", "b"}});
    std::set<NodeId> adversarial{0, 1, 2, 3};  // a quarter of 21 minus one
    auto partial = reverse_orderings(many, adversarial);
    int flipped = 0;
    for (const auto& ordering : partial)
        if (ordering.sequence == std::vector<TxId>{"b", "a"}) ++flipped;
    CHECK(flipped == 4);
}

}  // TEST_SUITE

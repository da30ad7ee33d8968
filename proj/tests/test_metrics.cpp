#include <algorithm>

#include "doctest.h"
#include "fairorder/metrics.hpp"
#include "fairorder/rng.hpp"
#include "oracles.hpp"

using namespace fairorder;

namespace {

SimConfig example_config(std::uint64_t seed) {
    SimConfig config;
    config.n = 3;
    config.r = 0.001;
    config.honest_count = 3;
    config.attack = two_tx_plan(3, 10.0);
    config.attack_start = -1.0;
    config.seed = seed;
    return config;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("pair accuracy on exact, reversed and rotated orders") {
    std::vector<TxId> truth{"a", "b", "c", "d"};
    CHECK(pair_accuracy(truth, truth) == doctest::Approx(1.0));
    std::vector<TxId> reversed{"d", "c", "b", "a"};
    CHECK(pair_accuracy(reversed, truth) == doctest::Approx(0.0));

    std::vector<TxId> rotated{"t2", "t3", "t1"};
    std::vector<TxId> small_truth{"t1", "t2", "t3"};
    CHECK(pair_accuracy(rotated, small_truth) == doctest::Approx(1.0 / 3.0));

    std::vector<TxId> one{"a"};
    CHECK(pair_accuracy(truth, one) == doctest::Approx(1.0));

    std::vector<TxId> missing{"a", "ghost"};
    CHECK_THROWS_AS(pair_accuracy(truth, missing), std::invalid_argument);
}

TEST_CASE("accuracy of a random permutation averages one half") {
    RngStream rng(101, "metrics-random");
    std::vector<TxId> truth;
    for (int i = 0; i < 20; ++i) truth.push_back("t" + std::to_string(i));
    double total = 0.0;
    const int trials = 10000;
    for (int trial = 0; trial < trials; ++trial) {
        auto shuffled = truth;
        for (int i = 19; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.next_below(i + 1)]);
        total += pair_accuracy(shuffled, truth);
    }
    CHECK(total / trials == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("the attack example traps all three honest transactions") {
    auto result = run(example_config(11));
    CHECK(trapped_honest(result) == 3);
    auto [any, all] = success(result);
    CHECK(any);
    CHECK(all);
}

TEST_CASE("no honest transactions in the pause window") {
    // Attack far in the past relative to the honest burst: nothing trapped,
    // the all-flag holds vacuously.
    SimConfig config;
    config.n = 3;
    config.r = 0.001;
    config.honest_count = 3;
    config.attack = two_tx_plan(3, 10.0);
    config.attack_start = -20.0;
    config.seed = 21;
    auto result = run(config);
    CHECK(result.honest_in_pause().empty());
    CHECK(trapped_honest(result) == 0);
    auto [any, all] = success(result);
    CHECK_FALSE(any);
    CHECK(all);
}

TEST_CASE("a swapped two-transaction burst creates no cycle") {
    // The init pair arrives as B, A everywhere: the tournament stays acyclic.
    std::vector<LocalOrdering> orderings = {
        {0, {"B", "A", "t1", "t2", "t3"}},
        {1, {"B", "t1", "t2", "t3", "A"}},
        {2, {"t1", "t2", "t3", "B", "A"}}};
    auto with_attack = build_tournament(orderings);
    CHECK(condorcet_cycles(with_attack).empty());
    std::vector<LocalOrdering> projection = {
        {0, {"t1", "t2", "t3"}}, {1, {"t1", "t2", "t3"}}, {2, {"t1", "t2", "t3"}}};
    auto trapped = trapped_honest_ids(with_attack, build_tournament(projection),
                                      std::vector<TxId>{"t1", "t2", "t3"});
    CHECK(trapped.empty());
}

TEST_CASE("heavy natural cycling leaves little for the attack to trap") {
    double total = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        SimConfig config;
        config.n = 9;
        config.r = 1000.0;
        config.honest_count = 20;
        config.attack = two_tx_plan(9, 10.0);
        config.seed = 500 + trial;
        total += trapped_honest(run(config));
    }
    CHECK(total / 20.0 <= 2.0);
}

TEST_CASE("cycle statistics") {
    std::vector<LocalOrdering> unanimous = {
        {0, {"x", "y", "z"}}, {1, {"x", "y", "z"}}, {2, {"x", "y", "z"}}};
    auto none = cycle_stats(build_tournament(unanimous));
    CHECK(none.count == 0);
    CHECK(none.sizes.empty());
    CHECK(none.txs_in_cycles == 0);

    std::vector<LocalOrdering> example = {
        {0, {"A", "B", "tx1", "tx2", "tx3"}},
        {1, {"B", "tx1", "tx2", "tx3", "A"}},
        {2, {"tx1", "tx2", "tx3", "A", "B"}}};
    auto one = cycle_stats(build_tournament(example));
    CHECK(one.count == 1);
    CHECK(one.sizes == std::vector<int>{5});
    CHECK(one.txs_in_cycles == 5);
}

TEST_CASE("two disjoint rotations give two three-cycles") {
    std::vector<LocalOrdering> orderings = {
        {0, {"a1", "a2", "a3", "b1", "b2", "b3"}},
        {1, {"a2", "a3", "a1", "b2", "b3", "b1"}},
        {2, {"a3", "a1", "a2", "b3", "b1", "b2"}}};
    auto t = build_tournament(orderings);
    auto stats = cycle_stats(t);
    CHECK(stats.count == 2);
    CHECK(stats.sizes == std::vector<int>{3, 3});
    CHECK(stats.txs_in_cycles == 6);
    CHECK(scc_decompose(t).components == oracle::scc_by_reachability(t));
}

TEST_CASE("cycle sizes are always at least three") {
    RngStream rng(71, "metrics-sizes");
    for (int trial = 0; trial < 100; ++trial) {
        int m = 3 + static_cast<int>(rng.next_below(8));
        auto t = oracle::random_tournament(m, rng);
        for (const auto& cycle : condorcet_cycles(t)) CHECK(cycle.size() >= 3);
    }
}

TEST_CASE("metrics rows serialize with the fixed column order") {
    CHECK(trial_metrics_header() ==
          "trial,seed,n,r,r_internal,p,tau,scheme,cycles,txs_in_cycles,trapped,"
          "success_any,success_all,accuracy");
    TrialMetrics m;
    m.trial = 3;
    m.seed = 42;
    m.n = 21;
    m.r = 0.1;
    m.r_internal = 0.0;
    m.p = 0.25;
    m.tau = 10.0;
    m.scheme = "ranked-pairs";
    m.cycles = 1;
    m.txs_in_cycles = 12;
    m.trapped = 9;
    m.success_any = true;
    m.success_all = false;
    m.has_accuracy = true;
    m.accuracy = 0.975;
    CHECK(to_csv_row(m) == "3,42,21,0.1,0,0.25,10,ranked-pairs,1,12,9,1,0,0.975");
    m.has_accuracy = false;
    CHECK(to_csv_row(m) == "3,42,21,0.1,0,0.25,10,ranked-pairs,1,12,9,1,0,");
}

}  // TEST_SUITE

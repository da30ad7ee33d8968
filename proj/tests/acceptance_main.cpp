// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fairorder/batchorder.hpp"
#include "fairorder/experiment.hpp"
#include "fairorder/metrics.hpp"
#include "fairorder/netsim.hpp"
#include "fairorder/rng.hpp"
#include "oracles.hpp"

using namespace fairorder;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point criterion_start;

void begin() { criterion_start = std::chrono::steady_clock::now(); }

void report(int index, bool pass, const std::string& text) {
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   criterion_start)
                         .count();
    std::printf("[%s] criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", index,
                text.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", value);
    return buf;
}

std::vector<TxId> restrict_to(const std::vector<TxId>& order,
                              const std::vector<TxId>& keep) {
    std::set<TxId> wanted(keep.begin(), keep.end());
    std::vector<TxId> out;
    for (const TxId& id : order)
        if (wanted.count(id)) out.push_back(id);
    return out;
}

// --- criterion 1: ranked pairs preserves a unanimously reported honest order
void criterion_ranked_pairs_preservation() {
    begin();
    RngStream rng(0xC1, "acceptance-prop1");
    int strong = 0, preserved = 0, attempts = 0;
    while (strong < 1000 && attempts < 20000) {
        ++attempts;
        auto instance = oracle::unanimous_instance(rng);
        auto t = build_tournament(instance.orderings);
        if (scc_decompose(t).components.size() != 1) continue;
        ++strong;
        auto order = order_ranked_pairs(t);
        if (restrict_to(order, instance.honest_order) == instance.honest_order)
            ++preserved;
    }
    report(1, strong == 1000 && preserved == strong,
           "ranked pairs preserved the unanimous honest order in " +
               std::to_string(preserved) + "/" + std::to_string(strong) +
               " strongly connected instances");
}

// --- criterion 2: natural cycles are rare below r = 1 and pervasive above
void criterion_honest_phase_change() {
    begin();
    auto sweep = [&](double r, double& cycle_prob, double& mean_txs) {
        int with_cycle = 0, txs = 0;
        for (int trial = 0; trial < 100; ++trial) {
            SimConfig config;
            config.n = 21;
            config.r = r;
            config.honest_count = 100;
            config.seed = trial_seed(0xC2, "honest-phase", r < 1 ? 0 : 1, trial);
            auto stats = cycle_stats(build_tournament(run(config).orderings));
            if (stats.count > 0) ++with_cycle;
            txs += stats.txs_in_cycles;
        }
        cycle_prob = with_cycle / 100.0;
        mean_txs = txs / 100.0;
    };
    double low_prob = 0, low_txs = 0, high_prob = 0, high_txs = 0;
    sweep(0.01, low_prob, low_txs);
    sweep(1000.0, high_prob, high_txs);
    report(2, low_prob <= 0.05 && high_prob >= 0.95 && high_txs >= 50.0,
           "cycle probability " + fmt(low_prob) + " at r=0.01, " + fmt(high_prob) +
               " at r=1000, " + fmt(high_txs) + " transactions in cycles at r=1000");
}

// --- criterion 3: the attack traps nearly all pause-time transactions
void criterion_attack_trapping() {
    begin();
    // The client process keeps sending past the pause, so on average tau
    // honest transactions fall inside it.
    auto mean_trapped = [&](double tau) {
        double total = 0;
        for (int trial = 0; trial < 100; ++trial) {
            SimConfig config;
            config.n = 21;
            config.r = 0.1;
            config.honest_count = 100;
            config.attack = two_tx_plan(21, tau);
            config.seed = trial_seed(0xC3, "attack-trap", static_cast<int>(tau), trial);
            total += trapped_honest(run(config));
        }
        return total / 100.0;
    };
    double tau10 = mean_trapped(10.0);
    double tau50 = mean_trapped(50.0);
    report(3, tau10 >= 8.0 && tau50 >= 45.0,
           "mean trapped " + fmt(tau10) + " for tau=10 (>=8), " + fmt(tau50) +
               " for tau=50 (>=45)");
}

// --- criterion 4: reordering breaks the bare attack but not the cloned one
void criterion_reordering_robustness() {
    begin();
    // The pause spans the whole honest burst so that success measures
    // reordering sensitivity, not races at the pause boundary.
    auto success_rate = [&](const AttackPlan& plan, int point) {
        int successes = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            SimConfig config;
            config.n = 21;
            config.r = 0.1;
            config.honest_count = 10;
            config.reorder_p = 0.5;
            config.attack = plan;
            config.seed = trial_seed(0xC4, "reorder", point, trial);
            auto result = run(config);
            if (success(result).second) ++successes;
        }
        return successes / 1000.0;
    };
    double bare = success_rate(two_tx_plan(21, 20.0), 0);
    double cloned = success_rate(clone_plan(four_tx_plan(21, 20.0), 2), 1);
    report(4, bare < 0.5 && cloned >= 0.9,
           "success at p=0.5: two-tx " + fmt(bare) + " (<0.5), four-tx+clone " +
               fmt(cloned) + " (>=0.9)");
}

// --- criterion 5: scheme error rates among cycle members
void criterion_mitigation_error() {
    begin();
    double alpha = 0, ham = 0, ranked = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        SimConfig config;
        config.n = 21;
        config.r = 0.1;
        config.honest_count = 20;
        config.attack = two_tx_plan(21, 10.0);
        config.seed = trial_seed(0xC5, "mitigate-ranked", 0, trial);
        auto result = run(config);
        auto t = build_tournament(result.orderings);
        std::set<TxId> in_cycle;
        for (const auto& cycle : condorcet_cycles(t))
            in_cycle.insert(cycle.begin(), cycle.end());
        std::vector<TxId> cycle_honest;
        for (const TxId& id : result.registry.honest_ids())
            if (in_cycle.count(id)) cycle_honest.push_back(id);
        auto truth = ground_truth_order(result.registry, cycle_honest);
        alpha += 1.0 - pair_accuracy(
                           final_ordering(t, BatchScheme::alphabetical()), truth);
        ham += 1.0 - pair_accuracy(
                         final_ordering(t, BatchScheme::hamiltonian(BreakPolicy::Arbitrary)),
                         truth);
        ranked += 1.0 - pair_accuracy(
                            final_ordering(t, BatchScheme::ranked_pairs()), truth);
    }
    alpha /= trials;
    ham /= trials;
    ranked /= trials;
    bool pass = alpha >= 0.45 && alpha <= 0.55 && ham >= 0.21 && ham <= 0.41 &&
                ranked <= 0.05;
    report(5, pass,
           "mean pair error: alphabetical " + fmt(alpha) + " (0.50+-0.05), "
           "hamiltonian-arbitrary " + fmt(ham) + " (0.31+-0.10), ranked-pairs " +
               fmt(ranked) + " (<=0.05)");
}

// --- criterion 6: broadcast suppresses trapping under identical seeds
void criterion_broadcast_mitigation() {
    begin();
    double with_broadcast = 0, without_broadcast = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SimConfig config;
        config.n = 21;
        config.r = 0.1;
        config.honest_count = 20;
        config.attack = two_tx_plan(21, 10.0);
        config.seed = trial_seed(0xC6, "broadcast", 0, trial);
        config.broadcast = true;
        config.r_internal = 0.1;
        with_broadcast += trapped_honest(run(config));
        config.broadcast = false;
        config.r_internal = 0.0;
        without_broadcast += trapped_honest(run(config));
    }
    with_broadcast /= 100.0;
    without_broadcast /= 100.0;
    report(6, with_broadcast <= 1.0 && without_broadcast >= 8.0,
           "mean trapped " + fmt(with_broadcast) + " with broadcast (<=1), " +
               fmt(without_broadcast) + " without (>=8)");
}

// --- criterion 7: order reversal alone creates almost no cycles at r = 0.01
void criterion_non_injective() {
    begin();
    std::set<NodeId> adversarial{0, 1, 2, 3};  // quarter of 21 minus one
    double total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SimConfig config;
        config.n = 21;
        config.r = 0.01;
        config.honest_count = 100;
        config.seed = trial_seed(0xC7, "non-injective", 0, trial);
        auto result = run(config);
        auto reversed = reverse_orderings(result.orderings, adversarial);
        total += cycle_stats(build_tournament(reversed)).txs_in_cycles;
    }
    total /= 100.0;
    report(7, total <= 1.0,
           "mean transactions in cycles " + fmt(total) + " under reversal (<=1)");
}

// --- criterion 8: graph algorithms agree with brute-force oracles
void criterion_oracle_equivalence() {
    begin();
    RngStream scc_rng(0xC8, "acceptance-scc");
    int scc_matches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int m = 2 + static_cast<int>(scc_rng.next_below(9));
        auto t = oracle::random_tournament(m, scc_rng);
        if (scc_decompose(t).components == oracle::scc_by_reachability(t))
            ++scc_matches;
    }

    RngStream ham_rng(0xC8, "acceptance-ham");
    int ham_valid = 0, strong = 0;
    while (strong < 1000) {
        int m = 3 + static_cast<int>(ham_rng.next_below(10));
        auto t = oracle::random_tournament(m, ham_rng);
        if (!oracle::strongly_connected(t)) continue;
        ++strong;
        bool ok = oracle::is_hamiltonian_path(t, hamiltonian_path(t));
        for (BreakPolicy policy : {BreakPolicy::Arbitrary, BreakPolicy::WeakestLink})
            ok = ok && oracle::is_hamiltonian_cycle(t, order_hamiltonian(t, policy));
        if (ok) ++ham_valid;
    }
    report(8, scc_matches == 1000 && ham_valid == 1000,
           "scc oracle " + std::to_string(scc_matches) +
               "/1000, hamiltonian verification " + std::to_string(ham_valid) + "/1000");
}

// --- criterion 9: presets re-run byte-identically
void criterion_determinism() {
    begin();
    bool pass = true;
    std::string detail;
    fs::path base = fs::temp_directory_path() / "fairorder_acceptance";
    fs::remove_all(base);
    for (const std::string& name : preset_names()) {
        PresetOptions options;
        options.seed = 0xC9;
        options.trials = 2;
        options.points_per_decade = 1;
        options.linear_points = 2;
        options.n_values = {21};
        options.svg = false;
        options.out_dir = (base / (name + "_a")).string();
        run_preset(name, options);
        options.out_dir = (base / (name + "_b")).string();
        options.threads = 2;
        run_preset(name, options);
        for (const auto& entry : fs::directory_iterator(base / (name + "_a"))) {
            if (entry.path().extension() != ".csv") continue;
            std::ifstream a(entry.path(), std::ios::binary);
            std::ifstream b(base / (name + "_b") / entry.path().filename(),
                            std::ios::binary);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            if (sa.str() != sb.str() || sa.str().empty()) {
                pass = false;
                detail += " " + entry.path().filename().string();
            }
        }
    }
    fs::remove_all(base);
    report(9, pass,
           pass ? "every preset re-run produced byte-identical CSV output"
                : "byte mismatch in:" + detail);
}

}  // namespace

int main() {
    criterion_ranked_pairs_preservation();
    criterion_honest_phase_change();
    criterion_attack_trapping();
    criterion_reordering_robustness();
    criterion_mitigation_error();
    criterion_broadcast_mitigation();
    criterion_non_injective();
    criterion_oracle_equivalence();
    criterion_determinism();
    if (failures != 0)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}

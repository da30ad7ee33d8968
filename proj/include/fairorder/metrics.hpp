#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairorder/depgraph.hpp"
#include "fairorder/netsim.hpp"

namespace fairorder {

/// Fraction of `truth` pairs whose relative order `final` preserves. Ids in
/// `final` that are not in `truth` are ignored; fewer than two truth ids
/// yields 1.0. Throws std::invalid_argument if a truth id is absent.
double pair_accuracy(std::span<const TxId> final_order, std::span<const TxId> truth);

/// Honest ids inside a cycle of the with-attack tournament but in no cycle
/// of the honest projection.
std::vector<TxId> trapped_honest_ids(const WeightedTournament& with_attack,
                                     const WeightedTournament& projection,
                                     std::span<const TxId> honest_ids);
std::vector<TxId> trapped_honest_ids(const SimResult& result);
int trapped_honest(const SimResult& result);

/// (any, all): any = at least one honest transaction trapped; all = every
/// honest transaction submitted strictly inside the pause window trapped
/// (vacuously true when none was).
std::pair<bool, bool> success(const SimResult& result);

struct CycleStats {
    int count = 0;
    std::vector<int> sizes;
    int txs_in_cycles = 0;
};

CycleStats cycle_stats(const WeightedTournament& t);

/// One simulation trial reduced to the evaluation quantities.
struct TrialMetrics {
    int trial = 0;
    std::uint64_t seed = 0;
    int n = 0;
    double r = 0.0;
    double r_internal = 0.0;
    double p = 0.0;
    double tau = 0.0;
    std::string scheme = "none";
    int cycles = 0;
    int txs_in_cycles = 0;
    int trapped = 0;
    bool success_any = false;
    bool success_all = false;
    bool has_accuracy = false;
    double accuracy = 0.0;
};

/// Stable CSV column order shared by every emitter.
std::string trial_metrics_header();
std::string to_csv_row(const TrialMetrics& metrics);

/// Shortest round-trip decimal form of a double (CSV/SVG formatting).
std::string format_double(double value);

}  // namespace fairorder

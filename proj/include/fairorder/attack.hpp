#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fairorder/model.hpp"

namespace fairorder {

/// A Condorcet attack: a node partition, per-part initialization and
/// finalization transmission sequences, and the pause separating the two
/// phases (in mean-generation-interval units).
struct AttackPlan {
    std::string kind;  // "two_tx" or "four_tx"
    Partition partition;
    std::vector<std::vector<TxId>> init;      // parallel to partition.parts
    std::vector<std::vector<TxId>> finalize;  // parallel to partition.parts
    double pause = 0.0;
    int clones = 1;
    std::map<TxId, TxId> clone_group;  // plan id -> logical transaction

    /// Plan transaction ids, sorted, each appearing once.
    std::vector<TxId> tx_ids() const;
    /// Throws std::invalid_argument on malformed plans (overlapping
    /// init/finalize per part, non-positive pause, shape mismatch).
    void validate(int n) const;
};

/// Two-transaction attack over three near-equal parts:
/// P1: A,B,pause / P2: B,pause,A / P3: pause,A,B. Requires n >= 3.
AttackPlan two_tx_plan(int n, double pause);

/// Four-transaction attack over four near-equal parts:
/// P1: A,B,pause,C,D / P2: B,C,pause,D,A / P3: C,D,pause,A,B /
/// P4: D,A,pause,B,C. Requires n >= 4.
AttackPlan four_tx_plan(int n, double pause);

/// Replace every transaction X by the run X1..Xk in place, interleaving k
/// copies of the attack. k = 1 returns the plan unchanged.
AttackPlan clone_plan(const AttackPlan& plan, int k);

/// One adversarial client transmission: the burst of a part in a phase sends
/// its transactions `gap` apart, parts in parallel.
struct Transmission {
    double time = 0.0;
    int part = 0;
    TxId tx;
    int phase = 1;  // 1 = initialization, 3 = finalization
    int slot = 0;   // position within the part's burst
};

/// Expand a plan into transmissions: init bursts start at `start_time`,
/// finalize bursts at `start_time + pause`. Sorted by (time, part, slot).
std::vector<Transmission> schedule(const AttackPlan& plan, double start_time,
                                   double gap);

/// Orderings of the given nodes reversed; all others untouched.
std::vector<LocalOrdering> reverse_orderings(std::vector<LocalOrdering> orderings,
                                             const std::set<NodeId>& adversarial);

}  // namespace fairorder

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fairorder/attack.hpp"
#include "fairorder/model.hpp"

namespace fairorder {

/// Mean of the inter-transaction generation distribution; the simulation
/// time unit. Network ratios r and r' are expressed against it.
inline constexpr double kGenerationMean = 1.0;

struct SimConfig {
    int n = 21;                 // committee size
    double r = 0.1;             // external network ratio (client -> node)
    double r_internal = 0.1;    // internal network ratio r' (node -> node)
    int honest_count = 100;     // honest transactions submitted by clients
    double reorder_p = 0.0;     // per-pair swap probability for attack bursts
    bool broadcast = false;     // gossip mitigation on first external receipt
    std::uint64_t seed = 1;
    std::optional<AttackPlan> attack;
    double attack_start = 0.0;  // init-phase start relative to the first honest tx
    double gap = 0.01;          // intra-burst spacing of adversarial transmissions
    int orderings_used = 0;     // local orderings consumed downstream; 0 = all n

    void validate() const;  // throws std::invalid_argument
};

enum class Via { Direct, Gossip };

std::string to_string(Via via);

/// First receipt of a transaction at a node.
struct DeliveryRecord {
    NodeId node = 0;
    TxId tx;
    double time = 0.0;
    Via via = Via::Direct;
};

/// Open interval between the completion of the initialization phase (last
/// delivery of an init transmission) and the first finalization
/// transmission. Transactions submitted strictly inside it arrive after the
/// whole init phase at every node.
struct PauseWindow {
    double begin = 0.0;
    double end = 0.0;
};

struct SimResult {
    SimConfig config;
    TxRegistry registry;
    std::vector<LocalOrdering> orderings;  // one per node, full transaction set
    std::vector<TxId> ground_truth;        // honest ids by submission time
    std::vector<DeliveryRecord> delivery_log;
    std::optional<PauseWindow> pause_window;

    /// Per-node orderings with adversarial ids deleted.
    std::vector<LocalOrdering> honest_projection() const;
    /// Honest ids submitted strictly inside the pause window.
    std::vector<TxId> honest_in_pause() const;
    /// The first `orderings_used` local orderings (all when the knob is 0).
    std::vector<LocalOrdering> graph_orderings() const;
};

/// Execute one seeded run: honest submissions at t0 = 0 with Exp(1) gaps and
/// per-node Exp(r) delivery delays; attack transmissions per the plan's
/// schedule with FIFO bursts, pairwise reordering with probability
/// `reorder_p`, and optional one-hop gossip with Exp(r') delays. Identical
/// configs (including seed) produce identical results.
SimResult run(const SimConfig& config);

/// One simulation plus the honest-only projection of its orderings.
std::pair<SimResult, std::vector<LocalOrdering>> attack_run_pair(const SimConfig& config);

}  // namespace fairorder

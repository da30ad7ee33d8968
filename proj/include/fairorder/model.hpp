#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace fairorder {

using NodeId = int;
using TxId = std::string;

enum class Origin { Honest, Adversarial };

std::string to_string(Origin origin);

/// A transaction as seen by the ordering layer: an opaque id with a total
/// lexicographic order, a submission instant (in units of the mean
/// inter-transaction generation interval), a conflict-key set, and an
/// optional tag linking the clones of one logical attack transaction.
struct Transaction {
    TxId id;
    Origin origin = Origin::Honest;
    double submit_time = 0.0;
    std::set<std::string> keys;
    std::optional<std::string> clone_group;
};

/// One node's received sequence of transaction ids.
struct LocalOrdering {
    NodeId node = 0;
    std::vector<TxId> sequence;
};

/// Disjoint node sets covering [0, n).
struct Partition {
    std::vector<std::vector<NodeId>> parts;

    int node_count() const;
    /// Throws std::invalid_argument unless parts are nonempty, pairwise
    /// disjoint and cover exactly [0, n).
    void validate(int n) const;
};

/// Contiguous partition of [0, n) into k parts whose sizes differ by at most
/// one (earlier parts take the remainder).
Partition near_equal_partition(int n, int k);

/// All transactions of a run, keyed by id.
class TxRegistry {
public:
    /// Throws std::invalid_argument on duplicate id or invalid submit_time.
    void add(Transaction tx);

    bool contains(const TxId& id) const { return txs_.count(id) != 0; }
    const Transaction& at(const TxId& id) const;
    std::size_t size() const { return txs_.size(); }
    bool empty() const { return txs_.empty(); }

    std::vector<TxId> ids() const;
    std::vector<TxId> honest_ids() const;
    std::vector<TxId> adversarial_ids() const;

    auto begin() const { return txs_.begin(); }
    auto end() const { return txs_.end(); }

private:
    std::map<TxId, Transaction> txs_;
};

/// Ids sorted by ascending submit_time, ties broken by ascending id.
std::vector<TxId> ground_truth_order(const TxRegistry& registry);

/// Same, restricted to `subset`. Throws std::invalid_argument if any subset
/// id is not registered.
std::vector<TxId> ground_truth_order(const TxRegistry& registry,
                                     std::span<const TxId> subset);

/// Line record: `id,origin,submit_time,keys(;-separated),clone_group`.
std::string to_record(const Transaction& tx);

}  // namespace fairorder

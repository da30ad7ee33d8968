#include "fairorder/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fairorder {

std::string to_string(Origin origin) {
    return origin == Origin::Honest ? "honest" : "adversarial";
}

int Partition::node_count() const {
    int n = 0;
    for (const auto& part : parts) n += static_cast<int>(part.size());
    return n;
}

void Partition::validate(int n) const {
    std::vector<bool> seen(n, false);
    if (parts.empty()) throw std::invalid_argument("partition has no parts");
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("partition has an empty part");
        for (NodeId node : part) {
            if (node < 0 || node >= n)
                throw std::invalid_argument("partition node out of range");
            if (seen[node])
                throw std::invalid_argument("partition parts are not disjoint");
            seen[node] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("partition does not cover all nodes");
}

Partition near_equal_partition(int n, int k) {
    if (k <= 0 || n < k) throw std::invalid_argument("cannot partition " +
                                                     std::to_string(n) + " nodes into " +
                                                     std::to_string(k) + " parts");
    Partition partition;
    NodeId next = 0;
    for (int i = 0; i < k; ++i) {
        int size = n / k + (i < n % k ? 1 : 0);
        std::vector<NodeId> part(size);
        for (int j = 0; j < size; ++j) part[j] = next++;
        partition.parts.push_back(std::move(part));
    }
    return partition;
}

void TxRegistry::add(Transaction tx) {
    if (!std::isfinite(tx.submit_time) || tx.submit_time < 0.0)
        throw std::invalid_argument("transaction " + tx.id + " has invalid submit_time");
    if (!txs_.emplace(tx.id, tx).second)
        throw std::invalid_argument("duplicate transaction id " + tx.id);
}

const Transaction& TxRegistry::at(const TxId& id) const {
    auto it = txs_.find(id);
    if (it == txs_.end()) throw std::invalid_argument("unknown transaction id " + id);
    return it->second;
}

std::vector<TxId> TxRegistry::ids() const {
    std::vector<TxId> out;
    out.reserve(txs_.size());
    for (const auto& [id, tx] : txs_) out.push_back(id);
    return out;
}

std::vector<TxId> TxRegistry::honest_ids() const {
    std::vector<TxId> out;
    for (const auto& [id, tx] : txs_)
        if (tx.origin == Origin::Honest) out.push_back(id);
    return out;
}

std::vector<TxId> TxRegistry::adversarial_ids() const {
    std::vector<TxId> out;
    for (const auto& [id, tx] : txs_)
        if (tx.origin == Origin::Adversarial) out.push_back(id);
    return out;
}

namespace {

std::vector<TxId> sort_by_time(const TxRegistry& registry, std::vector<TxId> ids) {
    std::sort(ids.begin(), ids.end(), [&](const TxId& a, const TxId& b) {
        double ta = registry.at(a).submit_time;
        double tb = registry.at(b).submit_time;
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return ids;
}

}  // namespace

std::vector<TxId> ground_truth_order(const TxRegistry& registry) {
    return sort_by_time(registry, registry.ids());
}

std::vector<TxId> ground_truth_order(const TxRegistry& registry,
                                     std::span<const TxId> subset) {
    std::vector<TxId> ids(subset.begin(), subset.end());
    for (const TxId& id : ids)
        if (!registry.contains(id))
            throw std::invalid_argument("subset id " + id + " not in registry");
    return sort_by_time(registry, std::move(ids));
}

std::string to_record(const Transaction& tx) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), tx.submit_time);
    std::string record = tx.id;
    record += ',';
    record += to_string(tx.origin);
    record += ',';
    record.append(buf, res.ptr);
    record += ',';
    bool first = true;
    for (const auto& key : tx.keys) {
        if (!first) record += ';';
        record += key;
        first = false;
    }
    record += ',';
    if (tx.clone_group) record += *tx.clone_group;
    return record;
}

}  // namespace fairorder

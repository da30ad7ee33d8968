#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairorder/depgraph.hpp"
#include "fairorder/model.hpp"

namespace fairorder {

enum class BreakPolicy { Arbitrary, WeakestLink };

/// Rule for linearizing the transactions of one Condorcet cycle (batch).
/// Canonical names: `alphabetical`, `hamiltonian-arbitrary`,
/// `hamiltonian-weakest`, `ranked-pairs`, `post-decryption:<inner>`.
struct BatchScheme {
    enum class Kind { Alphabetical, Hamiltonian, RankedPairs, PostDecryption };

    Kind kind = Kind::RankedPairs;
    BreakPolicy policy = BreakPolicy::Arbitrary;        // Hamiltonian only
    Kind inner_kind = Kind::RankedPairs;                // PostDecryption only
    BreakPolicy inner_policy = BreakPolicy::Arbitrary;  // PostDecryption only

    static BatchScheme alphabetical() { return {Kind::Alphabetical, {}, {}, {}}; }
    static BatchScheme hamiltonian(BreakPolicy policy) {
        return {Kind::Hamiltonian, policy, {}, {}};
    }
    static BatchScheme ranked_pairs() { return {Kind::RankedPairs, {}, {}, {}}; }
    static BatchScheme post_decryption(const BatchScheme& inner);

    /// Inner scheme of a post-decryption scheme (never itself post-decryption).
    BatchScheme inner() const { return {inner_kind, inner_policy, {}, {}}; }

    /// Throws std::invalid_argument on unknown names or nested post-decryption.
    static BatchScheme parse(std::string_view name);
    std::string name() const;
};

/// Component ids in ascending lexicographic order.
std::vector<TxId> order_alphabetical(std::span<const TxId> component);

/// Hamiltonian path of a tournament by insertion: each vertex, taken in
/// lexicographic order, goes right after the last path vertex that beats it.
std::vector<TxId> hamiltonian_path(const WeightedTournament& t);

/// Order one SCC by building a Hamiltonian cycle and breaking one edge.
/// Arbitrary breaks the edge entering the lexicographically smallest vertex;
/// WeakestLink breaks a minimum-weight cycle edge (ties: smallest
/// (source, target) pair). Throws std::invalid_argument when the input has
/// three or more vertices and is not strongly connected.
std::vector<TxId> order_hamiltonian(const WeightedTournament& component,
                                    BreakPolicy policy);

/// Ranked pairs: lock edges in descending weight order (ties by ascending
/// source then target id), skipping any edge that would close a cycle with
/// the locked relation; output the unique topological order of the result.
std::vector<TxId> order_ranked_pairs(const WeightedTournament& component);

/// Connected components of the conflict graph (u ~ v iff their key sets
/// intersect), listed by smallest member id, members lexicographic.
std::vector<std::vector<TxId>> dependency_groups(std::span<const TxId> component,
                                                 const TxRegistry& registry);

/// Split a cycle into independent key-conflict groups, order each group with
/// the inner scheme, then order the groups by ranked pairs over summed
/// pairwise weights.
std::vector<TxId> order_post_decryption(const WeightedTournament& component,
                                        const TxRegistry& registry,
                                        const BatchScheme& inner);

/// Order one component of `t` under `scheme`. `registry` is required for
/// post-decryption schemes.
std::vector<TxId> order_component(const WeightedTournament& t,
                                  std::span<const TxId> component,
                                  const BatchScheme& scheme,
                                  const TxRegistry* registry = nullptr);

/// Full pipeline: build the tournament, condense, order each component under
/// `scheme`, concatenate in condensation order.
std::vector<TxId> final_ordering(std::span<const LocalOrdering> orderings,
                                 const BatchScheme& scheme,
                                 const TxRegistry* registry = nullptr);

/// As final_ordering, reusing an already built tournament.
std::vector<TxId> final_ordering(const WeightedTournament& t,
                                 const BatchScheme& scheme,
                                 const TxRegistry* registry = nullptr);

}  // namespace fairorder

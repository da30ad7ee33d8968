#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairorder/model.hpp"

namespace fairorder {

/// Complete directed graph over transaction ids. weight(u, v) counts the
/// local orderings that report u before v; the edge of a pair points toward
/// the strict weight majority, with ties directed from the lexicographically
/// smaller id to the larger one. Vertices are held in lexicographic order,
/// so vertex indices and id order agree.
class WeightedTournament {
public:
    WeightedTournament() = default;

    /// Build from an explicit weight matrix (row u, column v = weight(u,v)).
    /// Vertices are sorted; the matrix must follow the sorted order.
    static WeightedTournament from_weights(std::vector<TxId> vertices,
                                           std::vector<std::vector<int>> weights,
                                           int orderings_used);

    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<TxId>& vertices() const { return vertices_; }
    int orderings_used() const { return orderings_used_; }

    /// Index of an id among the sorted vertices, -1 if absent.
    int index_of(const TxId& id) const;

    int weight(int u, int v) const { return weights_[u * size() + v]; }
    int weight(const TxId& u, const TxId& v) const;

    bool has_edge(int u, int v) const {
        int a = weight(u, v), b = weight(v, u);
        return a != b ? a > b : u < v;
    }
    bool has_edge(const TxId& u, const TxId& v) const;

    /// Induced sub-tournament on a subset of the vertices.
    WeightedTournament restricted_to(std::span<const TxId> subset) const;

private:
    std::vector<TxId> vertices_;
    std::vector<int> weights_;  // size() x size(), row-major, zero diagonal
    int orderings_used_ = 0;
};

/// Aggregate local orderings into the weighted majority tournament.
/// Throws std::invalid_argument if no orderings are given, an ordering
/// contains duplicates, or the orderings do not share one transaction set.
WeightedTournament build_tournament(std::span<const LocalOrdering> orderings);

/// SCCs of a tournament, contracted. The condensation of a tournament is a
/// transitive tournament, so its topological order is unique; components are
/// listed in that order, members lexicographically.
struct Condensation {
    std::vector<std::vector<TxId>> components;
    std::vector<std::pair<int, int>> dag;  // component-index edges, i -> j
};

Condensation scc_decompose(const WeightedTournament& t);

/// SCCs with at least two vertices, in condensation order.
std::vector<std::vector<TxId>> condorcet_cycles(const WeightedTournament& t);

/// Graphviz export; edge labels carry weights. When a registry is given,
/// adversarial vertices are drawn in a distinct style.
std::string to_dot(const WeightedTournament& t, const TxRegistry* registry = nullptr);

}  // namespace fairorder

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bridgeflow/matrix.hpp"

namespace bridgeflow {

// Directed graph on vertices 0..n-1. Edges are deduplicated and kept sorted;
// the structure is immutable after construction.
class Graph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<std::size_t>>& successors() const { return succ_; }
    bool has_edge(std::size_t i, std::size_t j) const;

    // Digraph of the nonzero pattern of a square matrix. An entry counts as
    // zero only when it is exactly 0.0.
    static Graph support_of(const Matrix& m);
    static Graph complete_with_loops(std::size_t n);

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> succ_;
};

// 0/1 matrix with a_ij = 1 iff (i,j) is an edge.
Matrix adjacency(const Graph& g);

bool is_strongly_connected(const Graph& g);

// True iff the gcd of all directed cycle lengths is 1. Requires strong
// connectivity; throws ValidationError otherwise.
bool is_aperiodic(const Graph& g);

// No simultaneous row/column permutation exposes an off-diagonal zero block;
// equivalent to strong connectivity of the nonzero pattern.
bool is_indecomposable(const Matrix& m);

// No pair of independent row and column permutations exposes an off-diagonal
// zero block. Tested via bipartite perfect matchings of every one-row,
// one-column deleted submatrix (all first-order subpermanents positive).
// For n = 1 this reduces to positivity of the single entry.
bool is_fully_indecomposable(const Matrix& m);

// m_ij = 0 whenever (i,j) is not an edge of g.
bool supports_within(const Matrix& m, const Graph& g);

}  // namespace bridgeflow

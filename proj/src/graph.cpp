#include "bridgeflow/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "bridgeflow/errors.hpp"

namespace bridgeflow {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw ValidationError("graph needs at least one vertex");
    for (const auto& [i, j] : edges_) {
        if (i >= n_ || j >= n_)
            throw ValidationError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") out of range for n=" + std::to_string(n_));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    succ_.resize(n_);
    for (const auto& [i, j] : edges_) succ_[i].push_back(j);
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) return false;
    const auto& s = succ_[i];
    return std::binary_search(s.begin(), s.end(), j);
}

Graph Graph::support_of(const Matrix& m) {
    if (!m.square()) throw ValidationError("support pattern needs a square matrix");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) edges.emplace_back(i, j);
    return Graph(m.rows(), std::move(edges));
}

Graph Graph::complete_with_loops(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Matrix adjacency(const Graph& g) {
    Matrix a(g.vertex_count(), g.vertex_count(), 0.0);
    for (const auto& [i, j] : g.edges()) a(i, j) = 1.0;
    return a;
}

namespace {

// Tarjan's algorithm; counts the strongly connected components.
struct SccCounter {
    const std::vector<std::vector<std::size_t>>& succ;
    std::vector<int> index, low;
    std::vector<bool> on_stack;
    std::vector<std::size_t> stack;
    int next_index = 0;
    std::size_t components = 0;

    explicit SccCounter(const std::vector<std::vector<std::size_t>>& s)
        : succ(s), index(s.size(), -1), low(s.size(), 0), on_stack(s.size(), false) {}

    void dfs(std::size_t v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : succ[v]) {
            if (index[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            ++components;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
            } while (w != v);
        }
    }

    std::size_t count() {
        for (std::size_t v = 0; v < succ.size(); ++v)
            if (index[v] < 0) dfs(v);
        return components;
    }
};

}  // namespace

bool is_strongly_connected(const Graph& g) {
    if (g.vertex_count() == 1) return true;
    SccCounter scc(g.successors());
    return scc.count() == 1;
}

bool is_aperiodic(const Graph& g) {
    if (!is_strongly_connected(g))
        throw ValidationError("aperiodicity is only defined for strongly connected graphs");
    // Period = gcd over all edges (u,v) of dist(u) + 1 - dist(v), with dist
    // taken from any BFS root. Aperiodic iff the gcd is 1.
    const std::size_t n = g.vertex_count();
    std::vector<long long> dist(n, -1);
    std::queue<std::size_t> q;
    dist[0] = 0;
    q.push(0);
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (std::size_t v : g.successors()[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    long long period = 0;
    for (const auto& [u, v] : g.edges())
        period = std::gcd(period, std::abs(dist[u] + 1 - dist[v]));
    return period == 1;
}

bool is_indecomposable(const Matrix& m) {
    if (!m.square()) throw ValidationError("indecomposability needs a square matrix");
    return is_strongly_connected(Graph::support_of(m));
}

namespace {

// Kuhn's augmenting-path matching on the bipartite nonzero pattern, with one
// row and one column removed. n is small enough that restarting per pair of
// removed indices is cheap.
bool has_perfect_matching_minor(const Matrix& m, std::size_t drop_row, std::size_t drop_col) {
    const std::size_t n = m.rows();
    std::vector<int> match_col(n, -1);  // column -> matched row
    std::vector<char> visited(n);

    auto augment = [&](auto&& self, std::size_t row) -> bool {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == drop_col || visited[j] || m(row, j) == 0.0) continue;
            visited[j] = 1;
            if (match_col[j] < 0 ||
                self(self, static_cast<std::size_t>(match_col[j]))) {
                match_col[j] = static_cast<int>(row);
                return true;
            }
        }
        return false;
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (i == drop_row) continue;
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, i)) return false;
    }
    return true;
}

}  // namespace

bool is_fully_indecomposable(const Matrix& m) {
    if (!m.square()) throw ValidationError("full indecomposability needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0) != 0.0;

    // Every row and column needs at least two nonzeros; cheap reject.
    bool diagonal_positive = true;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t in_row = 0, in_col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) != 0.0) ++in_row;
            if (m(j, i) != 0.0) ++in_col;
        }
        if (in_row < 2 || in_col < 2) return false;
        if (m(i, i) == 0.0) diagonal_positive = false;
    }

    // An irreducible pattern with positive main diagonal is fully
    // indecomposable: a zero block A[R, C] with |R| + |C| = n would force
    // C to be the complement of R, closing R off.
    if (diagonal_positive && is_indecomposable(m)) return true;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!has_perfect_matching_minor(m, i, j)) return false;
    return true;
}

bool supports_within(const Matrix& m, const Graph& g) {
    if (m.rows() != g.vertex_count() || m.cols() != g.vertex_count()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0 && !g.has_edge(i, j)) return false;
    return true;
}

}  // namespace bridgeflow

#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace wha {

struct Edge {
    int source = 0;
    int target = 0;
    int id = 0;
};

/// Finite directed multigraph on vertices 0..n-1.
class DimensionGraph {
public:
    DimensionGraph() = default;
    explicit DimensionGraph(int n_vertices) : n_(n_vertices) {}

    int add_edge(int source, int target) {
        if (source < 0 || source >= n_ || target < 0 || target >= n_)
            throw std::invalid_argument("add_edge: endpoint is not a vertex");
        int id = static_cast<int>(edges_.size());
        edges_.push_back({source, target, id});
        return id;
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_.at(id); }

    /// tau = target, sigma = source
    int tau(int e) const { return edges_[e].target; }
    int sigma(int e) const { return edges_[e].source; }

    int multiplicity(int source, int target) const {
        int c = 0;
        for (auto& e : edges_) if (e.source == source && e.target == target) ++c;
        return c;
    }
    bool has_parallel_edges() const {
        std::set<std::pair<int, int>> seen;
        for (auto& e : edges_)
            if (!seen.insert({e.source, e.target}).second) return true;
        return false;
    }
    /// A[l][j] = number of edges j -> l
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> A(n_, std::vector<int>(n_, 0));
        for (auto& e : edges_) A[e.target][e.source]++;
        return A;
    }

    friend bool operator==(const DimensionGraph& a, const DimensionGraph& b) {
        if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
        for (std::size_t i = 0; i < a.edges_.size(); ++i)
            if (a.edges_[i].source != b.edges_[i].source || a.edges_[i].target != b.edges_[i].target) return false;
        return true;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// A composable edge sequence (e_1, ..., e_m) with sigma(e_i) = tau(e_{i+1}), or a single vertex.
struct Path {
    int vertex = 0;            // used when edges is empty
    std::vector<int> edges;
    std::vector<int> vertices; // (i_0, ..., i_m), tau = i_0, sigma = i_m

    int length() const { return static_cast<int>(edges.size()); }
    int tau() const { return vertices.front(); }
    int sigma() const { return vertices.back(); }

    friend bool operator<(const Path& a, const Path& b) {
        if (a.vertices != b.vertices) return a.vertices < b.vertices;
        return a.edges < b.edges;
    }
    friend bool operator==(const Path& a, const Path& b) {
        return a.vertices == b.vertices && a.edges == b.edges;
    }
};

inline Path vertex_path(int v) { return Path{v, {}, {v}}; }

inline Path make_path(const DimensionGraph& g, const std::vector<int>& edges) {
    if (edges.empty()) throw std::invalid_argument("make_path: use vertex_path for length 0");
    Path p;
    p.edges = edges;
    p.vertices.push_back(g.tau(edges[0]));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i > 0 && g.sigma(edges[i - 1]) != g.tau(edges[i]))
            throw std::invalid_argument("make_path: edges not composable");
        p.vertices.push_back(g.sigma(edges[i]));
    }
    p.vertex = p.vertices.front();
    return p;
}

/// Path from a vertex sequence; requires a unique edge between consecutive vertices.
inline Path path_from_vertices(const DimensionGraph& g, const std::vector<int>& vs) {
    if (vs.size() == 1) return vertex_path(vs[0]);
    std::vector<int> es;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        int found = -1;
        for (auto& e : g.edges())
            if (e.target == vs[i] && e.source == vs[i + 1]) {
                if (found >= 0) throw std::invalid_argument("path_from_vertices: ambiguous parallel edges");
                found = e.id;
            }
        if (found < 0) throw std::invalid_argument("path_from_vertices: no such edge");
        es.push_back(found);
    }
    return make_path(g, es);
}

/// All paths of length m in lexicographic order of vertex sequences (edge ids break ties).
inline std::vector<Path> enumerate_paths(const DimensionGraph& g, int m) {
    std::vector<Path> out;
    if (m < 0) return out;
    for (int v = 0; v < g.num_vertices(); ++v) out.push_back(vertex_path(v));
    for (int k = 0; k < m; ++k) {
        std::vector<Path> next;
        for (auto& p : out)
            for (auto& e : g.edges()) {
                if (e.target != p.sigma()) continue;
                Path q = p;
                q.edges.push_back(e.id);
                q.vertices.push_back(e.source);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// number of length-m paths from `start` to each vertex (paths with tau = start)
inline std::map<int, long long> path_multiplicities(const DimensionGraph& g, int start, int m) {
    std::vector<long long> count(g.num_vertices(), 0);
    count[start] = 1;
    for (int k = 0; k < m; ++k) {
        std::vector<long long> next(g.num_vertices(), 0);
        for (auto& e : g.edges()) next[e.source] += count[e.target];
        count = std::move(next);
    }
    std::map<int, long long> out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (count[v]) out[v] = count[v];
    return out;
}

inline DimensionGraph sl2_dimension_graph(int r) {
    if (r < 3) throw std::invalid_argument("sl2_dimension_graph: r must be at least 3");
    DimensionGraph g(r - 1);
    for (int j = 0; j + 1 <= r - 2; ++j) {
        g.add_edge(j, j + 1);
        g.add_edge(j + 1, j);
    }
    return g;
}

/// Fusion coefficients N[a][b][c] = multiplicity of V_c in V_a (x) V_b.
struct FusionData {
    int unit = 0;
    std::vector<std::vector<std::vector<int>>> N;

    int size() const { return static_cast<int>(N.size()); }

    /// checks N_{a,unit}^c = delta_{ac} = N_{unit,a}^c; returns an empty string when valid
    std::string validate() const {
        int n = size();
        if (unit < 0 || unit >= n) return "unit index out of range";
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(N[a].size()) != n) return "fusion table is not square";
            for (int b = 0; b < n; ++b)
                if (static_cast<int>(N[a][b].size()) != n) return "fusion table is not cubic";
        }
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                int d = a == c ? 1 : 0;
                if (N[a][unit][c] != d || N[unit][a][c] != d) return "unit axiom fails at a=" + std::to_string(a);
            }
        return {};
    }
};

inline bool sl2_admissible(int a, int b, int c, int r) {
    if ((a + b + c) % 2 != 0) return false;
    if (a + b - c < 0 || b + c - a < 0 || c + a - b < 0) return false;
    return a + b + c <= 2 * r - 4;
}

inline FusionData sl2_fusion_data(int r) {
    if (r < 3) throw std::invalid_argument("sl2_fusion_data: r must be at least 3");
    int n = r - 1;
    FusionData f;
    f.unit = 0;
    f.N.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) f.N[a][b][c] = sl2_admissible(a, b, c, r) ? 1 : 0;
    return f;
}

inline FusionData fibonacci_fusion_data() {
    FusionData f;
    f.unit = 0;
    f.N.assign(2, std::vector<std::vector<int>>(2, std::vector<int>(2, 0)));
    f.N[0][0][0] = 1;
    f.N[0][1][1] = 1;
    f.N[1][0][1] = 1;
    f.N[1][1][0] = 1;
    f.N[1][1][1] = 1;
    return f;
}

class GeneratorError : public std::invalid_argument {
public:
    GeneratorError(int clause, const std::string& what)
        : std::invalid_argument("generator condition (" + std::to_string(clause) + ") fails: " + what), clause_(clause) {}
    int clause() const { return clause_; }

private:
    int clause_;
};

/// Edges j -> l, one for each unit of dim Hom(V_j, V_l (x) M) = N_{l,M}^j.
inline DimensionGraph dimension_graph_from_fusion(const FusionData& f, int generator) {
    if (auto err = f.validate(); !err.empty()) throw std::invalid_argument("invalid fusion data: " + err);
    int n = f.size();
    if (generator < 0 || generator >= n) throw std::invalid_argument("generator index out of range");
    // (3) the generator shares no summand with the unit
    if (f.N[generator][f.unit][f.unit] > 0 || generator == f.unit)
        throw GeneratorError(3, "generator has the unit as a summand");
    // (2) multiplicity free
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            if (f.N[l][generator][j] > 1)
                throw GeneratorError(2, "multiplicity " + std::to_string(f.N[l][generator][j]) + " > 1");
    DimensionGraph g(n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < f.N[l][generator][j]; ++k) g.add_edge(j, l);
    // (1) every simple occurs in some power of the generator
    std::vector<bool> seen(n, false);
    std::queue<int> todo;
    seen[f.unit] = true;
    todo.push(f.unit);
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop();
        for (auto& e : g.edges())
            if (e.target == v && !seen[e.source]) {
                seen[e.source] = true;
                todo.push(e.source);
            }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw GeneratorError(1, "vertex " + std::to_string(v) + " not reachable from the unit");
    return g;
}

}  // namespace wha

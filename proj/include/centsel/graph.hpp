#ifndef CENTSEL_GRAPH_HPP
#define CENTSEL_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/random.hpp"
#include "centsel/spectral.hpp"

namespace centsel {

using Edge = std::pair<std::size_t, std::size_t>;

/**
 * Undirected simple graph on nodes 0..n-1.
 *
 * Edges are stored normalized (first < second), sorted and unique, so two
 * graphs with the same edge set compare equal regardless of insertion order.
 */
class Graph {
public:
    explicit Graph(std::size_t n) : n_(n) {
        if (n == 0) throw Error(ErrorKind::InvalidArgument, "graph needs at least one node");
    }

    Graph(std::size_t n, std::vector<Edge> edges) : Graph(n) {
        for (auto& [a, b] : edges) {
            if (a >= n_ || b >= n_) throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
            if (a == b) throw Error(ErrorKind::InvalidArgument, "self-loop");
            if (a > b) std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
            throw Error(ErrorKind::InvalidArgument, "duplicate edge");
        }
        edges_ = std::move(edges);
    }

    std::size_t size() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(n_, 0);
        for (const auto& [a, b] : edges_) {
            ++deg[a];
            ++deg[b];
        }
        return deg;
    }

    bool operator==(const Graph&) const = default;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

/// Symmetric 0/1 matrix with zero diagonal.
struct AdjacencyMatrix {
    Matrix entries;

    Eigen::Index size() const { return entries.rows(); }
};

/// Unit-norm leading eigenvector of A with nonnegative entries.
struct CentralityVector {
    Vector values;
    double leading_eigenvalue = 0.0;
    double eigengap = 0.0;  ///< lambda_max - lambda_second of A

    Eigen::Index size() const { return values.size(); }
    double min_entry() const { return values.minCoeff(); }
};

inline AdjacencyMatrix adjacency(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Matrix a = Matrix::Zero(n, n);
    for (const auto& [i, j] : g.edges()) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return {std::move(a)};
}

/// G(n, p): each of the C(n, 2) pairs is scanned in lexicographic order and
/// kept with probability p.
inline Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (unif(rng) < p) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

/**
 * Watts-Strogatz small-world graph.
 *
 * Starts from the ring lattice where node i links to i+1..i+k/2 (mod n),
 * giving every node degree k. Lattice offsets are then scanned in increasing
 * order and, for each node i, the edge (i, i+offset) is rewired with
 * probability p: its far endpoint is replaced by a uniformly random node that
 * is neither i nor already adjacent to i. Up to 100 candidate targets are
 * tried; if none is admissible the original edge stays. Rewiring preserves
 * the edge count n*k/2.
 */
inline Graph watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng) {
    if (k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "k must be even");
    if (k >= n) throw Error(ErrorKind::InvalidArgument, "k must be smaller than n");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");

    std::vector<std::set<std::size_t>> nbrs(n);
    for (std::size_t offset = 1; offset <= k / 2; ++offset) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + offset) % n;
            nbrs[i].insert(j);
            nbrs[j].insert(i);
        }
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t offset = 1; offset <= k / 2; ++offset) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + offset) % n;
            // the lattice edge may already have been rewired away from j's side
            if (!nbrs[i].contains(j)) continue;
            if (unif(rng) >= p) continue;
            for (int attempt = 0; attempt < 100; ++attempt) {
                const std::size_t w = pick(rng);
                if (w == i || nbrs[i].contains(w)) continue;
                nbrs[i].erase(j);
                nbrs[j].erase(i);
                nbrs[i].insert(w);
                nbrs[w].insert(i);
                break;
            }
        }
    }

    std::vector<Edge> edges;
    edges.reserve(n * k / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : nbrs[i]) {
            if (i < j) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

inline bool is_connected(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [a, b] : g.edges()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t visited = 1;
    while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                frontier.push(w);
            }
        }
    }
    return visited == n;
}

namespace detail {

inline bool is_connected_matrix(const Matrix& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    Eigen::Index visited = 1;
    while (!stack.empty()) {
        const Eigen::Index v = stack.back();
        stack.pop_back();
        for (Eigen::Index w = 0; w < n; ++w) {
            if (a(v, w) != 0.0 && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == n;
}

}  // namespace detail

/// Eigenvector centrality from an already computed decomposition of A.
inline CentralityVector centrality_from_decomposition(const SpectralDecomposition& eig) {
    const Eigen::Index n = eig.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty decomposition");
    CentralityVector u;
    u.leading_eigenvalue = eig.eigenvalues[n - 1];
    u.eigengap = n > 1 ? eig.eigenvalues[n - 1] - eig.eigenvalues[n - 2] : 0.0;
    if (n > 1 && u.eigengap < 1e-12) {
        throw Error(ErrorKind::DegenerateLeadingEigenvalue, "leading eigenvalue of A is not simple");
    }
    u.values = eig.eigenvectors.col(n - 1);
    // Perron vector: after the sign fix every entry is >= 0 up to round-off
    if (u.values.sum() < 0.0) u.values = -u.values;
    u.values = u.values.cwiseMax(0.0);
    u.values.normalize();
    return u;
}

inline CentralityVector eigenvector_centrality(const AdjacencyMatrix& a) {
    if (!detail::is_connected_matrix(a.entries)) {
        throw Error(ErrorKind::NotConnected, "eigenvector centrality requires a connected graph");
    }
    return centrality_from_decomposition(eig_sym(a.entries));
}

/// FNV-1a over (n, edges); stable across platforms, used for provenance.
inline std::uint64_t graph_hash(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xFFU;
            h *= 0x100000001b3ULL;
        }
    };
    feed(g.size());
    for (const auto& [a, b] : g.edges()) {
        feed(a);
        feed(b);
    }
    return h;
}

// Edge-list text format: "# n=<N>" then one "i,j" per line with i < j.

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# n=" << g.size() << '\n';
    for (const auto& [a, b] : g.edges()) out << a << ',' << b << '\n';
}

inline Graph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "edge list: missing header");
    if (line.rfind("# n=", 0) != 0) throw Error(ErrorKind::Parse, "edge list: header must be '# n=<N>'");
    std::size_t n = 0;
    try {
        std::size_t used = 0;
        n = std::stoul(line.substr(4), &used);
        if (4 + used != line.size() && line.find_first_not_of(" \r", 4 + used) != std::string::npos) {
            throw Error(ErrorKind::Parse, "edge list: trailing characters in header");
        }
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "edge list: bad node count");
    }
    std::vector<Edge> edges;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        long long a = -1;
        long long b = -1;
        char comma = 0;
        if (!(row >> a >> comma >> b) || comma != ',' || a < 0 || b < 0) {
            throw Error(ErrorKind::Parse, "edge list: malformed line " + std::to_string(lineno));
        }
        row >> std::ws;
        if (!row.eof()) throw Error(ErrorKind::Parse, "edge list: trailing data on line " + std::to_string(lineno));
        if (a >= b) throw Error(ErrorKind::Parse, "edge list: expected i < j on line " + std::to_string(lineno));
        edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, std::string("edge list: ") + e.what());
    }
}

inline void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    write_edge_list(out, g);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return read_edge_list(in);
}

}  // namespace centsel

#endif  // CENTSEL_GRAPH_HPP

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mpmrf {

/// Vertex label, 1-based.
using Vertex = int;

/// Undirected edge stored with first < second.
struct Edge {
    Vertex first = 0;
    Vertex second = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : first(a < b ? a : b), second(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

/// A free tree on the vertex set {1..d}.
///
/// Construction validates that the edge list spans a tree: exactly d-1
/// distinct edges, no self-loops, one connected component. Adjacency lists
/// are kept sorted so every traversal is deterministic.
class Tree {
public:
    Tree() : Tree(1, {}) {}
    Tree(int d, std::vector<Edge> edges);

    int size() const { return d_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(Vertex a, Vertex b) const;
    bool contains(Vertex v) const { return v >= 1 && v <= d_; }

    bool operator==(const Tree& other) const { return d_ == other.d_ && edges_ == other.edges_; }

    /// Returns an edge list like "1-2 2-3 3-4".
    std::string edge_string() const;

private:
    int d_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Rooted view of a tree: parent, children (ascending), descendants and a
/// pre-order listing where every parent precedes its children.
struct RootedTree {
    Tree tree;
    Vertex root = 0;
    std::vector<Vertex> parent;                  // index by vertex, 0 for the root
    std::vector<std::vector<Vertex>> children;   // index by vertex
    std::vector<std::vector<Vertex>> descendants;  // sorted, vertex itself excluded
    std::vector<Vertex> preorder;
    std::vector<int> depth;

    std::span<const Vertex> children_of(Vertex v) const { return children[v]; }
    const std::vector<Vertex>& dsc(Vertex v) const { return descendants[v]; }
};

RootedTree root_at(const Tree& tree, Vertex root);

/// Edge sequence of the unique path from `from` to `to`, oriented along the
/// walk (each pair is (previous, next)). Empty when from == to.
std::vector<std::pair<Vertex, Vertex>> path(const Tree& tree, Vertex from, Vertex to);

/// Number of edges on the path between every pair; result[u][w], 1-based.
std::vector<std::vector<int>> distance_matrix(const Tree& tree);

/// A subtree with its original vertex labels. `tree` is relabeled 1..k in
/// increasing order of the original labels; labels[i-1] gives the original
/// label of local vertex i.
struct LabeledSubtree {
    Tree tree;
    std::vector<Vertex> labels;

    Vertex local(Vertex original) const;
    Vertex original(Vertex local_vertex) const { return labels.at(local_vertex - 1); }
};

struct PruneResult {
    LabeledSubtree residual;  // component containing v
    LabeledSubtree detached;  // component containing u
};

/// Deletes edge (u, v) and returns both components.
PruneResult prune(const Tree& tree, Vertex u, Vertex v);

/// Decreasingly ordered degree sequence.
std::vector<int> degree_vector(const Tree& tree);

/// Isomorphism-class identifier of a free tree.
///
/// The code is the canonical level sequence of the tree rooted at its center.
/// Children are ordered by decreasing sub-sequence; for a bicentral tree the
/// lexicographically smaller of the two center rootings is kept. Each byte is
/// a depth, so trees of radius above 255 are rejected.
struct ShapeCode {
    std::vector<std::uint8_t> bytes;

    auto operator<=>(const ShapeCode&) const = default;

    std::string hex() const;
    static ShapeCode from_hex(const std::string& text);
};

ShapeCode canonical_code(const Tree& tree);

/// Rebuilds a representative tree from a canonical code. Vertices are
/// numbered in level-sequence order, so vertex 1 is a center.
Tree tree_from_code(const ShapeCode& code);

/// One representative per isomorphism class of free trees with d vertices,
/// ordered by ShapeCode. Representatives are built with tree_from_code.
std::vector<Tree> enumerate_shapes(int d);

inline constexpr int kMaxEnumerationSize = 12;

/// Convenience builders used by tests, corollary chains and the CLI.
Tree path_tree(int d);
Tree star_tree(int d);

/// Attaches `extra` to `tree`, relabeling extra's vertex i as offset + i and
/// connecting anchor (in tree) to extra_anchor (in extra).
Tree graft(const Tree& tree, Vertex anchor, const Tree& extra, Vertex extra_anchor);

/// Returns a copy with edge (u, from) replaced by (u, to).
Tree move_edge(const Tree& tree, Vertex u, Vertex from, Vertex to);

/// Adds a new vertex d+1 connected to v.
Tree add_leaf(const Tree& tree, Vertex v);

/// Applies a permutation of labels: new label of vertex v is perm[v-1].
Tree relabel(const Tree& tree, std::span<const Vertex> perm);

}  // namespace mpmrf

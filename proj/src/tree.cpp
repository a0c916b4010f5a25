#include "mpmrf/tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "mpmrf/error.hpp"

namespace mpmrf {

namespace {

void require_vertex(const Tree& tree, Vertex v, const char* what) {
    if (!tree.contains(v)) {
        throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " not in 1.." +
                         std::to_string(tree.size()));
    }
}

// Vertices of the component containing `start` once edge (start, blocked) is removed.
std::vector<Vertex> component_without_edge(const Tree& tree, Vertex start, Vertex blocked) {
    std::vector<char> seen(tree.size() + 1, 0);
    std::vector<Vertex> out{start};
    seen[start] = 1;
    seen[blocked] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (Vertex n : tree.neighbors(out[i])) {
            if (!seen[n]) {
                seen[n] = 1;
                out.push_back(n);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

LabeledSubtree induced(const Tree& tree, std::vector<Vertex> labels) {
    std::vector<Vertex> local(tree.size() + 1, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) local[labels[i]] = static_cast<Vertex>(i + 1);
    std::vector<Edge> edges;
    for (const Edge& e : tree.edges()) {
        if (local[e.first] && local[e.second]) edges.emplace_back(local[e.first], local[e.second]);
    }
    return {Tree(static_cast<int>(labels.size()), std::move(edges)), std::move(labels)};
}

using Sequence = std::vector<std::uint8_t>;

// Canonical level sequence of the subtree hanging at v (away from parent).
Sequence level_sequence(const Tree& tree, Vertex v, Vertex parent, int depth) {
    if (depth > 255) throw InputError("canonical_code: tree radius exceeds 255");
    std::vector<Sequence> subs;
    for (Vertex c : tree.neighbors(v)) {
        if (c != parent) subs.push_back(level_sequence(tree, c, v, depth + 1));
    }
    std::sort(subs.begin(), subs.end(), std::greater<>());
    Sequence out{static_cast<std::uint8_t>(depth)};
    for (const auto& s : subs) out.insert(out.end(), s.begin(), s.end());
    return out;
}

std::vector<Vertex> centers(const Tree& tree) {
    const int d = tree.size();
    if (d <= 2) {
        std::vector<Vertex> all(d);
        std::iota(all.begin(), all.end(), 1);
        return all;
    }
    std::vector<int> deg(d + 1);
    std::vector<Vertex> layer;
    for (Vertex v = 1; v <= d; ++v) {
        deg[v] = tree.degree(v);
        if (deg[v] == 1) layer.push_back(v);
    }
    int remaining = d;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<Vertex> next;
        for (Vertex leaf : layer) {
            deg[leaf] = 0;
            for (Vertex n : tree.neighbors(leaf)) {
                if (deg[n] > 0 && --deg[n] == 1) next.push_back(n);
            }
        }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

}  // namespace

Tree::Tree(int d, std::vector<Edge> edges) : d_(d), edges_(std::move(edges)) {
    if (d < 1) throw InputError("tree: vertex count must be at least 1");
    if (static_cast<int>(edges_.size()) != d - 1) {
        throw InputError("tree: expected " + std::to_string(d - 1) + " edges, got " +
                         std::to_string(edges_.size()));
    }
    std::sort(edges_.begin(), edges_.end());
    adj_.assign(d + 1, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.first < 1 || e.second > d) throw InputError("tree: edge endpoint out of range");
        if (e.first == e.second) throw InputError("tree: self-loop at vertex " + std::to_string(e.first));
        if (i > 0 && edges_[i - 1] == e) {
            throw InputError("tree: duplicate edge " + std::to_string(e.first) + "-" + std::to_string(e.second));
        }
        adj_[e.first].push_back(e.second);
        adj_[e.second].push_back(e.first);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    std::vector<char> seen(d + 1, 0);
    std::vector<Vertex> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex n : adj_[v]) {
            if (!seen[n]) {
                seen[n] = 1;
                ++count;
                stack.push_back(n);
            }
        }
    }
    if (count != d) throw InputError("tree: edge list is not connected");
}

std::span<const Vertex> Tree::neighbors(Vertex v) const {
    if (!contains(v)) throw InputError("tree: vertex " + std::to_string(v) + " out of range");
    return adj_[v];
}

bool Tree::has_edge(Vertex a, Vertex b) const {
    if (!contains(a) || !contains(b)) return false;
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::string Tree::edge_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (i) os << ' ';
        os << edges_[i].first << '-' << edges_[i].second;
    }
    return os.str();
}

RootedTree root_at(const Tree& tree, Vertex root) {
    require_vertex(tree, root, "root_at");
    const int d = tree.size();
    RootedTree rt;
    rt.tree = tree;
    rt.root = root;
    rt.parent.assign(d + 1, 0);
    rt.children.assign(d + 1, {});
    rt.descendants.assign(d + 1, {});
    rt.depth.assign(d + 1, 0);
    rt.preorder.reserve(d);

    // Depth-first so that each subtree is contiguous in the pre-order.
    std::vector<Vertex> stack{root};
    std::vector<char> seen(d + 1, 0);
    seen[root] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        rt.preorder.push_back(v);
        auto nb = tree.neighbors(v);
        for (Vertex c : nb) {
            if (!seen[c]) {
                seen[c] = 1;
                rt.parent[c] = v;
                rt.depth[c] = rt.depth[v] + 1;
                rt.children[v].push_back(c);
            }
        }
        for (auto it = rt.children[v].rbegin(); it != rt.children[v].rend(); ++it) stack.push_back(*it);
    }
    for (auto it = rt.preorder.rbegin(); it != rt.preorder.rend(); ++it) {
        Vertex v = *it;
        auto& dsc = rt.descendants[v];
        for (Vertex c : rt.children[v]) {
            dsc.push_back(c);
            dsc.insert(dsc.end(), rt.descendants[c].begin(), rt.descendants[c].end());
        }
        std::sort(dsc.begin(), dsc.end());
    }
    return rt;
}

std::vector<std::pair<Vertex, Vertex>> path(const Tree& tree, Vertex from, Vertex to) {
    require_vertex(tree, from, "path");
    require_vertex(tree, to, "path");
    const RootedTree rt = root_at(tree, from);
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex v = to; v != from; v = rt.parent[v]) out.emplace_back(rt.parent[v], v);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> distance_matrix(const Tree& tree) {
    const int d = tree.size();
    std::vector<std::vector<int>> dist(d + 1, std::vector<int>(d + 1, 0));
    for (Vertex s = 1; s <= d; ++s) {
        std::deque<Vertex> queue{s};
        std::vector<char> seen(d + 1, 0);
        seen[s] = 1;
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex n : tree.neighbors(v)) {
                if (!seen[n]) {
                    seen[n] = 1;
                    dist[s][n] = dist[s][v] + 1;
                    queue.push_back(n);
                }
            }
        }
    }
    return dist;
}

Vertex LabeledSubtree::local(Vertex original) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), original);
    if (it == labels.end() || *it != original) {
        throw InputError("subtree: vertex " + std::to_string(original) + " not in subtree");
    }
    return static_cast<Vertex>(it - labels.begin() + 1);
}

PruneResult prune(const Tree& tree, Vertex u, Vertex v) {
    require_vertex(tree, u, "prune");
    require_vertex(tree, v, "prune");
    if (!tree.has_edge(u, v)) {
        throw InputError("prune: (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    }
    auto detached = component_without_edge(tree, u, v);
    auto residual = component_without_edge(tree, v, u);
    return {induced(tree, std::move(residual)), induced(tree, std::move(detached))};
}

std::vector<int> degree_vector(const Tree& tree) {
    std::vector<int> out;
    out.reserve(tree.size());
    for (Vertex v = 1; v <= tree.size(); ++v) out.push_back(tree.degree(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::string ShapeCode::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

ShapeCode ShapeCode::from_hex(const std::string& text) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw InputError("shape code: invalid hex digit");
    };
    if (text.size() % 2 != 0 || text.empty()) throw InputError("shape code: odd or empty hex string");
    ShapeCode code;
    for (std::size_t i = 0; i < text.size(); i += 2) {
        code.bytes.push_back(static_cast<std::uint8_t>(nibble(text[i]) * 16 + nibble(text[i + 1])));
    }
    return code;
}

ShapeCode canonical_code(const Tree& tree) {
    ShapeCode best;
    for (Vertex c : centers(tree)) {
        Sequence s = level_sequence(tree, c, 0, 0);
        if (best.bytes.empty() || s < best.bytes) best.bytes = std::move(s);
    }
    return best;
}

Tree tree_from_code(const ShapeCode& code) {
    const auto& seq = code.bytes;
    if (seq.empty() || seq[0] != 0) throw InputError("shape code: must start with depth 0");
    std::vector<Edge> edges;
    std::vector<Vertex> last_at_depth{1};
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const int depth = seq[i];
        if (depth < 1 || depth > static_cast<int>(last_at_depth.size())) {
            throw InputError("shape code: invalid level sequence");
        }
        const Vertex v = static_cast<Vertex>(i + 1);
        edges.emplace_back(last_at_depth[depth - 1], v);
        last_at_depth.resize(depth);
        last_at_depth.push_back(v);
    }
    return Tree(static_cast<int>(seq.size()), std::move(edges));
}

std::vector<Tree> enumerate_shapes(int d) {
    if (d < 1 || d > kMaxEnumerationSize) {
        throw InputError("enumerate_shapes: d must be in 1.." + std::to_string(kMaxEnumerationSize));
    }
    std::set<ShapeCode> codes{canonical_code(Tree())};
    for (int n = 2; n <= d; ++n) {
        std::set<ShapeCode> next;
        for (const ShapeCode& code : codes) {
            const Tree base = tree_from_code(code);
            for (Vertex v = 1; v <= base.size(); ++v) next.insert(canonical_code(add_leaf(base, v)));
        }
        codes = std::move(next);
    }
    std::vector<Tree> out;
    out.reserve(codes.size());
    for (const ShapeCode& code : codes) out.push_back(tree_from_code(code));
    return out;
}

Tree path_tree(int d) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < d; ++v) edges.emplace_back(v, v + 1);
    return Tree(d, std::move(edges));
}

Tree star_tree(int d) {
    std::vector<Edge> edges;
    for (Vertex v = 2; v <= d; ++v) edges.emplace_back(1, v);
    return Tree(d, std::move(edges));
}

Tree graft(const Tree& tree, Vertex anchor, const Tree& extra, Vertex extra_anchor) {
    require_vertex(tree, anchor, "graft");
    require_vertex(extra, extra_anchor, "graft");
    const int offset = tree.size();
    std::vector<Edge> edges = tree.edges();
    for (const Edge& e : extra.edges()) edges.emplace_back(e.first + offset, e.second + offset);
    edges.emplace_back(anchor, extra_anchor + offset);
    return Tree(offset + extra.size(), std::move(edges));
}

Tree move_edge(const Tree& tree, Vertex u, Vertex from, Vertex to) {
    if (!tree.has_edge(u, from)) throw InputError("move_edge: (u, from) is not an edge");
    std::vector<Edge> edges;
    edges.reserve(tree.edges().size());
    for (const Edge& e : tree.edges()) {
        if (e != Edge(u, from)) edges.push_back(e);
    }
    edges.emplace_back(u, to);
    return Tree(tree.size(), std::move(edges));
}

Tree add_leaf(const Tree& tree, Vertex v) {
    require_vertex(tree, v, "add_leaf");
    std::vector<Edge> edges = tree.edges();
    edges.emplace_back(v, tree.size() + 1);
    return Tree(tree.size() + 1, std::move(edges));
}

Tree relabel(const Tree& tree, std::span<const Vertex> perm) {
    if (static_cast<int>(perm.size()) != tree.size()) throw InputError("relabel: permutation size mismatch");
    std::vector<Edge> edges;
    for (const Edge& e : tree.edges()) edges.emplace_back(perm[e.first - 1], perm[e.second - 1]);
    return Tree(tree.size(), std::move(edges));
}

}  // namespace mpmrf

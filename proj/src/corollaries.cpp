#include <string>

#include "mpmrf/error.hpp"
#include "mpmrf/poset.hpp"

namespace mpmrf {

namespace {

// Star-to-series: T<k> is the path 1..k+1 with vertex 1 also joined to
// k+2..d. T<1> is the star, T<d-2> the path.
std::vector<OrderedPair> star_to_series(const CorollaryParams& p) {
    if (p.d < 4) throw InputError("star_to_series needs d >= 4");
    auto build = [&](int k) {
        std::vector<Edge> edges;
        for (Vertex v = 1; v <= k; ++v) edges.emplace_back(v, v + 1);
        for (Vertex v = k + 2; v <= p.d; ++v) edges.emplace_back(1, v);
        return Tree(p.d, std::move(edges));
    };
    std::vector<OrderedPair> out;
    for (int k = 1; k <= p.d - 3; ++k) out.push_back({build(k + 1), build(k)});
    return out;
}

// Ray tool: vertex w = 1 carries the given subtrees and d_ray single
// vertices r_1..r_d_ray. T^(k) chains r_1..r_k into a series hung from w.
std::vector<OrderedPair> ray_tool(const CorollaryParams& p) {
    if (p.d_ray < 3) throw InputError("ray_tool needs d_ray >= 3");
    Tree base;
    for (const Tree& sub : p.subtrees) base = graft(base, 1, sub, 1);
    const int offset = base.size();
    const int d = offset + p.d_ray;
    if (d < 4) throw InputError("ray_tool needs d >= 4");
    auto build = [&](int k) {
        std::vector<Edge> edges = base.edges();
        for (int i = 1; i <= p.d_ray; ++i) {
            const Vertex r = offset + i;
            edges.emplace_back(i <= k && i > 1 ? r - 1 : 1, r);
        }
        return Tree(d, std::move(edges));
    };
    std::vector<OrderedPair> out;
    for (int k = 1; k <= p.d_ray - 2; ++k) out.push_back({build(k + 1), build(k)});
    return out;
}

// Series slide: series l_1..l_dse labeled 1..d_se; tau anchored at l_k.
std::vector<OrderedPair> series_slide(const CorollaryParams& p) {
    if (p.d_se < 3) throw InputError("series_slide needs d_se >= 3");
    if (p.subtrees.size() != 1) throw InputError("series_slide needs exactly one subtree tau");
    const Tree& tau = p.subtrees.front();
    if (!tau.contains(p.tau_anchor)) throw InputError("series_slide: tau_anchor not in tau");
    const Tree series = path_tree(p.d_se);
    auto build = [&](int k) { return graft(series, k, tau, p.tau_anchor); };
    std::vector<OrderedPair> out;
    for (int k = 1; k < p.d_se / 2; ++k) out.push_back({build(k), build(k + 1)});
    return out;
}

// Beam balance: beam l_1..l_dbeam labeled 1..d_beam, mirrored subtrees, then
// moving vertices x_1..x_dray; x_1..x_m sit at l_1, the rest at l_dbeam.
std::vector<OrderedPair> beam_balance(const CorollaryParams& p) {
    if (p.d_beam < 2) throw InputError("beam_balance needs d_beam >= 2");
    if (p.d_ray < 2) throw InputError("beam_balance needs d_ray >= 2");
    if (p.positions.size() != p.subtrees.size()) throw InputError("beam_balance: one position per subtree");
    Tree base = path_tree(p.d_beam);
    for (std::size_t i = 0; i < p.subtrees.size(); ++i) {
        const int k = p.positions[i];
        if (k < 1 || k > p.d_beam / 2) throw InputError("beam_balance: position outside 1..floor(d_beam/2)");
        base = graft(base, k, p.subtrees[i], 1);
        base = graft(base, p.d_beam + 1 - k, p.subtrees[i], 1);
    }
    const int offset = base.size();
    const int d = offset + p.d_ray;
    if (d < 4) throw InputError("beam_balance needs d >= 4");
    auto build = [&](int m) {
        std::vector<Edge> edges = base.edges();
        for (int i = 1; i <= p.d_ray; ++i) edges.emplace_back(i <= m ? 1 : p.d_beam, offset + i);
        return Tree(d, std::move(edges));
    };
    std::vector<OrderedPair> out;
    for (int m = (p.d_ray + 1) / 2; m < p.d_ray; ++m) out.push_back({build(m), build(m + 1)});
    return out;
}

}  // namespace

std::vector<OrderedPair> corollary_chain(CorollaryKind kind, const CorollaryParams& params) {
    switch (kind) {
        case CorollaryKind::StarToSeries: return star_to_series(params);
        case CorollaryKind::RayTool: return ray_tool(params);
        case CorollaryKind::SeriesSlide: return series_slide(params);
        case CorollaryKind::BeamBalance: return beam_balance(params);
    }
    throw InputError("unknown corollary kind");
}

CorollaryKind parse_corollary_kind(const std::string& name) {
    if (name == "star_to_series") return CorollaryKind::StarToSeries;
    if (name == "ray_tool") return CorollaryKind::RayTool;
    if (name == "series_slide") return CorollaryKind::SeriesSlide;
    if (name == "beam_balance") return CorollaryKind::BeamBalance;
    throw InputError("unknown corollary kind '" + name + "'");
}

}  // namespace mpmrf

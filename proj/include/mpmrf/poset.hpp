#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpmrf/orders.hpp"
#include "mpmrf/tree.hpp"

namespace mpmrf {

/// A tree reachable by one re-anchoring, with the move that produces it.
struct Neighbor {
    Tree tree;
    Move move;
};

/// Every re-anchoring of `tree`: for each edge (u, v) in both orientations,
/// the u-side is detached and u reattached to each w != v of the v-side.
std::vector<Neighbor> all_single_moves(const Tree& tree);

/// all_single_moves filtered to one representative per resulting shape,
/// excluding the shape of `tree` itself. Requires d >= 3.
std::vector<Neighbor> single_move_neighbors(const Tree& tree);

/// Single-move pair whose criterion verdict changed across the alpha grid.
struct GridFlag {
    int from = 0;  // shape index of the moved tree
    int to = 0;    // shape index of the result
    Move move;
    std::vector<Relation> verdicts;  // one per grid point
};

/// Shapes of d vertices ordered by the shape criterion.
///
/// relation[i][j] means shapes[i] precedes shapes[j]; it is the reflexive
/// transitive closure of the arcs certified unanimously over the grid.
struct ShapePoset {
    int d = 0;
    double lambda = 1.0;
    std::vector<double> alpha_grid;
    std::vector<Tree> shapes;
    std::vector<ShapeCode> codes;
    std::vector<std::vector<char>> relation;
    std::vector<std::pair<int, int>> arcs;   // certified (i, j), i precedes j, sorted
    std::vector<std::pair<int, int>> hasse;  // transitive reduction, sorted
    std::vector<GridFlag> flags;
    /// Shape pairs (i < j) related by at least one move where no move
    /// between them is certified in either direction.
    std::vector<std::pair<int, int>> undecided;

    int size() const { return static_cast<int>(shapes.size()); }
    bool leq(int i, int j) const { return relation[i][j] != 0; }
    /// Index of the shape isomorphic to `tree`; -1 if sizes differ.
    int index_of(const Tree& tree) const;
};

inline constexpr int kPosetMinSize = 4;
inline constexpr int kPosetMaxSize = 9;

/// {0.05, 0.1, 0.2, ..., 0.9, 0.95}.
std::vector<double> default_alpha_grid();

/// Builds the poset for 4 <= d <= 9. Throws NumericalError when the closure
/// is not antisymmetric or two distinct shapes share an aggregate pmf at
/// alpha = 0.5.
ShapePoset build_poset(int d, const std::vector<double>& alpha_grid = default_alpha_grid(), double lambda = 1.0);

/// Transitive reduction of a reflexive transitive relation; pairs (i, j) with i preceding j.
std::vector<std::pair<int, int>> transitive_reduction(const std::vector<std::vector<char>>& relation);

std::vector<int> minimal_elements(const ShapePoset& poset);
std::vector<int> maximal_elements(const ShapePoset& poset);

struct LatticeReport {
    bool is_lattice = true;
    /// First pair (by index) lacking a unique least upper or greatest lower bound.
    std::optional<std::pair<int, int>> witness;
    std::vector<int> witness_bounds;  // the minimal upper (or maximal lower) bounds
    bool witness_is_join = true;
};

LatticeReport lattice_check(const ShapePoset& poset);

/// DOT digraph drawn bottom-to-top; nodes carry the hex shape code as label
/// and the edge list of the representative as tooltip.
std::string hasse_dot(const ShapePoset& poset);

// Corollary chains --------------------------------------------------------

enum class CorollaryKind { StarToSeries, RayTool, SeriesSlide, BeamBalance };

struct CorollaryParams {
    int d = 0;       // star_to_series: vertex count
    int d_ray = 0;   // ray_tool, beam_balance: number of moving vertices
    int d_se = 0;    // series_slide: series length
    int d_beam = 0;  // beam_balance: beam length
    /// ray_tool: subtrees hung from w by their vertex 1.
    /// series_slide: subtrees[0] is the slid subtree tau.
    /// beam_balance: each subtree is attached at l_k and mirrored at
    /// l_{d_beam+1-k}, with k from `positions`.
    std::vector<Tree> subtrees;
    std::vector<int> positions;
    Vertex tau_anchor = 1;  // series_slide: vertex of tau joined to the series
};

/// Ordered pair (lower, upper): lower precedes upper, and upper is lower
/// with one re-anchoring.
struct OrderedPair {
    Tree lower;
    Tree upper;
};

std::vector<OrderedPair> corollary_chain(CorollaryKind kind, const CorollaryParams& params);

/// Parses "star_to_series", "ray_tool", "series_slide" or "beam_balance".
CorollaryKind parse_corollary_kind(const std::string& name);

}  // namespace mpmrf

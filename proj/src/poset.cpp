#include "mpmrf/poset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "mpmrf/error.hpp"
#include "mpmrf/model.hpp"

namespace mpmrf {

std::vector<Neighbor> all_single_moves(const Tree& tree) {
    std::vector<Neighbor> out;
    for (const Edge& e : tree.edges()) {
        for (const auto& [u, v] : {std::pair{e.first, e.second}, std::pair{e.second, e.first}}) {
            const PruneResult parts = prune(tree, u, v);
            for (Vertex w : parts.residual.labels) {
                if (w == v) continue;
                out.push_back({move_edge(tree, u, v, w), Move{u, v, w}});
            }
        }
    }
    return out;
}

std::vector<Neighbor> single_move_neighbors(const Tree& tree) {
    if (tree.size() < 3) throw InputError("single_move_neighbors needs d >= 3");
    const ShapeCode own = canonical_code(tree);
    std::set<ShapeCode> seen{own};
    std::vector<Neighbor> out;
    for (Neighbor& nb : all_single_moves(tree)) {
        if (seen.insert(canonical_code(nb.tree)).second) out.push_back(std::move(nb));
    }
    return out;
}

int ShapePoset::index_of(const Tree& tree) const {
    if (tree.size() != d) return -1;
    const ShapeCode code = canonical_code(tree);
    const auto it = std::lower_bound(codes.begin(), codes.end(), code);
    if (it == codes.end() || *it != code) return -1;
    return static_cast<int>(it - codes.begin());
}

std::vector<double> default_alpha_grid() {
    return {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
}

std::vector<std::pair<int, int>> transitive_reduction(const std::vector<std::vector<char>>& relation) {
    const int n = static_cast<int>(relation.size());
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || !relation[i][j]) continue;
            bool covered = true;
            for (int k = 0; k < n && covered; ++k) {
                if (k != i && k != j && relation[i][k] && relation[k][j]) covered = false;
            }
            if (covered) out.emplace_back(i, j);
        }
    }
    return out;
}

namespace {

void check_distinct_aggregates(const ShapePoset& poset) {
    std::vector<std::vector<double>> pmfs;
    for (const Tree& t : poset.shapes) pmfs.push_back(aggregate_dist(MpmrfModel(t, poset.lambda, 0.5)).pmf);
    for (int i = 0; i < poset.size(); ++i) {
        for (int j = i + 1; j < poset.size(); ++j) {
            const std::size_t n = std::max(pmfs[i].size(), pmfs[j].size());
            double diff = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double a = k < pmfs[i].size() ? pmfs[i][k] : 0.0;
                const double b = k < pmfs[j].size() ? pmfs[j][k] : 0.0;
                diff = std::max(diff, std::abs(a - b));
            }
            if (diff <= 1e-13) {
                throw NumericalError("shapes " + poset.codes[i].hex() + " and " + poset.codes[j].hex() +
                                     " share an aggregate pmf at alpha = 0.5");
            }
        }
    }
}

}  // namespace

ShapePoset build_poset(int d, const std::vector<double>& alpha_grid, double lambda) {
    if (d < kPosetMinSize || d > kPosetMaxSize) {
        throw InputError("poset size d = " + std::to_string(d) + " outside the validated range 4..9");
    }
    if (alpha_grid.empty()) throw InputError("alpha grid is empty");
    for (double a : alpha_grid) {
        if (!(a > 0.0 && a < 1.0)) throw InputError("alpha grid values must lie in (0, 1)");
    }
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");

    ShapePoset poset;
    poset.d = d;
    poset.lambda = lambda;
    poset.alpha_grid = alpha_grid;
    poset.shapes = enumerate_shapes(d);
    for (const Tree& t : poset.shapes) poset.codes.push_back(canonical_code(t));
    const int n = poset.size();

    std::set<std::pair<int, int>> arcs;
    std::map<std::pair<int, int>, bool> decided;  // unordered shape pair -> some move certified
    for (int i = 0; i < n; ++i) {
        for (const Neighbor& nb : all_single_moves(poset.shapes[i])) {
            const int j = poset.index_of(nb.tree);
            if (j == i) continue;
            bool le_all = true;
            bool ge_all = true;
            std::vector<Relation> verdicts;
            for (double a : alpha_grid) {
                const OrderVerdict v = shape_compare_move(poset.shapes[i], nb.move, a);
                verdicts.push_back(v.relation);
                le_all = le_all && v.le();
                ge_all = ge_all && v.ge();
            }
            if (le_all) arcs.emplace(i, j);
            if (ge_all) arcs.emplace(j, i);
            if (std::any_of(verdicts.begin(), verdicts.end(), [&](Relation r) { return r != verdicts.front(); })) {
                poset.flags.push_back({i, j, nb.move, verdicts});
            }
            bool& flag = decided[{std::min(i, j), std::max(i, j)}];
            flag = flag || le_all || ge_all;
        }
    }
    poset.arcs.assign(arcs.begin(), arcs.end());
    for (const auto& [pair, ok] : decided) {
        if (!ok) poset.undecided.push_back(pair);
    }

    poset.relation.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) poset.relation[i][i] = 1;
    for (const auto& [i, j] : poset.arcs) poset.relation[i][j] = 1;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (!poset.relation[i][k]) continue;
            for (int j = 0; j < n; ++j) {
                if (poset.relation[k][j]) poset.relation[i][j] = 1;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (poset.relation[i][j] && poset.relation[j][i]) {
                throw NumericalError("antisymmetry fails between shapes " + poset.codes[i].hex() + " and " +
                                     poset.codes[j].hex());
            }
        }
    }
    check_distinct_aggregates(poset);
    poset.hasse = transitive_reduction(poset.relation);
    return poset;
}

std::vector<int> minimal_elements(const ShapePoset& poset) {
    std::vector<int> out;
    for (int i = 0; i < poset.size(); ++i) {
        bool minimal = true;
        for (int j = 0; j < poset.size() && minimal; ++j) minimal = (j == i) || !poset.leq(j, i);
        if (minimal) out.push_back(i);
    }
    return out;
}

std::vector<int> maximal_elements(const ShapePoset& poset) {
    std::vector<int> out;
    for (int i = 0; i < poset.size(); ++i) {
        bool maximal = true;
        for (int j = 0; j < poset.size() && maximal; ++j) maximal = (j == i) || !poset.leq(i, j);
        if (maximal) out.push_back(i);
    }
    return out;
}

LatticeReport lattice_check(const ShapePoset& poset) {
    const int n = poset.size();
    LatticeReport report;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (bool join : {true, false}) {
                std::vector<int> bounds;
                for (int k = 0; k < n; ++k) {
                    const bool is_bound = join ? (poset.leq(i, k) && poset.leq(j, k)) : (poset.leq(k, i) && poset.leq(k, j));
                    if (is_bound) bounds.push_back(k);
                }
                std::vector<int> extreme;
                for (int k : bounds) {
                    bool best = true;
                    for (int m : bounds) {
                        if (m != k && (join ? poset.leq(m, k) : poset.leq(k, m))) best = false;
                    }
                    if (best) extreme.push_back(k);
                }
                if (extreme.size() != 1) {
                    report.is_lattice = false;
                    report.witness = std::pair{i, j};
                    report.witness_bounds = extreme;
                    report.witness_is_join = join;
                    return report;
                }
            }
        }
    }
    return report;
}

std::string hasse_dot(const ShapePoset& poset) {
    std::ostringstream out;
    out << "digraph shapes_d" << poset.d << " {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (int i = 0; i < poset.size(); ++i) {
        out << "  s" << i << " [label=\"" << poset.codes[i].hex() << "\", tooltip=\""
            << poset.shapes[i].edge_string() << "\"];\n";
    }
    for (const auto& [i, j] : poset.hasse) out << "  s" << i << " -> s" << j << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace mpmrf

#include "mpmrf/orders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpmrf/error.hpp"

namespace mpmrf {

namespace {

OrderVerdict combine(std::optional<int> fail_le, std::optional<int> fail_ge) {
    OrderVerdict out;
    out.witness_le = fail_le;
    out.witness_ge = fail_ge;
    if (!fail_le && !fail_ge) {
        out.relation = Relation::EQ;
    } else if (!fail_le) {
        out.relation = Relation::LE;
    } else if (!fail_ge) {
        out.relation = Relation::GE;
    } else {
        out.relation = Relation::INCOMPARABLE;
    }
    return out;
}

}  // namespace

std::string to_string(Relation r) {
    switch (r) {
        case Relation::LE: return "LE";
        case Relation::GE: return "GE";
        case Relation::EQ: return "EQ";
        case Relation::INCOMPARABLE: return "INCOMPARABLE";
    }
    return "INCOMPARABLE";
}

OrderVerdict st_compare(const DiscreteDist& a, const DiscreteDist& b, double tol) {
    const int top = std::max(a.support_bound(), b.support_bound());
    std::optional<int> fail_le;
    std::optional<int> fail_ge;
    double Fa = 0.0;
    double Fb = 0.0;
    for (int k = 0; k <= top; ++k) {
        Fa += a.p(k);
        Fb += b.p(k);
        if (!fail_le && Fa < Fb - tol) fail_le = k;
        if (!fail_ge && Fb < Fa - tol) fail_ge = k;
    }
    return combine(fail_le, fail_ge);
}

OrderVerdict synecdochic_compare(const MpmrfModel& model, Vertex v, Vertex w, double tol) {
    if (v == w) throw InputError("synecdochic_compare needs two distinct vertices");
    return st_compare(h_dist(model, v), h_dist(model, w), tol);
}

Move identify_move(const Tree& t1, const Tree& t2) {
    if (t1.size() != t2.size()) throw InputError("trees have different vertex counts");
    std::vector<Edge> only1;
    std::vector<Edge> only2;
    std::set_difference(t1.edges().begin(), t1.edges().end(), t2.edges().begin(), t2.edges().end(),
                        std::back_inserter(only1));
    std::set_difference(t2.edges().begin(), t2.edges().end(), t1.edges().begin(), t1.edges().end(),
                        std::back_inserter(only2));
    if (only1.empty()) throw InputError("trees are identical");
    if (only1.size() != 1 || only2.size() != 1) throw InputError("trees are not related by a single move");
    const Edge a = only1.front();
    const Edge b = only2.front();
    Move m;
    if (a.first == b.first || a.first == b.second) {
        m.u = a.first;
        m.v = a.second;
    } else if (a.second == b.first || a.second == b.second) {
        m.u = a.second;
        m.v = a.first;
    } else {
        throw InputError("trees are not related by a single move");
    }
    m.w = (b.first == m.u) ? b.second : b.first;
    return m;
}

OrderVerdict shape_compare_move(const Tree& t1, const Move& move, double alpha, double tol) {
    if (!t1.has_edge(move.u, move.v)) throw InputError("move does not start from an edge of the tree");
    const PruneResult parts = prune(t1, move.u, move.v);
    const LabeledSubtree& residual = parts.residual;
    const Vertex v = residual.local(move.v);
    const Vertex w = residual.local(move.w);
    if (v == w) throw InputError("move leaves the tree unchanged");
    const MpmrfModel model(residual.tree, 1.0, alpha);
    return st_compare(h_dist(model, v), h_dist(model, w), tol);
}

OrderVerdict shape_compare(const Tree& t1, const Tree& t2, double alpha, double lambda, double tol) {
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha outside [0, 1]");
    return shape_compare_move(t1, identify_move(t1, t2), alpha, tol);
}

OrderVerdict cx_check_empirical(const DiscreteDist& m1, const DiscreteDist& m2, double tol) {
    const double mean1 = m1.mean();
    const double mean2 = m2.mean();
    if (std::abs(mean1 - mean2) >= tol) {
        throw InputError("means differ (" + std::to_string(mean1) + " vs " + std::to_string(mean2) +
                         "); convex order is impossible");
    }
    const int top = std::max(m1.support_bound(), m2.support_bound());
    const std::vector<double> s1 = stop_loss_table(m1, top);
    const std::vector<double> s2 = stop_loss_table(m2, top);
    std::optional<int> fail_le;
    std::optional<int> fail_ge;
    for (int c = 0; c <= top; ++c) {
        if (!fail_le && s1[c] > s2[c] + tol) fail_le = c;
        if (!fail_ge && s2[c] > s1[c] + tol) fail_ge = c;
    }
    return combine(fail_le, fail_ge);
}

}  // namespace mpmrf

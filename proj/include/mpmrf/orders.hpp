#pragma once

#include <optional>
#include <string>

#include "mpmrf/distribution.hpp"
#include "mpmrf/model.hpp"
#include "mpmrf/tree.hpp"

namespace mpmrf {

enum class Relation { LE, GE, EQ, INCOMPARABLE };

std::string to_string(Relation r);

/// Outcome of an order test between a and b. LE reads "a precedes b".
/// witness_le is the first point where "a precedes b" fails, witness_ge the
/// first point where "b precedes a" fails.
struct OrderVerdict {
    Relation relation = Relation::INCOMPARABLE;
    std::optional<int> witness_le;
    std::optional<int> witness_ge;

    bool le() const { return relation == Relation::LE || relation == Relation::EQ; }
    bool ge() const { return relation == Relation::GE || relation == Relation::EQ; }
};

inline constexpr double kCdfTol = 1e-12;
inline constexpr double kMeanTol = 1e-8;

/// Usual stochastic order: a <=_st b iff F_a(k) >= F_b(k) - tol for all k.
OrderVerdict st_compare(const DiscreteDist& a, const DiscreteDist& b, double tol = kCdfTol);

/// Compares H_v^{T_v} with H_w^{T_w}. LE certifies that (N_v, M) is smaller
/// than (N_w, M) in supermodular order; INCOMPARABLE only means the
/// sufficient criterion does not apply.
OrderVerdict synecdochic_compare(const MpmrfModel& model, Vertex v, Vertex w, double tol = kCdfTol);

/// A single re-anchoring: t2 is t1 with edge (u, v) replaced by (u, w).
struct Move {
    Vertex u = 0;
    Vertex v = 0;
    Vertex w = 0;
};

/// Recovers the move relating two labeled trees on the same vertex set.
/// InputError if the trees are identical or differ by anything else.
Move identify_move(const Tree& t1, const Tree& t2);

/// Shape criterion for t1 and t2 = move_edge(t1, u, v, w) under a homogeneous
/// alpha: compares H_v with H_w on the residual tree left after pruning the
/// u-side of (u, v). LE certifies M(t1) <=_cx M(t2).
OrderVerdict shape_compare_move(const Tree& t1, const Move& move, double alpha, double tol = kCdfTol);
OrderVerdict shape_compare(const Tree& t1, const Tree& t2, double alpha, double lambda, double tol = kCdfTol);

/// Convex order via equal means and stop-loss dominance at every threshold
/// in the joint support. InputError if the means differ by more than tol.
OrderVerdict cx_check_empirical(const DiscreteDist& m1, const DiscreteDist& m2, double tol = kMeanTol);

}  // namespace mpmrf

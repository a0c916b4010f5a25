#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mpmrf/distribution.hpp"
#include "mpmrf/poly.hpp"
#include "mpmrf/tree.hpp"

namespace mpmrf {

inline constexpr double kDefaultTol = 1e-12;

/// Tree-structured Poisson MRF: every N_v ~ Poisson(lambda) and, rooted
/// anywhere, N_v = L_v + alpha_(pa(v),v) o N_pa(v) with binomial thinning.
class MpmrfModel {
public:
    /// Homogeneous dependence: every edge carries `alpha`.
    MpmrfModel(Tree tree, double lambda, double alpha);
    /// Per-edge dependence; the map must cover exactly the tree's edges.
    MpmrfModel(Tree tree, double lambda, std::map<Edge, double> alpha);

    const Tree& tree() const { return tree_; }
    int size() const { return tree_.size(); }
    double lambda() const { return lambda_; }
    double alpha(Vertex a, Vertex b) const;
    const std::map<Edge, double>& alphas() const { return alpha_; }
    /// The shared value when every edge carries the same alpha.
    std::optional<double> common_alpha() const;
    double alpha_sum() const;

private:
    Tree tree_;
    double lambda_;
    std::map<Edge, double> alpha_;
};

/// eta_v^{T_r}(t) for every v under the given rooting (index by vertex;
/// entry 0 unused).
std::vector<Poly> eta_all(const MpmrfModel& model, const RootedTree& rooted);

/// pgf of H_r^{T_r}: the total count generated by an event at r.
Poly h_pgf(const MpmrfModel& model, Vertex root);
DiscreteDist h_dist(const MpmrfModel& model, Vertex root);

/// Compound-Poisson representation of M under a rooting: rate
/// lambda * (d - sum alpha) and severity pmf on {1..d}.
struct CompoundPoisson {
    double rate = 0.0;
    std::vector<double> severity;  // severity[0] == 0
};
CompoundPoisson aggregate_compound(const MpmrfModel& model, Vertex root = 1);

/// Upper bound on P(M > k) from exp(rate (f(s) - 1) - (k + 1) log s),
/// minimized over a grid of s > 1.
double compound_tail_bound(const CompoundPoisson& cp, int k);

/// pmf of M = sum_v N_v on {0..K}, with K the first bound in the doubling
/// sequence whose tail bound drops below tol. Computed by Panjer recursion.
DiscreteDist aggregate_dist(const MpmrfModel& model, double tol = kDefaultTol, Vertex root = 1);

/// Panjer recursion for a compound Poisson law truncated at `support`.
std::vector<double> panjer_poisson(const CompoundPoisson& cp, int support);

/// Cov(N_v, M) = lambda * sum_j prod_{e in path(v,j)} alpha_e.
double cov_with_sum(const MpmrfModel& model, Vertex v);

/// Var(M) = sum_v Cov(N_v, M).
double aggregate_variance(const MpmrfModel& model);

struct AllocationTable {
    Vertex vertex = 0;
    std::vector<double> by_k;  // E[N_v 1{M = k}], k = 0..K

    double total() const;
    double cumulative(int k) const;
};

/// E[N_v 1{M=k}] = lambda * (p_{H_v^{T_v}} * p_M)(k) on the support of `aggregate`.
AllocationTable expected_allocation(const MpmrfModel& model, Vertex v, const DiscreteDist& aggregate);
AllocationTable expected_allocation(const MpmrfModel& model, Vertex v, double tol = kDefaultTol);

/// Euler TVaR contribution of N_v to M at level kappa:
/// (lambda - sum_{k<=q} a(k) + (F(q) - kappa) / p(q) * a(q)) / (1 - kappa).
double tvar_contribution(const MpmrfModel& model, const AllocationTable& alloc, const DiscreteDist& aggregate,
                         double kappa);
double tvar_contribution(const MpmrfModel& model, Vertex v, double kappa, double tol = kDefaultTol);

/// TVaR_kappa(M) with E[M] = d * lambda.
double aggregate_tvar(const MpmrfModel& model, const DiscreteDist& aggregate, double kappa);

struct Closeness {
    double freeman = 0.0;        // sum_j |path(v, j)|
    double exp_transform = 0.0;  // sum_j alpha^{|path(v, j)|}
};

/// Per-vertex closeness indices (index by vertex; entry 0 unused). Requires
/// a homogeneous alpha; InputError otherwise.
std::vector<Closeness> closeness_indices(const MpmrfModel& model);

}  // namespace mpmrf

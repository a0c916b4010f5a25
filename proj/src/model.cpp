#include "mpmrf/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mpmrf/error.hpp"

namespace mpmrf {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be a positive finite number");
}

void check_alpha(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("alpha " + std::to_string(a) + " outside [0, 1]");
}

void check_vertex(const MpmrfModel& model, Vertex v) {
    if (!model.tree().contains(v)) throw InputError("vertex " + std::to_string(v) + " not in tree");
}

// Rates above this are split before the Panjer start value e^{-rate}
// underflows.
constexpr double kMaxPanjerRate = 500.0;

}  // namespace

MpmrfModel::MpmrfModel(Tree tree, double lambda, double alpha) : tree_(std::move(tree)), lambda_(lambda) {
    check_lambda(lambda);
    check_alpha(alpha);
    for (const Edge& e : tree_.edges()) alpha_[e] = alpha;
}

MpmrfModel::MpmrfModel(Tree tree, double lambda, std::map<Edge, double> alpha)
    : tree_(std::move(tree)), lambda_(lambda), alpha_(std::move(alpha)) {
    check_lambda(lambda);
    if (alpha_.size() != tree_.edges().size()) throw InputError("alpha must be given for exactly the tree's edges");
    for (const Edge& e : tree_.edges()) {
        auto it = alpha_.find(e);
        if (it == alpha_.end()) {
            throw InputError("missing alpha for edge " + std::to_string(e.first) + "-" + std::to_string(e.second));
        }
        check_alpha(it->second);
    }
}

double MpmrfModel::alpha(Vertex a, Vertex b) const {
    auto it = alpha_.find(Edge(a, b));
    if (it == alpha_.end()) throw InputError("no edge " + std::to_string(a) + "-" + std::to_string(b));
    return it->second;
}

std::optional<double> MpmrfModel::common_alpha() const {
    if (alpha_.empty()) return std::nullopt;
    const double first = alpha_.begin()->second;
    for (const auto& [e, a] : alpha_) {
        if (a != first) return std::nullopt;
    }
    return first;
}

double MpmrfModel::alpha_sum() const {
    double s = 0.0;
    for (const auto& [e, a] : alpha_) s += a;
    return s;
}

std::vector<Poly> eta_all(const MpmrfModel& model, const RootedTree& rooted) {
    std::vector<Poly> eta(model.size() + 1);
    for (auto it = rooted.preorder.rbegin(); it != rooted.preorder.rend(); ++it) {
        const Vertex v = *it;
        Poly p = Poly::t();
        for (Vertex c : rooted.children_of(v)) p = p * affine_thin(eta[c], model.alpha(v, c));
        eta[v] = std::move(p);
    }
    return eta;
}

Poly h_pgf(const MpmrfModel& model, Vertex root) {
    check_vertex(model, root);
    return eta_all(model, root_at(model.tree(), root))[root];
}

DiscreteDist h_dist(const MpmrfModel& model, Vertex root) {
    DiscreteDist d;
    d.pmf = clamp_to_pmf(h_pgf(model, root));
    d.validate();
    return d;
}

CompoundPoisson aggregate_compound(const MpmrfModel& model, Vertex root) {
    check_vertex(model, root);
    const RootedTree rt = root_at(model.tree(), root);
    const std::vector<Poly> eta = eta_all(model, rt);
    CompoundPoisson cp;
    cp.severity.assign(model.size() + 1, 0.0);
    for (Vertex v = 1; v <= model.size(); ++v) {
        const double w = model.lambda() * (v == root ? 1.0 : 1.0 - model.alpha(rt.parent[v], v));
        if (w == 0.0) continue;
        for (int k = 0; k <= eta[v].degree(); ++k) cp.severity[k] += w * eta[v][k];
        cp.rate += w;
    }
    for (double& f : cp.severity) f /= cp.rate;
    cp.severity[0] = 0.0;
    return cp;
}

double compound_tail_bound(const CompoundPoisson& cp, int k) {
    double best = 0.0;  // log of the bound; 0 means the trivial bound 1
    const int deg = static_cast<int>(cp.severity.size()) - 1;
    for (int i = 0; i < 240; ++i) {
        const double theta = 1e-3 * std::pow(1.05, i);
        // log f(e^theta) by log-sum-exp over the severity support.
        double lmax = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= deg; ++j) {
            if (cp.severity[j] > 0.0) lmax = std::max(lmax, std::log(cp.severity[j]) + j * theta);
        }
        double acc = 0.0;
        for (int j = 1; j <= deg; ++j) {
            if (cp.severity[j] > 0.0) acc += std::exp(std::log(cp.severity[j]) + j * theta - lmax);
        }
        const double log_f = lmax + std::log(acc);
        if (log_f > 700.0) break;
        const double value = cp.rate * (std::exp(log_f) - 1.0) - (k + 1.0) * theta;
        best = std::min(best, value);
    }
    return std::exp(best);
}

std::vector<double> panjer_poisson(const CompoundPoisson& cp, int support) {
    if (support < 0) throw InputError("panjer_poisson: negative support");
    int halvings = 0;
    double rate = cp.rate;
    while (rate > kMaxPanjerRate) {
        rate /= 2.0;
        ++halvings;
    }
    const int deg = static_cast<int>(cp.severity.size()) - 1;
    std::vector<double> g(support + 1, 0.0);
    g[0] = std::exp(-rate);
    for (int k = 1; k <= support; ++k) {
        double s = 0.0;
        for (int j = 1; j <= std::min(k, deg); ++j) s += j * cp.severity[j] * g[k - j];
        g[k] = rate / k * s;
    }
    for (int i = 0; i < halvings; ++i) g = convolve(g, g, support);
    return g;
}

DiscreteDist aggregate_dist(const MpmrfModel& model, double tol, Vertex root) {
    if (!(tol > 0.0 && tol <= 1e-3)) throw InputError("tol must lie in (0, 1e-3]");
    const CompoundPoisson cp = aggregate_compound(model, root);
    const double d = model.size();
    const double mean = d * model.lambda();
    long long k = static_cast<long long>(std::ceil(mean + 10.0 * std::sqrt(mean * d)));
    k = std::max(k, 1LL);
    constexpr long long kMaxSupport = 50'000'000LL;
    auto bound_at = [&](long long n) {
        if (n > kMaxSupport) throw NumericalError("aggregate support bound exceeds 5e7");
        return compound_tail_bound(cp, static_cast<int>(n));
    };
    double bound = bound_at(k);
    while (bound >= tol) {
        k *= 2;
        bound = bound_at(k);
    }
    DiscreteDist out;
    out.pmf = panjer_poisson(cp, static_cast<int>(k));
    double s = 0.0;
    for (double p : out.pmf) s += p;
    out.tail_mass = std::clamp(1.0 - s, 0.0, bound);
    out.validate();
    return out;
}

double cov_with_sum(const MpmrfModel& model, Vertex v) {
    check_vertex(model, v);
    const RootedTree rt = root_at(model.tree(), v);
    std::vector<double> prod(model.size() + 1, 1.0);
    double total = 0.0;
    for (Vertex u : rt.preorder) {
        if (u != v) prod[u] = prod[rt.parent[u]] * model.alpha(rt.parent[u], u);
        total += prod[u];
    }
    return model.lambda() * total;
}

double aggregate_variance(const MpmrfModel& model) {
    double s = 0.0;
    for (Vertex v = 1; v <= model.size(); ++v) s += cov_with_sum(model, v);
    return s;
}

double AllocationTable::total() const {
    double s = 0.0;
    for (double x : by_k) s += x;
    return s;
}

double AllocationTable::cumulative(int k) const {
    double s = 0.0;
    for (int i = 0; i <= k && i < static_cast<int>(by_k.size()); ++i) s += by_k[i];
    return s;
}

AllocationTable expected_allocation(const MpmrfModel& model, Vertex v, const DiscreteDist& aggregate) {
    const DiscreteDist h = h_dist(model, v);
    AllocationTable out;
    out.vertex = v;
    out.by_k = convolve(h.pmf, aggregate.pmf, aggregate.support_bound());
    out.by_k.resize(aggregate.pmf.size(), 0.0);
    for (double& x : out.by_k) x *= model.lambda();
    return out;
}

AllocationTable expected_allocation(const MpmrfModel& model, Vertex v, double tol) {
    return expected_allocation(model, v, aggregate_dist(model, tol));
}

double tvar_contribution(const MpmrfModel& model, const AllocationTable& alloc, const DiscreteDist& aggregate,
                         double kappa) {
    const int q = value_at_risk(aggregate, kappa);
    const double F = aggregate.cdf(q);
    const double pq = aggregate.p(q);
    const double atom = pq > 0.0 ? (F - kappa) / pq * alloc.by_k[q] : 0.0;
    return (model.lambda() - alloc.cumulative(q) + atom) / (1.0 - kappa);
}

double tvar_contribution(const MpmrfModel& model, Vertex v, double kappa, double tol) {
    if (!(kappa >= 0.0 && kappa < 1.0)) throw InputError("kappa must lie in [0, 1)");
    const DiscreteDist m = aggregate_dist(model, tol);
    return tvar_contribution(model, expected_allocation(model, v, m), m, kappa);
}

double aggregate_tvar(const MpmrfModel& model, const DiscreteDist& aggregate, double kappa) {
    return tail_value_at_risk(aggregate, kappa, model.size() * model.lambda());
}

std::vector<Closeness> closeness_indices(const MpmrfModel& model) {
    const auto alpha = model.common_alpha();
    if (model.size() > 1 && !alpha) throw InputError("exp-transform closeness needs a homogeneous alpha");
    const auto dist = distance_matrix(model.tree());
    std::vector<Closeness> out(model.size() + 1);
    for (Vertex v = 1; v <= model.size(); ++v) {
        for (Vertex j = 1; j <= model.size(); ++j) {
            out[v].freeman += dist[v][j];
            out[v].exp_transform += std::pow(alpha.value_or(0.0), dist[v][j]);
        }
    }
    return out;
}

}  // namespace mpmrf

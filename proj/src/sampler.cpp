#include "mpmrf/sampler.hpp"

#include <cmath>

#include "mpmrf/error.hpp"

namespace mpmrf {

namespace {
constexpr double kPoissonChunk = 30.0;
constexpr int kBinomialChunk = 200;
}  // namespace

Sampler::Sampler(const MpmrfModel& model, Vertex root, std::uint64_t seed)
    : rooted_(root_at(model.tree(), root)),
      alpha_to_parent_(model.size() + 1, 0.0),
      lambda_(model.lambda()),
      rng_(seed) {
    for (Vertex v = 1; v <= model.size(); ++v) {
        if (v != root) alpha_to_parent_[v] = model.alpha(rooted_.parent[v], v);
    }
}

double Sampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

int Sampler::poisson(double mean) {
    int total = 0;
    while (mean > 0.0) {
        const double mu = std::min(mean, kPoissonChunk);
        mean -= mu;
        const double u = uniform();
        double p = std::exp(-mu);
        double F = p;
        int k = 0;
        while (u > F && p > 0.0) {
            ++k;
            p *= mu / k;
            F += p;
        }
        total += k;
    }
    return total;
}

int Sampler::binomial(int n, double p) {
    if (p <= 0.0 || n == 0) return 0;
    if (p >= 1.0) return n;
    // Invert on the smaller of p and 1 - p so (1 - p)^n stays representable.
    const bool flip = p > 0.5;
    const double q = flip ? 1.0 - p : p;
    int successes = 0;
    int remaining = n;
    while (remaining > 0) {
        const int m = std::min(remaining, kBinomialChunk);
        remaining -= m;
        const double u = uniform();
        double pk = std::pow(1.0 - q, m);
        double F = pk;
        int k = 0;
        const double ratio = q / (1.0 - q);
        while (u > F && k < m) {
            pk *= ratio * (m - k) / (k + 1);
            ++k;
            F += pk;
        }
        successes += k;
    }
    return flip ? n - successes : successes;
}

void Sampler::draw(std::span<int> out) {
    for (Vertex v : rooted_.preorder) {
        if (v == rooted_.root) {
            out[v - 1] = poisson(lambda_);
        } else {
            const double a = alpha_to_parent_[v];
            out[v - 1] = poisson(lambda_ * (1.0 - a)) + binomial(out[rooted_.parent[v] - 1], a);
        }
    }
}

void sample_each(const MpmrfModel& model, Vertex root, std::uint64_t seed, long long n,
                 const std::function<void(std::span<const int>)>& visit) {
    if (n < 1) throw InputError("sample size must be at least 1");
    if (!model.tree().contains(root)) throw InputError("root not in tree");
    Sampler sampler(model, root, seed);
    std::vector<int> row(model.size());
    for (long long i = 0; i < n; ++i) {
        sampler.draw(row);
        visit(row);
    }
}

std::vector<std::vector<int>> sample(const MpmrfModel& model, Vertex root, std::uint64_t seed, long long n) {
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(n));
    sample_each(model, root, seed, n, [&](std::span<const int> row) { out.emplace_back(row.begin(), row.end()); });
    return out;
}

}  // namespace mpmrf

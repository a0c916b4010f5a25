#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "mpmrf/model.hpp"

namespace mpmrf {

/// Draws from the model by the top-down construction
/// N_r = L_r, N_v = L_v + Binomial(N_pa(v), alpha).
///
/// The generator is std::mt19937_64 seeded with the given value. Poisson and
/// binomial variates use inversion only, so a seed reproduces the same draws
/// on any conforming standard library.
class Sampler {
public:
    Sampler(const MpmrfModel& model, Vertex root, std::uint64_t seed);

    /// Fills `out` (index by vertex - 1) with one draw.
    void draw(std::span<int> out);

private:
    double uniform();
    int poisson(double mean);
    int binomial(int n, double p);

    RootedTree rooted_;
    std::vector<double> alpha_to_parent_;  // index by vertex
    double lambda_;
    std::mt19937_64 rng_;
};

/// Streams n draws to `visit`; the span is valid only during the call.
void sample_each(const MpmrfModel& model, Vertex root, std::uint64_t seed, long long n,
                 const std::function<void(std::span<const int>)>& visit);

/// n draws of the vector N; row i holds N_1..N_d.
std::vector<std::vector<int>> sample(const MpmrfModel& model, Vertex root, std::uint64_t seed, long long n);

}  // namespace mpmrf

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mpmrf/error.hpp"
#include "mpmrf/io.hpp"
#include "mpmrf/orders.hpp"
#include "mpmrf/poset.hpp"
#include "mpmrf/spectral.hpp"
#include "oracles.hpp"

using namespace mpmrf;

namespace {

Tree load_tree(const std::string& name) { return tree_from_json(read_json_file(oracle::data_path(name))); }

// trace(A^p) by repeated integer matrix products: closed walks of length p.
long long closed_walks(const Tree& t, int p) {
    const int n = t.size();
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
    for (const Edge& e : t.edges()) a[e.first - 1][e.second - 1] = a[e.second - 1][e.first - 1] = 1;
    auto power = a;
    for (int step = 1; step < p; ++step) {
        std::vector<std::vector<long long>> next(n, std::vector<long long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (power[i][k] != 0)
                    for (int j = 0; j < n; ++j) next[i][j] += power[i][k] * a[k][j];
        power = std::move(next);
    }
    long long tr = 0;
    for (int i = 0; i < n; ++i) tr += power[i][i];
    return tr;
}

}  // namespace

TEST_CASE("closed-form spectra") {
    const SpectrumReport p3 = spectrum(path_tree(3));
    REQUIRE(p3.eigenvalues.size() == 3);
    CHECK(p3.eigenvalues[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(p3.eigenvalues[1]) < 1e-12);
    CHECK(p3.eigenvalues[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const auto lap = jacobi_eigen(laplacian_matrix(path_tree(3))).values;
    CHECK(std::abs(lap[0]) < 1e-12);
    CHECK(lap[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lap[2] == doctest::Approx(3.0).epsilon(1e-12));

    for (int d = 3; d <= 12; ++d) {
        CAPTURE(d);
        const SpectrumReport star = spectrum(star_tree(d));
        CHECK(star.rho == doctest::Approx(std::sqrt(d - 1.0)).epsilon(1e-12));
        CHECK(star.algebraic_connectivity == doctest::Approx(1.0).epsilon(1e-12));
        const SpectrumReport path = spectrum(path_tree(d));
        CHECK(path.rho == doctest::Approx(2.0 * std::cos(std::numbers::pi / (d + 1))).epsilon(1e-12));
        CHECK(path.algebraic_connectivity == doctest::Approx(2.0 * (1.0 - std::cos(std::numbers::pi / d))).epsilon(1e-12));
    }
    const SpectrumReport single = spectrum(Tree(1, {}));
    CHECK(single.eigenvalues == std::vector<double>{0.0});
    CHECK(single.estrada == doctest::Approx(1.0));
}

TEST_CASE("eigen-decompositions of random trees") {
    std::mt19937_64 rng(314);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = 2 + static_cast<int>(rng() % 11);
        const Tree t = oracle::random_tree(d, rng);
        const SymmetricMatrix a = adjacency_matrix(t);
        const Eigensystem es = jacobi_eigen(a);
        REQUIRE(static_cast<int>(es.values.size()) == d);
        CHECK(std::is_sorted(es.values.begin(), es.values.end()));
        for (int i = 0; i < d; ++i) {
            double resid = 0.0;
            double norm = 0.0;
            for (int r = 0; r < d; ++r) {
                double av = 0.0;
                for (int c = 0; c < d; ++c) av += a(r, c) * es.vectors[i][c];
                resid += std::pow(av - es.values[i] * es.vectors[i][r], 2);
                norm += es.vectors[i][r] * es.vectors[i][r];
            }
            CHECK(std::sqrt(resid) < 1e-9);
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
        }
        // Power sums of the spectrum count closed walks.
        for (int p = 1; p <= 4; ++p) {
            double s = 0.0;
            for (double mu : es.values) s += std::pow(mu, p);
            CHECK(std::abs(s - closed_walks(t, p)) < 1e-8);
        }
        const auto lap = jacobi_eigen(laplacian_matrix(t)).values;
        CHECK(std::abs(lap[0]) < 1e-10);
        CHECK(lap[1] > 1e-10);
    }
}

TEST_CASE("the d=9 pair reverses both spectral indices") {
    const SpectrumReport s = spectrum(load_tree("example5_t.json"));
    const SpectrumReport sp = spectrum(load_tree("example5_t_prime.json"));
    CHECK(std::abs(s.rho - 2.08397) < 5e-5);
    CHECK(std::abs(sp.rho - 2.07431) < 5e-5);
    CHECK(std::abs(s.estrada - 19.45936) < 5e-5);
    CHECK(std::abs(sp.estrada - 19.45914) < 5e-5);
    CHECK(s.rho > sp.rho);
    CHECK(s.estrada > sp.estrada);
    CHECK(s.degrees == sp.degrees);
}

TEST_CASE("majorization") {
    CHECK(majorizes({2, 2, 1, 1}, {3, 1, 1, 1}));
    CHECK_FALSE(majorizes({3, 1, 1, 1}, {2, 2, 1, 1}));
    CHECK(majorizes({2, 2, 1, 1}, {2, 2, 1, 1}));
    CHECK_FALSE(majorizes({2, 1, 1}, {3, 1, 1}));  // totals differ
    CHECK_THROWS_AS(majorizes({1, 2}, {2, 1}), InputError);
    CHECK_THROWS_AS(majorizes({2, 1}, {2, 1, 0}), InputError);
    CHECK(majorizes(degree_vector(path_tree(7)), degree_vector(star_tree(7))));

    // Same degree vector, still strictly ordered by the shape criterion.
    CorollaryParams params;
    params.d_se = 6;
    params.subtrees = {path_tree(3)};
    params.tau_anchor = 2;
    const auto chain = corollary_chain(CorollaryKind::SeriesSlide, params);
    REQUIRE(chain.size() == 2);
    const Tree& t2 = chain[1].lower;
    const Tree& t3 = chain[1].upper;
    CHECK(degree_vector(t2) == degree_vector(t3));
    CHECK(canonical_code(t2) != canonical_code(t3));
    CHECK(shape_compare(t2, t3, 0.5, 1.0).relation == Relation::LE);
}

TEST_CASE("cospectral trees") {
    const Tree a = load_tree("cospectral_a.json");
    const Tree b = load_tree("cospectral_b.json");
    CHECK(canonical_code(a) != canonical_code(b));
    CHECK(cospectral_pair_check(a, b));
    CHECK_FALSE(cospectral_pair_check(path_tree(9), star_tree(9)));
    CHECK_THROWS_AS(cospectral_pair_check(path_tree(4), path_tree(5)), InputError);
}

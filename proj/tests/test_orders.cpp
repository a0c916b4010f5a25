#include <doctest.h>

#include <random>

#include "mpmrf/error.hpp"
#include "mpmrf/io.hpp"
#include "mpmrf/orders.hpp"
#include "mpmrf/poset.hpp"
#include "oracles.hpp"

using namespace mpmrf;

namespace {

MpmrfModel load(const std::string& name) { return model_from_json(read_json_file(oracle::data_path(name))); }
Tree load_tree(const std::string& name) { return tree_from_json(read_json_file(oracle::data_path(name))); }

DiscreteDist from_pmf(std::vector<double> p) {
    DiscreteDist d;
    d.pmf = std::move(p);
    return d;
}

}  // namespace

TEST_CASE("usual stochastic order") {
    CHECK(st_compare(point_mass(1), point_mass(2)).relation == Relation::LE);
    CHECK(st_compare(point_mass(2), point_mass(1)).relation == Relation::GE);
    const DiscreteDist p = from_pmf({0.2, 0.5, 0.3});
    const OrderVerdict eq = st_compare(p, p);
    CHECK(eq.relation == Relation::EQ);
    CHECK_FALSE(eq.witness_le.has_value());
    const OrderVerdict inc = st_compare(from_pmf({0.5, 0.0, 0.5}), from_pmf({0.0, 1.0}));
    CHECK(inc.relation == Relation::INCOMPARABLE);
    CHECK(inc.witness_le == 1);
    CHECK(inc.witness_ge == 0);
    // Differences below the tolerance count as equal.
    CHECK(st_compare(from_pmf({0.5, 0.5}), from_pmf({0.5 + 1e-14, 0.5 - 1e-14})).relation == Relation::EQ);
}

TEST_CASE("LE together with GE is EQ on random pairs") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> a(4);
        std::vector<double> b(4);
        for (double& x : a) x = unit(rng);
        for (double& x : b) x = rep % 3 == 0 ? 0.0 : unit(rng);
        if (rep % 3 == 0) b = a;
        double sa = 0.0;
        double sb = 0.0;
        for (double x : a) sa += x;
        for (double x : b) sb += x;
        for (double& x : a) x /= sa;
        for (double& x : b) x /= sb;
        const OrderVerdict v = st_compare(from_pmf(a), from_pmf(b));
        const OrderVerdict w = st_compare(from_pmf(b), from_pmf(a));
        CHECK((v.le() && v.ge()) == (v.relation == Relation::EQ));
        CHECK(v.le() == w.ge());
        CHECK(v.ge() == w.le());
    }
}

TEST_CASE("synecdochic pairs") {
    const MpmrfModel ex2 = load("example2.json");
    CHECK(synecdochic_compare(ex2, 2, 3).relation == Relation::LE);
    CHECK(synecdochic_compare(ex2, 4, 5).relation == Relation::EQ);
    const MpmrfModel ex1 = load("example1.json");
    CHECK(synecdochic_compare(ex1, 2, 1).relation == Relation::LE);
    CHECK_THROWS_AS(synecdochic_compare(ex1, 2, 2), InputError);
}

TEST_CASE("move identification") {
    const Tree t = load_tree("example5_t.json");
    const Tree tp = load_tree("example5_t_prime.json");
    const Move m = identify_move(t, tp);
    CHECK(m.u == 9);
    CHECK(m.v == 7);
    CHECK(m.w == 3);
    CHECK_THROWS_AS(identify_move(t, t), InputError);
    CHECK_THROWS_AS(identify_move(load_tree("example6_t.json"), load_tree("example6_t_prime.json")), InputError);
    CHECK_THROWS_AS(identify_move(path_tree(4), path_tree(5)), InputError);
}

TEST_CASE("shape criterion examples") {
    SUBCASE("one star-to-series step") {
        const Tree star = star_tree(6);
        const Tree step = move_edge(star, 3, 1, 2);
        for (double a : {0.1, 0.5, 0.9}) CHECK(shape_compare(step, star, a, 1.0).relation == Relation::LE);
    }
    SUBCASE("d=12 pair is not decided") {
        const Tree t = load_tree("example3_t.json");
        const Tree tp = load_tree("example3_t_prime.json");
        CHECK(shape_compare(t, tp, 0.9, 1.0).relation == Relation::INCOMPARABLE);
        // The residual H laws behind the verdict.
        const PruneResult parts = prune(t, 4, 2);
        const MpmrfModel residual(parts.residual.tree, 1.0, 0.9);
        const DiscreteDist h2 = h_dist(residual, parts.residual.local(2));
        const DiscreteDist h3 = h_dist(residual, parts.residual.local(3));
        CHECK(h2.cdf(1) == doctest::Approx(0.01).epsilon(1e-9));
        CHECK(h3.cdf(1) == doctest::Approx(0.001).epsilon(1e-9));
        CHECK(std::abs(h2.cdf(2) - 0.0190) <= 5e-5);
        CHECK(std::abs(h3.cdf(2) - 0.0199) <= 5e-5);
    }
    SUBCASE("d=9 pair with a spectral reversal") {
        const Tree t = load_tree("example5_t.json");
        const Tree tp = load_tree("example5_t_prime.json");
        for (double a : default_alpha_grid()) CHECK(shape_compare(t, tp, a, 1.0).relation == Relation::LE);
        CHECK(shape_compare(tp, t, 0.5, 1.0).relation == Relation::GE);
    }
    CHECK_THROWS_AS(shape_compare(path_tree(4), path_tree(4), 0.5, 1.0), InputError);
    CHECK_THROWS_AS(shape_compare(path_tree(4), star_tree(4), 0.5, 0.0), InputError);
}

TEST_CASE("convex order checks") {
    const DiscreteDist p = poisson(3.0, 1e-15);
    CHECK(cx_check_empirical(p, p).relation == Relation::EQ);

    // Poisson(2) against 2 Poisson(1); both have mean 2.
    const DiscreteDist p2 = poisson(2.0, 1e-16);
    const DiscreteDist p1 = poisson(1.0, 1e-16);
    DiscreteDist scaled;
    scaled.pmf.assign(2 * p1.support_bound() + 1, 0.0);
    for (int k = 0; k <= p1.support_bound(); ++k) scaled.pmf[2 * k] = p1.pmf[k];
    CHECK(cx_check_empirical(p2, scaled).relation == Relation::LE);
    // Brute-force premiums agree with the ordering.
    for (int c = 0; c < 30; ++c) {
        double a = 0.0;
        double b = 0.0;
        for (int k = c + 1; k <= p2.support_bound(); ++k) a += (k - c) * p2.pmf[k];
        for (int k = c + 1; k <= scaled.support_bound(); ++k) b += (k - c) * scaled.pmf[k];
        CHECK(a <= b + 1e-12);
    }

    const DiscreteDist series = aggregate_dist(MpmrfModel(path_tree(5), 1.0, 0.5));
    const DiscreteDist star = aggregate_dist(MpmrfModel(star_tree(5), 1.0, 0.5));
    CHECK(cx_check_empirical(series, star).relation == Relation::LE);
    CHECK(cx_check_empirical(star, series).relation == Relation::GE);

    CHECK_THROWS_AS(cx_check_empirical(poisson(1.0), poisson(2.0)), InputError);
}

TEST_CASE("shape LE implies convex order of the aggregates") {
    for (int d = 3; d <= 7; ++d) {
        for (const Tree& t : enumerate_shapes(d)) {
            for (const Neighbor& nb : all_single_moves(t)) {
                for (double a : {0.2, 0.5, 0.8}) {
                    const OrderVerdict v = shape_compare_move(t, nb.move, a);
                    if (!v.le()) continue;
                    const DiscreteDist m1 = aggregate_dist(MpmrfModel(t, 1.0, a));
                    const DiscreteDist m2 = aggregate_dist(MpmrfModel(nb.tree, 1.0, a));
                    CHECK(cx_check_empirical(m1, m2).le());
                }
            }
        }
    }
}

TEST_CASE("adding a leaf at v or w matches the synecdochic verdict") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = 2 + static_cast<int>(rng() % 8);
        const Tree t = oracle::random_tree(d, rng);
        const double a = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
        const MpmrfModel m(t, 1.0, a);
        for (Vertex v = 1; v <= d; ++v) {
            for (Vertex w = 1; w <= d; ++w) {
                if (v == w) continue;
                const Tree tv = add_leaf(t, v);
                const Tree tw = move_edge(tv, d + 1, v, w);
                CHECK(shape_compare(tv, tw, a, 1.0).relation == synecdochic_compare(m, v, w).relation);
            }
        }
    }
}

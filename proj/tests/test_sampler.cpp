#include <doctest.h>

#include <cmath>

#include "mpmrf/error.hpp"
#include "mpmrf/io.hpp"
#include "mpmrf/sampler.hpp"
#include "oracles.hpp"

using namespace mpmrf;

namespace {

MpmrfModel load(const std::string& name) { return model_from_json(read_json_file(oracle::data_path(name))); }

// Upper `level` point of the standard normal, by bisection on erfc.
double normal_upper(double level) {
    double lo = 0.0;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(mid / std::sqrt(2.0)) > level ? lo : hi) = mid;
    }
    return lo;
}

// Upper `level` point of the chi-square law (Wilson-Hilferty).
double chi2_crit(int df, double level) {
    const double z = normal_upper(level);
    const double h = 2.0 / (9.0 * df);
    return df * std::pow(1.0 - h + z * std::sqrt(h), 3);
}

// Pearson statistic of counts against Poisson(lambda); bins with expected
// count below 5 are pooled into the tail bin.
std::pair<double, int> chi2_poisson(const std::vector<long long>& counts, long long n, double lambda) {
    const auto p = oracle::poisson_pmf(lambda, 200);
    double stat = 0.0;
    int bins = 0;
    double tail_p = 1.0;
    long long tail_count = n;
    for (int k = 0; n * p[k] >= 5.0 && n * (tail_p - p[k]) >= 5.0; ++k) {
        const long long c = k < static_cast<int>(counts.size()) ? counts[k] : 0;
        stat += (c - n * p[k]) * (c - n * p[k]) / (n * p[k]);
        tail_p -= p[k];
        tail_count -= c;
        ++bins;
    }
    stat += (tail_count - n * tail_p) * (tail_count - n * tail_p) / (n * tail_p);
    ++bins;
    return {stat, bins - 1};
}

}  // namespace

TEST_CASE("comonotone edges copy the root value") {
    const MpmrfModel m = load("comonotone_d4.json");
    for (Vertex root : {1, 3}) {
        sample_each(m, root, 7, 20000, [](std::span<const int> row) {
            for (int x : row) REQUIRE(x == row[0]);
        });
    }
}

TEST_CASE("draws are reproducible from the seed") {
    const MpmrfModel m = load("example2.json");
    CHECK(sample(m, 1, 123, 500) == sample(m, 1, 123, 500));
    CHECK(sample(m, 1, 123, 500) != sample(m, 1, 124, 500));
    CHECK_THROWS_AS(sample(m, 1, 1, 0), InputError);
    CHECK_THROWS_AS(sample(m, 9, 1, 10), InputError);
}

TEST_CASE("independent vertices have mean lambda") {
    const MpmrfModel m(path_tree(5), 2.0, 0.0);
    const long long n = 100000;
    std::vector<double> sum(5, 0.0);
    sample_each(m, 1, 99, n, [&](std::span<const int> row) {
        for (int i = 0; i < 5; ++i) sum[i] += row[i];
    });
    const double band = 3.0 * std::sqrt(2.0 / n);
    for (double s : sum) CHECK(std::abs(s / n - 2.0) <= band);
}

TEST_CASE("every marginal is Poisson(lambda)") {
    for (const char* name : {"example2.json", "per_edge_d4.json", "example3_t.json"}) {
        const MpmrfModel m = load(name);
        const long long n = 100000;
        std::vector<std::vector<long long>> counts(m.size());
        sample_each(m, 2, 2024, n, [&](std::span<const int> row) {
            for (int i = 0; i < m.size(); ++i) {
                if (row[i] >= static_cast<int>(counts[i].size())) counts[i].resize(row[i] + 1, 0);
                ++counts[i][row[i]];
            }
        });
        // One test per model at the 1% level, Bonferroni-split over vertices.
        const double level = 0.01 / m.size();
        for (int i = 0; i < m.size(); ++i) {
            const auto [stat, df] = chi2_poisson(counts[i], n, m.lambda());
            INFO(std::string(name) << " vertex " << i + 1 << " chi2 " << stat << " df " << df);
            CHECK(stat < chi2_crit(df, level));
        }
    }
}

TEST_CASE("heavy thinning and large means stay exact in distribution") {
    // lambda = 250 splits both the Poisson means and the binomial trial
    // counts into chunks; alpha = 0.97 takes the flipped binomial branch.
    const MpmrfModel m(path_tree(3), 250.0, 0.97);
    const long long n = 40000;
    double s = 0.0;
    double s2 = 0.0;
    sample_each(m, 1, 5, n, [&](std::span<const int> row) {
        s += row[2];
        s2 += static_cast<double>(row[2]) * row[2];
    });
    const double mean = s / n;
    CHECK(std::abs(mean - 250.0) <= 3.0 * std::sqrt(250.0 / n));
    CHECK(std::abs((s2 / n - mean * mean) / 250.0 - 1.0) < 0.05);
}

TEST_CASE("covariance of the star center with the sum") {
    const MpmrfModel m = load("example1.json");
    const long long n = 1000000;
    double sz = 0.0;
    double sz2 = 0.0;
    sample_each(m, 1, 31337, n, [&](std::span<const int> row) {
        long long total = 0;
        for (int x : row) total += x;
        const double z = (row[0] - 1.0) * (total - 10.0);
        sz += z;
        sz2 += z * z;
    });
    const double cov = sz / n;
    const double se = std::sqrt((sz2 / n - cov * cov) / n);
    INFO("cov " << cov << " se " << se);
    CHECK(std::abs(cov - 5.5) <= 3.0 * se);
}

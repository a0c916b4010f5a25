#pragma once

#include <vector>

namespace mpmrf {

/// Probability mass function on {0..K} with the mass beyond K recorded
/// separately. pmf entries are non-negative and pmf + tail_mass sums to one
/// within 1e-9.
struct DiscreteDist {
    std::vector<double> pmf;
    double tail_mass = 0.0;

    int support_bound() const { return static_cast<int>(pmf.size()) - 1; }
    double p(int k) const { return (k >= 0 && k < static_cast<int>(pmf.size())) ? pmf[k] : 0.0; }
    /// F(k); saturates at the total listed mass beyond the support bound.
    double cdf(int k) const;
    std::vector<double> cdf_table() const;
    double mean() const;
    double variance() const;

    /// Throws NumericalError if the invariants above do not hold.
    void validate(double tol = 1e-9) const;
};

/// Point mass at k.
DiscreteDist point_mass(int k);

/// Poisson(mean) truncated once the remaining tail falls below tail_tol.
DiscreteDist poisson(double mean, double tail_tol = 1e-16);

/// Convolution of two pmfs, truncated to `max_support` when non-negative.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b, int max_support = -1);

/// Stop-loss premium E[(X - c)_+] = sum_{k > c} (k - c) p(k).
double stop_loss(const DiscreteDist& dist, int c);

/// Stop-loss premiums for c = 0..max_c, accumulated from the right tail.
std::vector<double> stop_loss_table(const DiscreteDist& dist, int max_c);

/// VaR_kappa(X) = inf{k : F(k) >= kappa}.
int value_at_risk(const DiscreteDist& dist, double kappa);

/// TVaR_kappa(X) = (E[X] - E[X 1{X <= q}] + (F(q) - kappa) q) / (1 - kappa),
/// with q = VaR_kappa(X). E[X] is taken from the listed pmf unless `mean` is
/// given.
double tail_value_at_risk(const DiscreteDist& dist, double kappa, double mean = -1.0);

}  // namespace mpmrf

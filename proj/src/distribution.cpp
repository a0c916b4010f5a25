#include "mpmrf/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpmrf/error.hpp"

namespace mpmrf {

double DiscreteDist::cdf(int k) const {
    if (k < 0) return 0.0;
    double s = 0.0;
    const int upto = std::min(k, support_bound());
    for (int i = 0; i <= upto; ++i) s += pmf[i];
    return s;
}

std::vector<double> DiscreteDist::cdf_table() const {
    std::vector<double> out(pmf.size());
    double s = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) out[i] = (s += pmf[i]);
    return out;
}

double DiscreteDist::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
    return m;
}

double DiscreteDist::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        const double dk = static_cast<double>(k) - m;
        v += dk * dk * pmf[k];
    }
    return v;
}

void DiscreteDist::validate(double tol) const {
    double s = tail_mass;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (!(pmf[k] >= 0.0)) throw NumericalError("pmf entry " + std::to_string(k) + " is negative or NaN");
        s += pmf[k];
    }
    if (std::abs(s - 1.0) > tol) throw NumericalError("pmf mass " + std::to_string(s) + " is not 1");
}

DiscreteDist point_mass(int k) {
    if (k < 0) throw InputError("point_mass: negative support point");
    DiscreteDist d;
    d.pmf.assign(k + 1, 0.0);
    d.pmf[k] = 1.0;
    return d;
}

DiscreteDist poisson(double mean, double tail_tol) {
    if (!(mean >= 0.0)) throw InputError("poisson: mean must be non-negative");
    if (!(tail_tol > 0.0)) throw InputError("poisson: tail tolerance must be positive");
    DiscreteDist d;
    if (mean == 0.0) {
        d.pmf = {1.0};
        return d;
    }
    double acc = 0.0;
    double bound = 1.0;
    for (int k = 0;; ++k) {
        // Log form so large means do not underflow e^{-mean}.
        const double pk = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
        d.pmf.push_back(pk);
        acc += pk;
        if (k + 2 > mean) {
            // P(X > k) <= p_k r / (1 - r') with ratios r = mean/(k+1), r' = mean/(k+2).
            bound = pk * (mean / (k + 1.0)) / (1.0 - mean / (k + 2.0));
            if (bound < tail_tol) break;
        }
    }
    d.tail_mass = std::clamp(1.0 - acc, 0.0, bound);
    return d;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b, int max_support) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size() + b.size() - 1;
    if (max_support >= 0) n = std::min(n, static_cast<std::size_t>(max_support) + 1);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

double stop_loss(const DiscreteDist& dist, int c) {
    double s = 0.0;
    for (int k = std::max(c + 1, 0); k <= dist.support_bound(); ++k) s += (k - c) * dist.pmf[k];
    return s;
}

std::vector<double> stop_loss_table(const DiscreteDist& dist, int max_c) {
    // SL(c) = SL(c + 1) + P(X > c); both accumulated from the top so small
    // tail premiums keep full relative precision.
    const int top = std::max(max_c, dist.support_bound());
    std::vector<double> sl(top + 2, 0.0);
    double survival = 0.0;
    for (int c = top; c >= 0; --c) {
        survival += dist.p(c + 1);
        sl[c] = sl[c + 1] + survival;
    }
    sl.resize(max_c + 1);
    return sl;
}

int value_at_risk(const DiscreteDist& dist, double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0)) throw InputError("value_at_risk: kappa must lie in [0, 1)");
    double F = 0.0;
    for (int k = 0; k <= dist.support_bound(); ++k) {
        F += dist.pmf[k];
        if (F >= kappa) return k;
    }
    throw NumericalError("value_at_risk: level beyond the listed support");
}

double tail_value_at_risk(const DiscreteDist& dist, double kappa, double mean) {
    const int q = value_at_risk(dist, kappa);
    double below = 0.0;
    double F = 0.0;
    for (int k = 0; k <= q; ++k) {
        below += k * dist.pmf[k];
        F += dist.pmf[k];
    }
    const double m = mean >= 0.0 ? mean : dist.mean();
    return (m - below + (F - kappa) * q) / (1.0 - kappa);
}

}  // namespace mpmrf

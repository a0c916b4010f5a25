#include "mpmrf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpmrf/error.hpp"

namespace mpmrf {

Eigensystem jacobi_eigen(const SymmetricMatrix& m) {
    const int n = m.n;
    SymmetricMatrix a = m;
    SymmetricMatrix v(n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    double frob = 0.0;
    for (double x : a.a) frob += x * x;
    frob = std::sqrt(frob);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        }
        if (std::sqrt(off) <= 1e-14 * frob || off == 0.0) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
    Eigensystem out;
    for (int i : order) {
        out.values.push_back(a(i, i));
        std::vector<double> vec(n);
        for (int k = 0; k < n; ++k) vec[k] = v(k, i);
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

SymmetricMatrix adjacency_matrix(const Tree& tree) {
    SymmetricMatrix m(tree.size());
    for (const Edge& e : tree.edges()) {
        m(e.first - 1, e.second - 1) = 1.0;
        m(e.second - 1, e.first - 1) = 1.0;
    }
    return m;
}

SymmetricMatrix laplacian_matrix(const Tree& tree) {
    SymmetricMatrix m(tree.size());
    for (const Edge& e : tree.edges()) {
        m(e.first - 1, e.second - 1) = -1.0;
        m(e.second - 1, e.first - 1) = -1.0;
        m(e.first - 1, e.first - 1) += 1.0;
        m(e.second - 1, e.second - 1) += 1.0;
    }
    return m;
}

SpectrumReport spectrum(const Tree& tree) {
    SpectrumReport r;
    r.eigenvalues = jacobi_eigen(adjacency_matrix(tree)).values;
    r.rho = r.eigenvalues.back();
    for (double mu : r.eigenvalues) r.estrada += std::exp(mu);
    const std::vector<double> lap = jacobi_eigen(laplacian_matrix(tree)).values;
    r.algebraic_connectivity = lap.size() > 1 ? lap[1] : 0.0;
    r.degrees = degree_vector(tree);
    return r;
}

bool majorizes(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw InputError("majorizes: sequences differ in length");
    if (!std::is_sorted(a.rbegin(), a.rend()) || !std::is_sorted(b.rbegin(), b.rend())) {
        throw InputError("majorizes: sequences must be decreasing");
    }
    long long sa = 0;
    long long sb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        if (sb < sa) return false;
    }
    return sa == sb;
}

bool cospectral_pair_check(const Tree& t1, const Tree& t2, double tol) {
    if (t1.size() != t2.size()) throw InputError("cospectral_pair_check: vertex counts differ");
    const auto s1 = jacobi_eigen(adjacency_matrix(t1)).values;
    const auto s2 = jacobi_eigen(adjacency_matrix(t2)).values;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        if (std::abs(s1[i] - s2[i]) > tol) return false;
    }
    return true;
}

}  // namespace mpmrf

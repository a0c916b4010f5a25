#pragma once

#include <vector>

#include "mpmrf/tree.hpp"

namespace mpmrf {

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
    int n = 0;
    std::vector<double> a;

    explicit SymmetricMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

struct Eigensystem {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // vectors[i] pairs with values[i]
};

/// Cyclic Jacobi rotations until the off-diagonal norm falls below 1e-14
/// relative to the Frobenius norm.
Eigensystem jacobi_eigen(const SymmetricMatrix& m);

SymmetricMatrix adjacency_matrix(const Tree& tree);
/// Degree matrix minus adjacency.
SymmetricMatrix laplacian_matrix(const Tree& tree);

struct SpectrumReport {
    std::vector<double> eigenvalues;  // adjacency spectrum, ascending
    double rho = 0.0;                 // spectral radius
    double estrada = 0.0;             // sum of exp(mu_i)
    double algebraic_connectivity = 0.0;
    std::vector<int> degrees;         // decreasing
};

SpectrumReport spectrum(const Tree& tree);

/// True iff b majorizes a: every prefix sum of b is at least the matching
/// prefix sum of a and the totals agree. Both sequences must be decreasing and of equal length
/// (InputError otherwise).
bool majorizes(const std::vector<int>& a, const std::vector<int>& b);

/// True iff the sorted adjacency spectra agree within tol. InputError when
/// the vertex counts differ.
bool cospectral_pair_check(const Tree& t1, const Tree& t2, double tol = 1e-9);

}  // namespace mpmrf

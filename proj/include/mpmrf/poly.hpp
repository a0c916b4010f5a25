#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace mpmrf {

/// Univariate polynomial with real coefficients; coeffs()[k] multiplies t^k.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients
/// and degree -1. Probability generating functions of bounded count
/// variables are carried as Poly values.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<double> coeffs);
    explicit Poly(std::vector<double> coeffs);

    static Poly constant(double c) { return Poly(std::vector<double>{c}); }
    static Poly monomial(int k, double c = 1.0);
    /// The identity t.
    static Poly t() { return monomial(1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const { return coeffs_; }
    double operator[](int k) const;
    double eval(double t) const;
    double sum() const;

    Poly& operator+=(const Poly& other);
    Poly& operator*=(double s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator*(Poly a, double s) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);

    bool operator==(const Poly&) const = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

Poly mul(const Poly& a, const Poly& b);

/// Returns (1 - alpha) + alpha * p. Throws InputError unless alpha is in [0, 1].
Poly affine_thin(const Poly& p, double alpha);

/// Integer power by repeated squaring.
Poly pow(const Poly& p, int exponent);

/// Composition p(q(t)) by Horner's scheme.
Poly compose(const Poly& p, const Poly& q);

/// k-fold application of y -> t (1 - alpha + alpha y)^chi, starting from y.
/// k = 0 returns t regardless of y.
Poly psi(const Poly& y, double alpha, int chi, int k);

/// Coefficients below -1e-15 raise NumericalError; the rest of the negatives
/// are clamped to zero. Used before reading a pgf as a pmf.
std::vector<double> clamp_to_pmf(const Poly& p);

}  // namespace mpmrf

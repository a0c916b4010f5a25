#include "mpmrf/poly.hpp"

#include <algorithm>
#include <string>

#include "mpmrf/error.hpp"

namespace mpmrf {

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int k, double c) {
    if (k < 0) throw InputError("monomial: negative exponent");
    std::vector<double> v(k + 1, 0.0);
    v[k] = c;
    return Poly(std::move(v));
}

double Poly::operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0.0;
}

double Poly::eval(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Poly::sum() const {
    double s = 0.0;
    for (double c : coeffs_) s += c;
    return s;
}

Poly& Poly::operator+=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        const double ai = a.coeffs_[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += ai * b.coeffs_[j];
    }
    return Poly(std::move(out));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Poly mul(const Poly& a, const Poly& b) { return a * b; }

Poly affine_thin(const Poly& p, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InputError("affine_thin: alpha " + std::to_string(alpha) + " outside [0, 1]");
    }
    return p * alpha + Poly::constant(1.0 - alpha);
}

Poly pow(const Poly& p, int exponent) {
    if (exponent < 0) throw InputError("pow: negative exponent");
    Poly result = Poly::constant(1.0);
    Poly base = p;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

Poly compose(const Poly& p, const Poly& q) {
    Poly acc;
    const auto c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * q + Poly::constant(*it);
    return acc;
}

Poly psi(const Poly& y, double alpha, int chi, int k) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("psi: alpha outside [0, 1]");
    if (chi < 0) throw InputError("psi: chi must be non-negative");
    if (k < 0) throw InputError("psi: k must be non-negative");
    if (k == 0) return Poly::t();
    Poly cur = y;
    for (int i = 0; i < k; ++i) cur = Poly::t() * pow(affine_thin(cur, alpha), chi);
    return cur;
}

std::vector<double> clamp_to_pmf(const Poly& p) {
    std::vector<double> out(p.coeffs().begin(), p.coeffs().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k] < -1e-15) {
            throw NumericalError("pgf coefficient " + std::to_string(k) + " is negative (" +
                                 std::to_string(out[k]) + ")");
        }
        out[k] = std::max(out[k], 0.0);
    }
    return out;
}

}  // namespace mpmrf

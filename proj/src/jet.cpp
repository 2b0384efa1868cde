#include "casimir/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casimir::special {

namespace {

std::size_t common_order(const Jet& a, const Jet& b) { return std::min(a.order(), b.order()); }

}  // namespace

Jet::Jet(double value, std::size_t order) : coeffs_(order + 1, 0.0) { coeffs_[0] = value; }

Jet Jet::variable(double base, std::size_t order) {
    Jet j(base, order);
    if (order >= 1) j.coeffs_[1] = 1.0;
    return j;
}

Jet Jet::from_coefficients(std::vector<double> coefficients) {
    if (coefficients.empty()) throw std::invalid_argument("Jet needs at least one coefficient");
    Jet j;
    j.coeffs_ = std::move(coefficients);
    return j;
}

double Jet::derivative_value(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f * coeffs_.at(k);
}

Jet Jet::derivative() const {
    if (order() == 0) throw std::domain_error("cannot differentiate an order-0 jet");
    std::vector<double> d(order());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<double>(k + 1) * coeffs_[k + 1];
    return from_coefficients(std::move(d));
}

Jet Jet::truncated(std::size_t order) const {
    if (order > this->order()) throw std::invalid_argument("cannot raise jet order by truncation");
    return from_coefficients(std::vector<double>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Jet& Jet::operator+=(const Jet& other) {
    coeffs_.resize(common_order(*this, other) + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& other) {
    coeffs_.resize(common_order(*this, other) + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& other) {
    *this = *this * other;
    return *this;
}

Jet& Jet::operator/=(const Jet& other) {
    *this = *this / other;
    return *this;
}

Jet& Jet::operator+=(double s) {
    coeffs_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s) {
    coeffs_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Jet& Jet::operator/=(double s) {
    for (auto& c : coeffs_) c /= s;
    return *this;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t d = common_order(a, b);
    std::vector<double> c(d + 1, 0.0);
    for (std::size_t k = 0; k <= d; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
        c[k] = s;
    }
    return Jet::from_coefficients(std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b[0] == 0.0) throw std::domain_error("jet division by a series with zero constant term");
    const std::size_t d = common_order(a, b);
    std::vector<double> c(d + 1, 0.0);
    for (std::size_t k = 0; k <= d; ++k) {
        double s = a[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b[j] * c[k - j];
        c[k] = s / b[0];
    }
    return Jet::from_coefficients(std::move(c));
}

Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a -= s; }
Jet operator-(double s, const Jet& a) { return (-a) += s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a) { return Jet(s, a.order()) / a; }

Jet sqrt(const Jet& a) {
    if (a[0] <= 0.0) throw std::domain_error("jet sqrt needs a positive constant term");
    const std::size_t d = a.order();
    std::vector<double> s(d + 1, 0.0);
    s[0] = std::sqrt(a[0]);
    for (std::size_t k = 1; k <= d; ++k) {
        double acc = a[k];
        for (std::size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
        s[k] = acc / (2.0 * s[0]);
    }
    return Jet::from_coefficients(std::move(s));
}

Jet exp(const Jet& a) {
    const std::size_t d = a.order();
    std::vector<double> e(d + 1, 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t k = 1; k <= d; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = acc / static_cast<double>(k);
    }
    return Jet::from_coefficients(std::move(e));
}

Jet log(const Jet& a) {
    if (a[0] <= 0.0) throw std::domain_error("jet log needs a positive constant term");
    const std::size_t d = a.order();
    std::vector<double> l(d + 1, 0.0);
    l[0] = std::log(a[0]);
    for (std::size_t k = 1; k <= d; ++k) {
        double acc = a[k];
        for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) / static_cast<double>(k) * l[j] * a[k - j];
        l[k] = acc / a[0];
    }
    return Jet::from_coefficients(std::move(l));
}

Jet pow(const Jet& a, unsigned n) {
    Jet result(1.0, a.order());
    Jet base = a;
    while (n > 0) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n > 0) base = base * base;
    }
    return result;
}

}  // namespace casimir::special

#pragma once

#include <cstddef>
#include <vector>

namespace casimir::special {

/// Truncated Taylor series f(x0 + h) = c_0 + c_1 h + ... + c_D h^D.
///
/// Binary operations between jets of different orders truncate to the smaller
/// order, so a jet that has been differentiated can be combined with the
/// full-order jets it was derived from.
class Jet {
  public:
    Jet() = default;

    /// Constant jet of the given order.
    Jet(double value, std::size_t order);

    static Jet constant(double value, std::size_t order) { return Jet(value, order); }

    /// The independent variable itself, expanded about `base`.
    static Jet variable(double base, std::size_t order);

    static Jet from_coefficients(std::vector<double> coefficients);

    std::size_t order() const { return coeffs_.size() - 1; }
    double value() const { return coeffs_.front(); }

    double operator[](std::size_t k) const { return coeffs_[k]; }
    double& operator[](std::size_t k) { return coeffs_[k]; }

    const std::vector<double>& coefficients() const { return coeffs_; }

    /// k-th derivative at the base point, k! c_k.
    double derivative_value(std::size_t k) const;

    /// d/dh of the series; loses one order.
    Jet derivative() const;

    Jet truncated(std::size_t order) const;

    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Jet& other);
    Jet& operator/=(const Jet& other);

    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);

    Jet operator-() const;

  private:
    std::vector<double> coeffs_{0.0};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);

/// Integer power by repeated squaring.
Jet pow(const Jet& a, unsigned n);

}  // namespace casimir::special

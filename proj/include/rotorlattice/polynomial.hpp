#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace rotor {

// One product of site variables with a coefficient. Variables are kept
// sorted; repeated ids encode powers. Degree up to 8 is representable so
// that products of two quartics do not overflow; the Gaussian moment engine
// itself accepts degree <= 4.
struct Monomial {
  std::array<std::int32_t, 8> v{};
  std::int8_t deg = 0;
  double coeff = 0.0;
};

// Polynomial observable in canonical form: terms sorted by (degree, ids),
// duplicates merged, exact-zero coefficients dropped.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(double c);
  static Polynomial site(int i);                           // x_i
  static Polynomial monomial(std::span<const int> sites, double coeff);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
  }
  friend Polynomial operator*(Polynomial a, double s) {
    a *= s;
    return a;
  }
  friend Polynomial operator*(double s, Polynomial a) {
    a *= s;
    return a;
  }
  Polynomial operator*(const Polynomial& o) const;

  Polynomial derivative(int site) const;

  bool zero() const { return terms_.empty(); }
  int degree() const;
  const std::vector<Monomial>& terms() const { return terms_; }
  std::vector<int> support() const;  // distinct site ids, ascending
  double eval(const std::vector<double>& x) const;

  // exact structural equality of canonical forms
  bool operator==(const Polynomial& o) const;

 private:
  void canonicalize();
  std::vector<Monomial> terms_;
};

}  // namespace rotor

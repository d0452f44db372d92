#include "rotorlattice/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace rotor {

namespace {

// ordering on canonical monomials: degree first, then lexicographic ids
bool key_less(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  return std::lexicographical_compare(a.v.begin(), a.v.begin() + a.deg,
                                      b.v.begin(), b.v.begin() + b.deg);
}

bool key_eq(const Monomial& a, const Monomial& b) {
  return a.deg == b.deg &&
         std::equal(a.v.begin(), a.v.begin() + a.deg, b.v.begin());
}

}  // namespace

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  if (c != 0.0) {
    Monomial m;
    m.coeff = c;
    p.terms_.push_back(m);
  }
  return p;
}

Polynomial Polynomial::site(int i) {
  Monomial m;
  m.v[0] = i;
  m.deg = 1;
  m.coeff = 1.0;
  Polynomial p;
  p.terms_.push_back(m);
  return p;
}

Polynomial Polynomial::monomial(std::span<const int> sites, double coeff) {
  if (sites.size() > 8) throw std::length_error("monomial degree exceeds 8");
  Polynomial p;
  if (coeff == 0.0) return p;
  Monomial m;
  m.deg = static_cast<std::int8_t>(sites.size());
  std::copy(sites.begin(), sites.end(), m.v.begin());
  std::sort(m.v.begin(), m.v.begin() + m.deg);
  m.coeff = coeff;
  p.terms_.push_back(m);
  return p;
}

void Polynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), key_less);
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    if (w > 0 && key_eq(terms_[w - 1], terms_[r])) {
      terms_[w - 1].coeff += terms_[r].coeff;
    } else {
      terms_[w++] = terms_[r];
    }
  }
  terms_.resize(w);
  std::erase_if(terms_, [](const Monomial& m) { return m.coeff == 0.0; });
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  terms_.reserve(terms_.size() + o.terms_.size());
  for (Monomial m : o.terms_) {
    m.coeff = -m.coeff;
    terms_.push_back(m);
  }
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& m : terms_) m.coeff *= s;
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      if (a.deg + b.deg > 8)
        throw std::length_error("product degree exceeds 8");
      Monomial m;
      m.deg = static_cast<std::int8_t>(a.deg + b.deg);
      std::merge(a.v.begin(), a.v.begin() + a.deg, b.v.begin(),
                 b.v.begin() + b.deg, m.v.begin());
      m.coeff = a.coeff * b.coeff;
      r.terms_.push_back(m);
    }
  }
  r.canonicalize();
  return r;
}

Polynomial Polynomial::derivative(int site) const {
  Polynomial r;
  for (const auto& m : terms_) {
    int mult = 0;
    for (int k = 0; k < m.deg; ++k) mult += (m.v[k] == site);
    if (mult == 0) continue;
    Monomial d;
    d.deg = static_cast<std::int8_t>(m.deg - 1);
    bool dropped = false;
    int w = 0;
    for (int k = 0; k < m.deg; ++k) {
      if (!dropped && m.v[k] == site) {
        dropped = true;
        continue;
      }
      d.v[w++] = m.v[k];
    }
    d.coeff = m.coeff * mult;
    r.terms_.push_back(d);
  }
  r.canonicalize();
  return r;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, static_cast<int>(m.deg));
  return d;
}

std::vector<int> Polynomial::support() const {
  std::vector<int> s;
  for (const auto& m : terms_)
    s.insert(s.end(), m.v.begin(), m.v.begin() + m.deg);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

double Polynomial::eval(const std::vector<double>& x) const {
  double acc = 0.0;
  for (const auto& m : terms_) {
    double t = m.coeff;
    for (int k = 0; k < m.deg; ++k) t *= x[static_cast<std::size_t>(m.v[k])];
    acc += t;
  }
  return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!key_eq(terms_[i], o.terms_[i])) return false;
    if (terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

}  // namespace rotor

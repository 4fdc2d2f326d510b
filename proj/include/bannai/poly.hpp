#ifndef BANNAI_POLY_HPP
#define BANNAI_POLY_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bannai/rational.hpp"

namespace bannai {

class exact_division_error : public std::domain_error {
 public:
  explicit exact_division_error(const std::string& what) : std::domain_error(what) {}
};

// Dense univariate polynomial over an exact scalar, coefficients lowest first.
// The zero polynomial carries no coefficients, so equality is plain vector
// equality and degree() is -1.
template <class S>
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<S> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(S(1)); }
  static Poly constant(const S& c) {
    Poly p;
    p.c_.push_back(c);
    p.trim();
    return p;
  }
  static Poly x() { return monomial(1); }
  static Poly monomial(int k, const S& coeff = S(1)) {
    Poly p;
    p.c_.assign(static_cast<std::size_t>(k) + 1, S(0));
    p.c_.back() = coeff;
    p.trim();
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  // Coefficient of x^k; zero outside the stored range.
  const S& operator[](int k) const {
    static const S kZero{S(0)};
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(k)];
  }

  const S& leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  const std::vector<S>& coeffs() const { return c_; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
    r.trim();
    return r;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const S& s, const Poly& p) {
    Poly r = p;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& p, const S& s) { return s * p; }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly divided_by(const S& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c /= s;
    return r;
  }

  S operator()(const S& x) const {
    S acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    Poly r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = S(static_cast<long>(i)) * c_[i];
    r.trim();
    return r;
  }

  // p(-x): flip the sign of odd-power coefficients.
  Poly reflect() const {
    Poly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  // p(a*x + b), exact (Horner in the linear argument).
  Poly compose_affine(const S& a, const S& b) const {
    Poly lin;
    lin.c_ = {b, a};
    lin.trim();
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(c_[i]);
    return acc;
  }

  Poly shift_plus() const { return compose_affine(S(1), S(1)); }        // p(x+1)
  Poly compose_neg_shift() const { return compose_affine(S(-1), S(-1)); }  // p(-x-1)

  // Quotient q with q*(a*x+b) == p; a nonzero remainder means a broken
  // invariant upstream, so it throws rather than returning a remainder.
  Poly exact_div_linear(const S& a, const S& b) const {
    if (a == S(0)) throw std::invalid_argument("exact_div_linear: a = 0");
    if (is_zero()) return Poly();
    const int n = degree();
    if (n == 0) {
      if (c_[0] == S(0)) return Poly();
      throw exact_division_error("exact_div_linear: constant has nonzero remainder");
    }
    Poly q;
    q.c_.assign(static_cast<std::size_t>(n), S(0));
    q.c_[n - 1] = c_[n] / a;
    for (int j = n - 1; j >= 1; --j) q.c_[j - 1] = (c_[j] - b * q.c_[j]) / a;
    if (c_[0] != b * q.c_[0])
      throw exact_division_error("exact_div_linear: nonzero remainder");
    q.trim();
    return q;
  }

  // Coefficient-wise conversion, e.g. Poly<Rat> -> Poly<GaussRat>.
  template <class T, class Fn>
  Poly<T> map(Fn&& fn) const {
    std::vector<T> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(fn(c));
    return Poly<T>(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == S(0)) c_.pop_back();
  }

  std::vector<S> c_;
};

using RPoly = Poly<Rat>;
using GPoly = Poly<GaussRat>;

inline GPoly to_gauss(const RPoly& p) {
  return p.map<GaussRat>([](const Rat& c) { return GaussRat(c); });
}

inline std::string poly_str(const RPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    if (p[k] == 0) continue;
    if (!out.empty()) out += (p[k] > 0) ? " + " : " - ";
    else if (p[k] < 0) out += "-";
    const Rat a = p[k] < 0 ? Rat(-p[k]) : p[k];
    if (k == 0 || a != 1) out += rat_str(a);
    if (k > 0) {
      if (a != 1) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

// Interpolation basis phi_n: degree n, two interleaved rising-factorial
// products; leading coefficient (-1)^{n(n-1)/2}.
inline RPoly phi_basis(unsigned n, const Rat& r1) {
  const unsigned m = n / 2;
  RPoly p = RPoly::one();
  for (unsigned j = 0; j < m + (n % 2); ++j)
    p *= RPoly{Rat(1, 2) - r1 + Rat(j), Rat(1)};      // (x - r1 + 1/2 + j)
  for (unsigned j = 0; j < m; ++j)
    p *= RPoly{Rat(1, 2) - r1 + Rat(j), Rat(-1)};     // (-x - r1 + 1/2 + j)
  return p;
}

// n-th interpolation node: phi_n = (-1)^{n(n-1)/2} prod_{i<=n} (x - node_i).
inline Rat newton_node(unsigned n, const Rat& r1) {
  if (n == 0) throw std::invalid_argument("newton_node: n >= 1 required");
  return (n % 2 == 1) ? Rat(r1 - Rat(n, 2)) : Rat(Rat(n - 1, 2) - r1);
}

}  // namespace bannai

#endif  // BANNAI_POLY_HPP

#ifndef BANNAI_RATIONAL_HPP
#define BANNAI_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bannai {

// Non-expression-template instantiations so arithmetic results are plain
// values and template deduction stays unsurprising.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

// Arbitrary-precision rational, always stored reduced with positive denominator.
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

class parse_error : public std::invalid_argument {
 public:
  explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

// Accepts "p" or "p/q" with an optional leading minus; q must be positive.
inline Rat parse_rat(std::string_view s) {
  auto fail = [&] { throw parse_error("not a rational: '" + std::string(s) + "'"); };
  if (s.empty()) fail();
  auto is_int = [&](std::string_view t) {
    if (!t.empty() && t.front() == '-') t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(s)) fail();
    return Rat(Int(std::string(s)));
  }
  const auto num = s.substr(0, slash);
  const auto den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-') fail();
  Int d{std::string(den)};
  if (d == 0) fail();
  return Rat(Int(std::string(num)), d);
}

inline std::string rat_str(const Rat& q) {
  std::string out = numerator(q).str();
  if (denominator(q) != 1) out += "/" + denominator(q).str();
  return out;
}

// Element of Q(i); all arithmetic stays exact.
struct GaussRat {
  Rat re{};
  Rat im{};

  GaussRat() = default;
  GaussRat(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  GaussRat conj() const { return GaussRat(re, -im); }
  Rat norm() const { return re * re + im * im; }
  bool is_real() const { return im == 0; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re + b.re, a.im + b.im);
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re - b.re, a.im - b.im);
  }
  GaussRat operator-() const { return GaussRat(-re, -im); }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    const Rat n = b.norm();
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    const GaussRat p = a * b.conj();
    return GaussRat(p.re / n, p.im / n);
  }
  GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
  GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
  GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
  GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

// Prints "p/q+r/si"; the imaginary part is always spelled out.
inline std::string gauss_str(const GaussRat& z) {
  std::string out = rat_str(z.re);
  out += (z.im < 0) ? "-" : "+";
  out += rat_str(z.im < 0 ? Rat(-z.im) : z.im) + "i";
  return out;
}

inline GaussRat parse_gauss(std::string_view s) {
  if (s.empty() || s.back() != 'i') return GaussRat(parse_rat(s));
  std::string_view body = s.substr(0, s.size() - 1);
  // split at the sign separating re and im (skip a leading minus)
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' && body[k - 1] != '+' &&
        body[k - 1] != '-') {
      Rat re = parse_rat(body.substr(0, k));
      Rat im = parse_rat(body.substr(body[k] == '+' ? k + 1 : k));
      return GaussRat(std::move(re), std::move(im));
    }
  }
  return GaussRat(Rat(0), parse_rat(body));
}

// Rising factorial x(x+1)...(x+n-1); empty product for n = 0.
template <class S>
S pochhammer(const S& x, unsigned n) {
  S acc(1);
  S t = x;
  for (unsigned k = 0; k < n; ++k) {
    acc *= t;
    t += S(1);
  }
  return acc;
}

inline Rat factorial(unsigned n) { return pochhammer(Rat(1), n); }

// sign * exp(log_abs); sign 0 encodes an exact zero.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend SignedLog operator*(const SignedLog& a, const SignedLog& b) {
    if (a.sign == 0 || b.sign == 0) return SignedLog{};
    return SignedLog{a.log_abs + b.log_abs, a.sign * b.sign};
  }
  friend SignedLog operator/(const SignedLog& a, const SignedLog& b) {
    if (b.sign == 0) throw std::domain_error("SignedLog division by exact zero");
    if (a.sign == 0) return SignedLog{};
    return SignedLog{a.log_abs - b.log_abs, a.sign * b.sign};
  }
};

class gamma_pole_error : public std::domain_error {
 public:
  explicit gamma_pole_error(double x)
      : std::domain_error("gamma pole at x = " + std::to_string(x)) {}
};

// Gamma(x) as sign and log magnitude. Negative non-integer arguments go through
// Gamma(x)Gamma(1-x) = pi/sin(pi x).
inline SignedLog lgamma_signed(double x) {
  if (x > 0.0) return SignedLog{std::lgamma(x), 1};
  if (x == std::floor(x)) throw gamma_pole_error(x);
  const double s = std::sin(M_PI * x);
  return SignedLog{std::log(M_PI) - std::log(std::abs(s)) - std::lgamma(1.0 - x),
                   s > 0 ? 1 : -1};
}

}  // namespace bannai

#endif  // BANNAI_RATIONAL_HPP

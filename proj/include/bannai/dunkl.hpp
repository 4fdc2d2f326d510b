#ifndef BANNAI_DUNKL_HPP
#define BANNAI_DUNKL_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bannai/poly.hpp"
#include "bannai/rational.hpp"
#include "bannai/report.hpp"

namespace bannai {

class invalid_params_error : public std::invalid_argument {
 public:
  explicit invalid_params_error(const std::string& what) : std::invalid_argument(what) {}
};
class degenerate_operator_error : public invalid_params_error {
 public:
  explicit degenerate_operator_error(const std::string& what) : invalid_params_error(what) {}
};
class irrational_roots_error : public invalid_params_error {
 public:
  explicit irrational_roots_error(const std::string& what) : invalid_params_error(what) {}
};

// The four operator parameters, validated up to a degree horizon: eigenvalues
// lambda_0..lambda_{max_degree} pairwise distinct and nonzero past n = 0, and
// the recurrence denominators g + n nonzero for n = 1..max_degree+1.
struct BIParams {
  Rat r1, r2, rho1, rho2;
  int max_degree = 32;

  Rat g() const { return rho1 + rho2 - r1 - r2; }
  Rat kappa() const { return g() + Rat(1, 2); }
  Rat omega1() const { return 4 * (rho1 * rho2 + r1 * r2); }
  Rat omega2() const { return 2 * (rho1 * rho1 + rho2 * rho2 - r1 * r1 - r2 * r2); }
  Rat omega3() const { return 4 * (rho1 * rho2 - r1 * r2); }
};

inline Rat lambda_n(const BIParams& p, int n) {
  if (n % 2 == 0) return Rat(n, 2);
  return p.r1 + p.r2 - p.rho1 - p.rho2 - Rat(n + 1, 2);
}

inline Rat nu_n(const BIParams& p, int n) {
  if (n < 1) throw std::invalid_argument("nu_n: n >= 1 required");
  if (n % 2 == 0) return Rat(n, 2) * (p.r1 + p.r2 - Rat(n, 2));
  return (p.rho1 - p.r1 + Rat(n, 2)) * (p.rho2 - p.r1 + Rat(n, 2));
}

inline Rat mu_n(const BIParams& p, int n) {
  const Rat v = Rat(n) + p.kappa();
  return (n % 2 == 0) ? v : Rat(-v);
}

inline std::optional<std::string> check_bi_params(const BIParams& p) {
  const Rat g = p.g();
  for (int n = 1; n <= p.max_degree + 1; ++n)
    if (g + n == 0)
      return "recurrence denominator g+n=0 at n=" + std::to_string(n) +
             " (g = " + rat_str(g) + ")";
  for (int n = 1; n <= p.max_degree; ++n) {
    const Rat ln = lambda_n(p, n);
    if (ln == 0) return "eigenvalue lambda_n=0 at n=" + std::to_string(n);
    for (int m = 0; m < n; ++m)
      if (ln == lambda_n(p, m))
        return "eigenvalue collision lambda_" + std::to_string(n) + " = lambda_" +
               std::to_string(m);
  }
  return std::nullopt;
}

inline BIParams make_bi_params(Rat r1, Rat r2, Rat rho1, Rat rho2, int max_degree = 32) {
  BIParams p{std::move(r1), std::move(r2), std::move(rho1), std::move(rho2), max_degree};
  if (auto why = check_bi_params(p)) throw invalid_params_error(*why);
  return p;
}

namespace detail {

inline RPoly f_numer(const BIParams& p) {  // (x - rho1)(x - rho2)
  return RPoly{-p.rho1, Rat(1)} * RPoly{-p.rho2, Rat(1)};
}
inline RPoly g_numer(const BIParams& p) {  // (x - r1 + 1/2)(x - r2 + 1/2)
  return RPoly{Rat(1, 2) - p.r1, Rat(1)} * RPoly{Rat(1, 2) - p.r2, Rat(1)};
}

}  // namespace detail

// L f = F(x)(f(x) - f(-x)) + G(x)(f(-x-1) - f(x)); both divisions are exact
// because f - f(-x) vanishes at 0 and f(-x-1) - f(x) vanishes at -1/2.
inline RPoly apply_L(const BIParams& p, const RPoly& f) {
  const RPoly odd = f - f.reflect();
  const RPoly across = f.compose_neg_shift() - f;
  RPoly out;
  if (!odd.is_zero())
    out += detail::f_numer(p) * odd.exact_div_linear(Rat(2), Rat(0));
  if (!across.is_zero())
    out += detail::g_numer(p) * across.exact_div_linear(Rat(2), Rat(1));
  return out;
}

inline RPoly apply_X(const BIParams& p, const RPoly& f) {
  return Rat(2) * apply_L(p, f) + p.kappa() * f;
}

inline RPoly apply_Y(const BIParams&, const RPoly& f) {
  return RPoly{Rat(1, 2), Rat(2)} * f;  // (2x + 1/2) f
}

// Z = r1 r2/(x+1/2) + rho1 rho2/x - ((x-rho1)(x-rho2)/x) R
//     - ((x-r1+1/2)(x-r2+1/2)/(x+1/2)) T+R, grouped per denominator.
inline RPoly apply_Z(const BIParams& p, const RPoly& f) {
  const RPoly t1 = p.rho1 * p.rho2 * f - detail::f_numer(p) * f.reflect();
  const RPoly t2 = p.r1 * p.r2 * f - detail::g_numer(p) * f.compose_neg_shift();
  RPoly out;
  if (!t1.is_zero()) out += t1.exact_div_linear(Rat(1), Rat(0));
  if (!t2.is_zero()) out += t2.exact_div_linear(Rat(1), Rat(1, 2));
  return out;
}

inline RPoly apply_Jplus(const BIParams& p, const RPoly& f) {
  const RPoly t = apply_X(p, f) - Rat(1, 2) * f;
  return apply_Y(p, t) + apply_Z(p, t) - (p.omega2() + p.omega3()) / 2 * f;
}

inline RPoly apply_Jminus(const BIParams& p, const RPoly& f) {
  const RPoly t = apply_X(p, f) + Rat(1, 2) * f;
  return apply_Y(p, t) - apply_Z(p, t) + (p.omega2() - p.omega3()) / 2 * f;
}

// V = J+(X+1/2) + J-(X-1/2).
inline RPoly apply_V(const BIParams& p, const RPoly& f) {
  return apply_Jplus(p, apply_X(p, f) + Rat(1, 2) * f) +
         apply_Jminus(p, apply_X(p, f) - Rat(1, 2) * f);
}

// Equivalent closed form 2Y(X^2 - 1/4) - omega3 X - omega2/2.
inline RPoly apply_V_alt(const BIParams& p, const RPoly& f) {
  const RPoly x2 = apply_X(p, apply_X(p, f)) - Rat(1, 4) * f;
  return Rat(2) * apply_Y(p, x2) - p.omega3() * apply_X(p, f) - p.omega2() / 2 * f;
}

struct LadderCoeffs {
  Rat alpha0, alpha1, beta0, beta1;
};

inline LadderCoeffs ladder_coeffs(const BIParams& p, int n) {
  const Rat srr = p.r1 + p.r2;
  const Rat srho = p.rho1 + p.rho2;
  const Rat d_plus = srr - srho - n;   // alpha0 denominator
  const Rat d_minus = srho - srr + n;  // beta1 denominator
  if (d_plus == 0 || d_minus == 0)
    throw invalid_params_error("ladder_coeffs: zero denominator at n=" + std::to_string(n));
  LadderCoeffs lc;
  lc.alpha0 = 2 * n * (srho + Rat(n, 2)) * (srr - Rat(n, 2)) * (srr - srho - Rat(n, 2)) / d_plus;
  lc.alpha1 = 4 * (srr - srho - n - 1);
  lc.beta0 = -lc.alpha1;
  lc.beta1 = 4 * (p.rho1 - p.r1 + Rat(n, 2)) * (p.rho1 - p.r2 + Rat(n, 2)) *
             (p.rho2 - p.r1 + Rat(n, 2)) * (p.rho2 - p.r2 + Rat(n, 2)) / d_minus;
  return lc;
}

// Coefficients of the raw operator L = F0 + F1 R + G1 T+R before the
// canonical split: F = (q1 + q2)/(2x), G = q2/(2x+1) with q1 = xi1 x + xi0,
// q2 = eta2 x^2 + eta1 x + eta0.
struct GeneralCoeffs {
  Rat xi0, xi1, eta0, eta1, eta2;
};

inline std::optional<Rat> rat_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  const Int n = numerator(q), d = denominator(q);
  const Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rat(sn, sd);
}

// Splits a monic quadratic x^2 + px + q over the rationals.
inline std::pair<Rat, Rat> split_quadratic(const Rat& pc, const Rat& qc) {
  const auto s = rat_sqrt(pc * pc - 4 * qc);
  if (!s) throw irrational_roots_error("quadratic does not split over the rationals");
  return {(-pc + *s) / 2, (-pc - *s) / 2};
}

// Normalizes eta2 to 1 and factors the two quadratics into the canonical
// (r1, r2, rho1, rho2) parametrization.
inline BIParams canonicalize(const GeneralCoeffs& gc, int max_degree = 32) {
  if (gc.eta2 == 0) throw degenerate_operator_error("eta2 = 0: operator drops degree");
  const Rat xi1 = gc.xi1 / gc.eta2;
  for (int N = 0; N <= max_degree; ++N)
    if (xi1 == N)
      throw degenerate_operator_error("xi1 = eta2*N at N=" + std::to_string(N) +
                                      ": operator drops degree");
  const Rat xi0 = gc.xi0 / gc.eta2, eta0 = gc.eta0 / gc.eta2, eta1 = gc.eta1 / gc.eta2;
  const auto [s1, s2] = split_quadratic(eta1, eta0);            // roots of q2
  const auto [rho1, rho2] = split_quadratic(xi1 + eta1, xi0 + eta0);  // roots of q1+q2
  return make_bi_params(s1 + Rat(1, 2), s2 + Rat(1, 2), rho1, rho2, max_degree);
}

inline GeneralCoeffs general_coeffs_of(const BIParams& p) {
  // q2 = (x-r1+1/2)(x-r2+1/2), q1 + q2 = (x-rho1)(x-rho2)
  const RPoly q2 = detail::g_numer(p);
  const RPoly q12 = detail::f_numer(p);
  const RPoly q1 = q12 - q2;
  return GeneralCoeffs{q1[0], q1[1], q2[0], q2[1], q2[2]};
}

using PolyOp = std::function<RPoly(const RPoly&)>;

// Builds the monic eigenpolynomials of a degree-preserving operator by
// back-substitution in the monomial basis.
inline std::vector<RPoly> eigen_solve(const PolyOp& op, const std::vector<Rat>& lambdas,
                                      int N) {
  if (static_cast<int>(lambdas.size()) < N + 1)
    throw std::invalid_argument("eigen_solve: need N+1 eigenvalues");
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j < i; ++j)
      if (lambdas[i] == lambdas[j])
        throw invalid_params_error("eigen_solve: repeated eigenvalue at " + std::to_string(i) +
                                   "," + std::to_string(j));
  std::vector<RPoly> images;
  images.reserve(N + 1);
  for (int k = 0; k <= N; ++k) {
    images.push_back(op(RPoly::monomial(k)));
    if (images[k].degree() != k)
      throw std::invalid_argument("eigen_solve: operator does not preserve degree at k=" +
                                  std::to_string(k));
    if (images[k][k] != lambdas[k])
      throw std::invalid_argument("eigen_solve: diagonal mismatch at k=" + std::to_string(k));
  }
  std::vector<RPoly> out;
  out.reserve(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::vector<Rat> c(static_cast<std::size_t>(n) + 1, Rat(0));
    c[n] = 1;
    for (int j = n - 1; j >= 0; --j) {
      Rat rhs(0);
      for (int k = j + 1; k <= n; ++k) rhs += c[k] * images[k][j];
      c[j] = rhs / (lambdas[n] - lambdas[j]);
    }
    out.push_back(RPoly(std::move(c)));
  }
  return out;
}

namespace detail {

// ((X + c)^2 - d^2) f, with X applied as an operator.
inline RPoly quadratic_in_X(const BIParams& p, const Rat& c, const Rat& d2, const RPoly& f) {
  const RPoly xf = apply_X(p, f);
  return apply_X(p, xf) + 2 * c * xf + (c * c - d2) * f;
}

}  // namespace detail

// Applies both sides of every algebra relation to the monomials x^k,
// k <= maxdeg, and records exact equality. Failures become report entries.
inline VerificationReport verify_algebra(const BIParams& p, int maxdeg) {
  VerificationReport rep;
  const Rat w1 = p.omega1(), w2 = p.omega2(), w3 = p.omega3();
  const Rat q_val = 2 * (p.rho1 * p.rho1 + p.rho2 * p.rho2 + p.r1 * p.r1 + p.r2 * p.r2) -
                    Rat(1, 4);
  const Rat sr = p.rho1 + p.rho2, dr = p.rho2 - p.rho1;
  const Rat rr2 = (p.r1 + p.r2) * (p.r1 + p.r2), dd2 = (p.r2 - p.r1) * (p.r2 - p.r1);
  for (int k = 0; k <= maxdeg; ++k) {
    const RPoly f = RPoly::monomial(k);
    const RPoly Xf = apply_X(p, f), Yf = apply_Y(p, f), Zf = apply_Z(p, f);
    auto record = [&](const char* name, const RPoly& lhs, const RPoly& rhs) {
      const RPoly diff = lhs - rhs;
      rep.add(name, k, diff.is_zero(), diff.is_zero() ? "" : poly_str(diff));
    };
    record("anticommutator {X,Y} = Z + omega3",
           apply_X(p, Yf) + apply_Y(p, Xf), Zf + w3 * f);
    record("anticommutator {Z,Y} = X + omega1",
           apply_Z(p, Yf) + apply_Y(p, Zf), Xf + w1 * f);
    record("anticommutator {X,Z} = Y + omega2",
           apply_X(p, Zf) + apply_Z(p, Xf), Yf + w2 * f);
    record("casimir X^2+Y^2+Z^2 scalar",
           apply_X(p, Xf) + apply_Y(p, Yf) + apply_Z(p, Zf), q_val * f);
    const RPoly Jp = apply_Jplus(p, f), Jm = apply_Jminus(p, f);
    record("anticommutator {X,J+} = J+", apply_X(p, Jp) + apply_Jplus(p, Xf), Jp);
    record("anticommutator {X,J-} = -J-", apply_X(p, Jm) + apply_Jminus(p, Xf), -Jm);
    record("J+^2 quartic in X", apply_Jplus(p, Jp),
           detail::quadratic_in_X(p, -sr - Rat(1, 2), rr2,
                                  detail::quadratic_in_X(p, sr - Rat(1, 2), rr2, f)));
    record("J-^2 quartic in X", apply_Jminus(p, Jm),
           detail::quadratic_in_X(p, p.rho1 - p.rho2 + Rat(1, 2), dd2,
                                  detail::quadratic_in_X(p, dr + Rat(1, 2), dd2, f)));
  }
  return rep;
}

}  // namespace bannai

#endif  // BANNAI_DUNKL_HPP

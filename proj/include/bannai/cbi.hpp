#ifndef BANNAI_CBI_HPP
#define BANNAI_CBI_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bannai/bipoly.hpp"
#include "bannai/dunkl.hpp"
#include "bannai/poly.hpp"
#include "bannai/rational.hpp"
#include "bannai/report.hpp"

namespace bannai {

// Kernel/Christoffel transform at theta: W_n = (P_{n+1} - A_n P_n)/(x - theta).
// The division must be exact; a nonzero remainder means the A_n are wrong.
inline std::vector<RPoly> christoffel(const std::vector<RPoly>& P, const std::vector<Rat>& A,
                                      const Rat& theta) {
  if (P.size() < 2 || A.size() + 1 < P.size())
    throw std::invalid_argument("christoffel: need P_0..P_{n+1} and A_0..A_n");
  std::vector<RPoly> W;
  W.reserve(P.size() - 1);
  for (std::size_t n = 0; n + 1 < P.size(); ++n)
    W.push_back((P[n + 1] - A[n] * P[n]).exact_div_linear(Rat(1), -theta));
  return W;
}

// A_n = P_{n+1}(theta)/P_n(theta); theta must avoid the zeros of every P_n.
inline std::vector<Rat> christoffel_ratios(const std::vector<RPoly>& P, const Rat& theta) {
  std::vector<Rat> A;
  A.reserve(P.size() - 1);
  for (std::size_t n = 0; n + 1 < P.size(); ++n) {
    const Rat pn = P[n](theta);
    if (pn == 0)
      throw std::domain_error("christoffel: P_n(theta) = 0 at n=" + std::to_string(n));
    A.push_back(P[n + 1](theta) / pn);
  }
  return A;
}

// Inverse (Geronimus) step: P_n = W_n - C_n W_{n-1}, C_0 = 0.
inline std::vector<RPoly> geronimus_reconstruct(const std::vector<RPoly>& W,
                                                const std::vector<Rat>& C) {
  std::vector<RPoly> P;
  P.reserve(W.size());
  for (std::size_t n = 0; n < W.size(); ++n)
    P.push_back(n == 0 ? W[0] : W[n] - C[n] * W[n - 1]);
  return P;
}

// Recurrence data of the companion polynomials: v_{2m} and v_{2m+1}.
inline Rat cbi_v(const BIParams& p, int n) {
  const Rat g = p.g();
  if (n % 2 == 0) {
    const int m = n / 2;
    const Rat den = (2 * m + 1 + g) * (Rat(2 * m) + g);
    if (den == 0) throw zero_denominator_error("cbi_v: zero denominator at n=" + std::to_string(n));
    return -(Rat(m) * (m + p.rho1 - p.r1 + Rat(1, 2)) * (m + p.rho1 - p.r2 + Rat(1, 2)) *
             (Rat(m) - p.r1 - p.r2)) / den;
  }
  const int m = (n - 1) / 2;
  const Rat den = (2 * m + 1 + g) * (Rat(2 * m + 2) + g);
  if (den == 0) throw zero_denominator_error("cbi_v: zero denominator at n=" + std::to_string(n));
  return -((Rat(m) + g + 1) * (m + p.rho1 + p.rho2 + 1) * (m + p.rho2 - p.r1 + Rat(1, 2)) *
           (m + p.rho2 - p.r2 + Rat(1, 2))) / den;
}

struct CBITable {
  int N = 0;                // W_0..W_N available
  std::vector<Rat> v;       // v_0..v_N
  std::vector<RPoly> W;
};

// Companion polynomials of the BI family at theta = rho1, with their
// recurrence data. Parity/divisibility invariants are enforced.
inline CBITable cbi_table(const BIParams& p, int N) {
  const std::vector<RPoly> P = generate_P(p, N + 1);
  std::vector<Rat> A;
  for (int n = 0; n <= N; ++n) A.push_back(coeff_A(p, n));
  CBITable t;
  t.N = N;
  t.W = christoffel(P, A, p.rho1);
  for (int n = 0; n <= N; ++n) t.v.push_back(cbi_v(p, n));
  for (int n = 0; n <= N; ++n) {
    if (n % 2 == 0) {
      for (int k = 1; k <= t.W[n].degree(); k += 2)
        if (t.W[n][k] != 0)
          throw std::logic_error("cbi_table: W_{2m} contains odd powers at n=" +
                                 std::to_string(n));
    } else if (t.W[n](p.rho2) != 0) {
      throw std::logic_error("cbi_table: W_{2m+1} not divisible by (x - rho2) at n=" +
                             std::to_string(n));
    }
  }
  return t;
}

// Even/odd split into polynomials of y = x^2: U_m(y) = W_{2m},
// V_m(y) = W_{2m+1}/(x - rho2).
inline std::pair<std::vector<RPoly>, std::vector<RPoly>> split_UV(const std::vector<RPoly>& W,
                                                                  const Rat& rho2) {
  std::vector<RPoly> U, V;
  auto even_to_y = [](const RPoly& w, const char* who) {
    std::vector<Rat> c;
    for (int k = 0; k <= w.degree(); ++k) {
      if (k % 2 == 1 && w[k] != 0)
        throw std::logic_error(std::string(who) + ": odd power present, parity violated");
      if (k % 2 == 0) c.push_back(w[k]);
    }
    return RPoly(std::move(c));
  };
  for (std::size_t n = 0; n < W.size(); ++n) {
    if (n % 2 == 0) {
      U.push_back(even_to_y(W[n], "split_UV: W_{2m}"));
    } else {
      V.push_back(even_to_y(W[n].exact_div_linear(Rat(1), -rho2), "split_UV: W_{2m+1}/(x-rho2)"));
    }
  }
  return {std::move(U), std::move(V)};
}

enum class WilsonKind { U, V };

// Terminating 4F3 built termwise in y = x^2 through the conjugate-pair product
// (c+x)_k (c-x)_k = prod_{j<k} ((c+j)^2 - y), then scaled monic.
inline RPoly wilson_4F3(WilsonKind kind, int n, const BIParams& p) {
  const Rat g = p.g();
  const Rat shift = kind == WilsonKind::U ? Rat(0) : Rat(1);
  const Rat c = p.rho2 + shift;
  const Rat top2 = g + n + 1 + shift;
  const Rat d1 = p.rho1 + p.rho2 + 1 + shift;
  const Rat d2 = p.rho2 - p.r1 + Rat(1, 2) + shift;
  const Rat d3 = p.rho2 - p.r2 + Rat(1, 2) + shift;
  RPoly acc;
  RPoly prod = RPoly::one();  // prod_{j<k} ((c+j)^2 - y)
  for (int k = 0; k <= n; ++k) {
    const Rat den = pochhammer(d1, k) * pochhammer(d2, k) * pochhammer(d3, k) * factorial(k);
    if (den == 0)
      throw zero_denominator_error("wilson_4F3: zero pochhammer in denominator at k=" +
                                   std::to_string(k));
    acc += pochhammer(Rat(-n), k) * pochhammer(top2, k) / den * prod;
    prod *= RPoly{(c + k) * (c + k), Rat(-1)};
  }
  return acc.divided_by(acc.leading());
}

// Closed monic normalizer of the n-th Wilson form (the factor the termwise
// build divides out); second pochhammer carries r2.
inline Rat wilson_kappa(WilsonKind kind, int n, const BIParams& p) {
  const Rat g = p.g();
  const Rat shift = kind == WilsonKind::U ? Rat(0) : Rat(1);
  return pochhammer(p.rho1 + p.rho2 + 1 + shift, n) *
         pochhammer(p.rho2 - p.r1 + Rat(1, 2) + shift, n) *
         pochhammer(p.rho2 - p.r2 + Rat(1, 2) + shift, n) /
         pochhammer(g + n + 1 + shift, n);
}

// Symmetric-case recurrence coefficient after x -> ix: u~_n.
inline Rat stilde_u(const Rat& r1, const Rat& r2, int n) {
  if (n % 2 == 0) return Rat(n) * (Rat(n) - 4 * (r1 + r2)) / 16;
  return (Rat(n) - 4 * r1) * (Rat(n) - 4 * r2) / 16;
}

// Monic symmetric polynomials S~_n: S~_{n+1} = x S~_n - u~_n S~_{n-1}.
inline std::vector<RPoly> symmetric_stilde(const Rat& r1, const Rat& r2, int N) {
  std::vector<RPoly> S;
  S.reserve(N + 1);
  S.push_back(RPoly::one());
  if (N >= 1) S.push_back(RPoly::x());
  for (int n = 1; n < N; ++n)
    S.push_back(RPoly::x() * S[n] - stilde_u(r1, r2, n) * S[n - 1]);
  return S;
}

inline Rat lambda_symmetric(const Rat& r1, const Rat& r2, int n) {
  if (n % 2 == 0) return Rat(n, 2);
  return 2 * (r1 + r2) - Rat(n + 1, 2);
}

// Continuous dual Hahn 3F2 route to S~: even parity gives S~_{2n}, odd gives
// S~_{2n+1}. The conjugate products are formed in Q(i) and the imaginary
// parts asserted to vanish.
inline RPoly dual_hahn_3F2(int n, const Rat& a, const Rat& b, int parity) {
  if (parity != 0 && parity != 1) throw std::invalid_argument("dual_hahn_3F2: parity 0 or 1");
  const Rat bot1 = parity == 0 ? a : a + 1;
  const Rat bot2 = a + b;
  GPoly acc;
  GPoly prod = GPoly({GaussRat(1)});  // prod_{j<k} (a+j+2ix)(a+j-2ix)
  for (int k = 0; k <= n; ++k) {
    const Rat den = pochhammer(bot1, k) * pochhammer(bot2, k) * factorial(k);
    if (den == 0)
      throw zero_denominator_error("dual_hahn_3F2: zero pochhammer in denominator at k=" +
                                   std::to_string(k));
    acc += GaussRat(pochhammer(Rat(-n), k) / den) * prod;
    prod *= GPoly({GaussRat(a + k), GaussRat(Rat(0), Rat(2))}) *
            GPoly({GaussRat(a + k), GaussRat(Rat(0), Rat(-2))});
  }
  std::vector<Rat> real_coeffs;
  for (int k = 0; k <= acc.degree(); ++k) {
    if (acc[k].im != 0)
      throw std::logic_error("dual_hahn_3F2: nonreal coefficient survived conjugate pairing");
    real_coeffs.push_back(acc[k].re);
  }
  RPoly series(std::move(real_coeffs));
  // normalizer (-1)^n 2^{-2n} (bot1)_n (a+b)_n makes the result monic
  const Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
  const Rat norm = sign * pochhammer(bot1, n) * pochhammer(bot2, n) / Rat(Int(1) << (2 * n));
  RPoly out = norm * series;
  if (parity == 1) out = RPoly::x() * out;
  return out;
}

// Residuals of the symmetric-case difference equation, and of its ordinary
// (r2 = 0) second-order form, as exact polynomials over Q(i).
inline VerificationReport verify_symmetric_difference_eq(const Rat& r1, const Rat& r2,
                                                         int nmax) {
  VerificationReport rep;
  const Rat a = -2 * r1 + Rat(1, 2), b = -2 * r2 + Rat(1, 2);
  const GaussRat half_i(Rat(0), Rat(1, 2));
  const std::vector<RPoly> S = symmetric_stilde(r1, r2, nmax);
  // D = 2(y + i/4)(y - i/4); Phi1*D and Phi2*D are polynomials.
  const GPoly D{GaussRat(Rat(1, 8)), GaussRat(0), GaussRat(2)};
  const GPoly phi1D = GaussRat(Rat(0), Rat(-1)) *
                      GPoly({GaussRat(Rat(0), a / 2), GaussRat(1)}) *
                      GPoly({GaussRat(Rat(0), b / 2), GaussRat(1)}) *
                      GPoly({GaussRat(Rat(0), Rat(-1, 4)), GaussRat(1)});
  const GPoly phi2D = GaussRat(Rat(0), Rat(1)) *
                      GPoly({GaussRat(Rat(0), -a / 2), GaussRat(1)}) *
                      GPoly({GaussRat(Rat(0), -b / 2), GaussRat(1)}) *
                      GPoly({GaussRat(Rat(0), Rat(1, 4)), GaussRat(1)});
  for (int n = 0; n <= nmax; ++n) {
    const GPoly Sg = to_gauss(S[n]);
    const GPoly s_mm = Sg.compose_affine(GaussRat(-1), -half_i);  // S(-y - i/2)
    const GPoly s_mp = Sg.compose_affine(GaussRat(-1), half_i);   // S(-y + i/2)
    const GaussRat lam(lambda_symmetric(r1, r2, n));
    const GPoly res =
        phi1D * s_mm + phi2D * s_mp - (phi1D + phi2D) * Sg - lam * (D * Sg);
    rep.add("symmetric difference equation residual", n, res.is_zero(),
            res.is_zero() ? "" : "nonzero residual");
    if (r2 == 0) {
      const GPoly s_pp = Sg.compose_affine(GaussRat(1), half_i);   // S(y + i/2)
      const GPoly s_pm = Sg.compose_affine(GaussRat(1), -half_i);  // S(y - i/2)
      const GPoly lhs = GaussRat(Rat(0), Rat(-1, 4)) *
                            (GPoly({GaussRat(Rat(0), a), GaussRat(2)}) * s_pp) +
                        GaussRat(Rat(0), Rat(1, 4)) *
                            (GPoly({GaussRat(Rat(0), -a), GaussRat(2)}) * s_pm) -
                        GaussRat((a + n) / 2) * Sg;
      rep.add("ordinary imaginary-grid difference equation residual", n, lhs.is_zero(),
              lhs.is_zero() ? "" : "nonzero residual");
    }
  }
  return rep;
}

}  // namespace bannai

#endif  // BANNAI_CBI_HPP

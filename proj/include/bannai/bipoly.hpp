#ifndef BANNAI_BIPOLY_HPP
#define BANNAI_BIPOLY_HPP

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannai/dunkl.hpp"
#include "bannai/poly.hpp"
#include "bannai/rational.hpp"

namespace bannai {

class zero_denominator_error : public std::domain_error {
 public:
  explicit zero_denominator_error(const std::string& what) : std::domain_error(what) {}
};
class zero_nu_error : public std::domain_error {
 public:
  explicit zero_nu_error(const std::string& what) : std::domain_error(what) {}
};

inline Rat coeff_A(const BIParams& p, int n) {
  const Rat den = 4 * (Rat(n + 1) - p.r1 - p.r2 + p.rho1 + p.rho2);
  if (den == 0) throw zero_denominator_error("recurrence denominator g+n=0 at n=" +
                                             std::to_string(n + 1));
  if (n % 2 == 0)
    return (Rat(n + 1) + 2 * p.rho1 - 2 * p.r1) * (Rat(n + 1) + 2 * p.rho1 - 2 * p.r2) / den;
  return (Rat(n + 1) - 2 * p.r1 - 2 * p.r2 + 2 * p.rho1 + 2 * p.rho2) *
         (Rat(n + 1) + 2 * p.rho1 + 2 * p.rho2) / den;
}

inline Rat coeff_C(const BIParams& p, int n) {
  if (n == 0) return Rat(0);
  const Rat den = 4 * (Rat(n) - p.r1 - p.r2 + p.rho1 + p.rho2);
  if (den == 0) throw zero_denominator_error("recurrence denominator g+n=0 at n=" +
                                             std::to_string(n));
  if (n % 2 == 0) return -(Rat(n) * (Rat(n) - 2 * p.r1 - 2 * p.r2)) / den;
  return -((Rat(n) - 2 * p.r2 + 2 * p.rho2) * (Rat(n) - 2 * p.r1 + 2 * p.rho2)) / den;
}

inline Rat coeff_b(const BIParams& p, int n) { return p.rho1 - coeff_A(p, n) - coeff_C(p, n); }
inline Rat coeff_u(const BIParams& p, int n) { return coeff_A(p, n - 1) * coeff_C(p, n); }

// Closed forms for u_n; the product A_{n-1}C_n is cross-checked against these
// on every table build.
inline Rat closed_u(const BIParams& p, int n) {
  const Rat den = Rat(n) + p.g();
  if (den == 0) throw zero_denominator_error("recurrence denominator g+n=0 at n=" +
                                             std::to_string(n));
  const Rat den16 = 16 * den * den;
  if (n % 2 == 0)
    return -(Rat(n) * (Rat(n) + 2 * p.rho1 + 2 * p.rho2) * (Rat(n) - 2 * p.r1 - 2 * p.r2) *
             (Rat(n) + 2 * (p.rho1 + p.rho2 - p.r1 - p.r2))) / den16;
  return -((Rat(n) + 2 * p.rho1 - 2 * p.r1) * (Rat(n) + 2 * p.rho1 - 2 * p.r2) *
           (Rat(n) + 2 * p.rho2 - 2 * p.r1) * (Rat(n) + 2 * p.rho2 - 2 * p.r2)) / den16;
}

// b_n from the algebra route: -1/4 + (omega3 mu_n + omega2/2)/(4 mu_n^2 - 1).
inline Rat closed_b(const BIParams& p, int n) {
  const Rat mu = mu_n(p, n);
  const Rat den = 4 * mu * mu - 1;
  if (den == 0) throw zero_denominator_error("4 mu_n^2 - 1 = 0 at n=" + std::to_string(n));
  return Rat(-1, 4) + (p.omega3() * mu + p.omega2() / 2) / den;
}

struct RecurrenceTable {
  int N = 0;
  std::vector<Rat> A, C, b;  // indices 0..N
  std::vector<Rat> u;        // indices 0..N+1, u[0] = 0 by convention (C_0 = 0)
  std::vector<Rat> h;        // h[n] = u_1 ... u_n, h[0] = 1
};

inline RecurrenceTable recurrence_coeffs(const BIParams& p, int N) {
  RecurrenceTable t;
  t.N = N;
  t.A.reserve(N + 1);
  t.C.reserve(N + 1);
  t.b.reserve(N + 1);
  t.u.assign(1, Rat(0));
  t.h.assign(1, Rat(1));
  for (int n = 0; n <= N; ++n) {
    t.A.push_back(coeff_A(p, n));
    t.C.push_back(coeff_C(p, n));
    t.b.push_back(p.rho1 - t.A[n] - t.C[n]);
    if (t.b[n] != closed_b(p, n))
      throw std::logic_error("recurrence table: b_n routes disagree at n=" + std::to_string(n));
  }
  for (int n = 1; n <= N + 1; ++n) {
    const Rat u = coeff_u(p, n);
    if (u != closed_u(p, n))
      throw std::logic_error("recurrence table: u_n routes disagree at n=" + std::to_string(n));
    t.u.push_back(u);
    if (n <= N) t.h.push_back(t.h[n - 1] * u);
  }
  return t;
}

// Monic P_0..P_N from the three-term recurrence P_{n+1} = (x-b_n)P_n - u_n P_{n-1}.
inline std::vector<RPoly> generate_P(const BIParams& p, int N) {
  std::vector<RPoly> P;
  P.reserve(N + 1);
  P.push_back(RPoly::one());
  if (N >= 1) P.push_back(RPoly{-coeff_b(p, 0), Rat(1)});
  for (int n = 1; n < N; ++n)
    P.push_back(RPoly{-coeff_b(p, n), Rat(1)} * P[n] - coeff_u(p, n) * P[n - 1]);
  return P;
}

struct ExpansionTable {
  int n = 0;
  std::vector<Rat> rel;  // A_{ns}/A_{n0} for s = 0..n
};

// Coefficients of P_n over the phi basis, built by the two-diagonal recursion
// A_{n,s+1} = A_{ns}(lambda_n - lambda_s)/nu_{s+1}.
inline ExpansionTable expansion_coeffs(const BIParams& p, int n) {
  ExpansionTable t;
  t.n = n;
  t.rel.assign(1, Rat(1));
  for (int s = 0; s < n; ++s) {
    const Rat nu = nu_n(p, s + 1);
    if (nu == 0)
      throw zero_nu_error("nu_s = 0 at s=" + std::to_string(s + 1) +
                          ": parameter degeneracy, expansion path unavailable");
    t.rel.push_back(t.rel[s] * (lambda_n(p, n) - lambda_n(p, s)) / nu);
  }
  return t;
}

// Closed hypergeometric form of A_{ns}/A_{n0}; the even-n families carry the
// pochhammer (n/2 + 1 + g)_t.
inline Rat closed_expansion_rel(const BIParams& p, int n, int s) {
  const Rat g = p.g();
  const Rat pr1 = Rat(1, 2) + p.rho1 - p.r1, pr2 = Rat(1, 2) + p.rho2 - p.r1;
  const Rat onemr = Rat(1) - p.r1 - p.r2;
  const unsigned t = static_cast<unsigned>(s / 2);
  if (n % 2 == 0) {
    if (s % 2 == 0)
      return pochhammer(Rat(-n, 2), t) * pochhammer(Rat(n, 2) + 1 + g, t) /
             (factorial(t) * pochhammer(onemr, t) * pochhammer(pr1, t) * pochhammer(pr2, t));
    const Rat xi = Rat(n) / (2 * pr1 * pr2);
    return xi * pochhammer(Rat(1) - Rat(n, 2), t) * pochhammer(Rat(n, 2) + 1 + g, t) /
           (factorial(t) * pochhammer(onemr, t) * pochhammer(pr1 + 1, t) *
            pochhammer(pr2 + 1, t));
  }
  if (s % 2 == 0)
    return pochhammer(Rat(1 - n, 2), t) * pochhammer(Rat(n + 1, 2) + g, t) /
           (factorial(t) * pochhammer(onemr, t) * pochhammer(pr1, t) * pochhammer(pr2, t));
  const Rat eta = (Rat(n + 1, 2) + g) / (pr1 * pr2);
  return -eta * pochhammer(Rat(1 - n, 2), t) * pochhammer(Rat(n + 3, 2) + g, t) /
         (factorial(t) * pochhammer(onemr, t) * pochhammer(pr1 + 1, t) * pochhammer(pr2 + 1, t));
}

// Sum of the expansion over the phi basis, scaled monic.
inline RPoly reconstruct_from_phi(const BIParams& p, int n) {
  const ExpansionTable t = expansion_coeffs(p, n);
  RPoly acc;
  for (int s = 0; s <= n; ++s) acc += t.rel[s] * phi_basis(s, p.r1);
  return acc.divided_by(acc.leading());
}

// The four phi-expansion term families are zero-balanced: numerator parameter
// sums equal denominator parameter sums once the x-pair contributes 1 - 2 r1.
inline bool balance_check(const BIParams& p, int n) {
  const Rat g = p.g();
  const Rat xpair = Rat(1) - 2 * p.r1;
  const Rat den_lo = (Rat(1) - p.r1 - p.r2) + (Rat(1, 2) + p.rho1 - p.r1) +
                     (Rat(1, 2) + p.rho2 - p.r1);
  const Rat den_hi = den_lo + 2;
  if (n % 2 == 0) {
    if (Rat(-n, 2) + (Rat(n, 2) + 1 + g) + xpair != den_lo) return false;
    if ((Rat(1) - Rat(n, 2)) + (Rat(n, 2) + 1 + g) + (xpair + 1) != den_hi) return false;
  } else {
    if (Rat(1 - n, 2) + (Rat(n + 1, 2) + g) + xpair != den_lo) return false;
    if (Rat(1 - n, 2) + (Rat(n + 3, 2) + g) + (xpair + 1) != den_hi) return false;
  }
  return true;
}

// Finite positive-definite family, even N: pins 2(r2 - rho2) = N + 1 via
// r2 = r1+e+N/2, rho1 = r1+e+d+(N-1)/2, rho2 = r1-1/2+e with r1, e, d > 0.
inline BIParams truncation_even(const Rat& r1, const Rat& e, const Rat& d, int N) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("truncation_even: N even >= 2");
  if (!(r1 > 0 && e > 0 && d > 0))
    throw std::invalid_argument("truncation_even: r1, e, d must be positive");
  return make_bi_params(r1, r1 + e + Rat(N, 2), r1 + e + d + Rat(N - 1, 2),
                        r1 - Rat(1, 2) + e, N);
}

// Finite family, odd N, via r1 + r2 = (N+1)/2.
inline BIParams truncation_odd(const Rat& zeta, const Rat& eta, const Rat& xi, int N) {
  if (N < 3 || N % 2 != 1) throw std::invalid_argument("truncation_odd: N odd >= 3");
  if (!(zeta > 0 && eta > 0 && xi > 0 && xi > eta))
    throw std::invalid_argument("truncation_odd: need zeta, eta, xi > 0 and xi > eta");
  return make_bi_params((1 - zeta - eta) / 2, (eta + zeta + N) / 2, (eta - zeta) / 2,
                        (zeta - eta - 2 * xi - N + 1) / 2, N);
}

// The specialized u_n displayed for the even-N truncation parametrization.
inline Rat trunc_even_u_display(const Rat& r1, const Rat& e, const Rat& d, int N, int n) {
  const Rat den = 16 * (Rat(n - 1) + e + d) * (Rat(n - 1) + e + d);
  if (n % 2 == 0)
    return Rat(n) * (Rat(n) + 4 * r1 - 2 + 4 * e + 2 * d + N) *
           (Rat(-n) + 4 * r1 + 2 * e + N) * (Rat(n - 2) + 2 * e + 2 * d) / den;
  return (Rat(n - 1) + 2 * e + 2 * d + N) * (Rat(n - 1) + 2 * d) * (Rat(n - 1) + 2 * e) *
         Rat(-n + 1 + N) / den;
}

// The specialized u_n displayed for the odd-N truncation parametrization.
inline Rat trunc_odd_u_display(const Rat& zeta, const Rat& eta, const Rat& xi, int N, int n) {
  const Rat den = 16 * (Rat(N - n) + xi) * (Rat(N - n) + xi);
  if (n % 2 == 0)
    return Rat(n) * (Rat(N - n - 1) + 2 * xi) * Rat(N - n + 1) * (Rat(2 * N - n) + 2 * xi) /
           den;
  return (Rat(n - 1) + 2 * eta) * (Rat(N - n) + 2 * zeta) * (Rat(N - n) - 2 * zeta + 2 * xi) *
         (Rat(2 * N - n - 1) + 2 * eta + 2 * xi) / den;
}

// First index s in 1..N+1 with u_s <= 0, if any.
inline std::optional<int> positivity_scan(const RecurrenceTable& t) {
  for (int n = 1; n <= t.N + 1; ++n)
    if (t.u[n] <= 0) return n;
  return std::nullopt;
}

inline std::string recurrence_csv(const RecurrenceTable& t) {
  std::ostringstream os;
  os << "n,A,C,b,u,h\n";
  for (int n = 0; n <= t.N; ++n)
    os << n << ',' << rat_str(t.A[n]) << ',' << rat_str(t.C[n]) << ',' << rat_str(t.b[n])
       << ',' << rat_str(t.u[n]) << ',' << rat_str(t.h[n]) << '\n';
  return os.str();
}

inline nlohmann::ordered_json recurrence_json(const RecurrenceTable& t) {
  nlohmann::ordered_json j;
  j["N"] = t.N;
  auto emit = [](const std::vector<Rat>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& q : v) a.push_back(rat_str(q));
    return a;
  };
  j["A"] = emit(t.A);
  j["C"] = emit(t.C);
  j["b"] = emit(t.b);
  j["u"] = emit(t.u);
  j["h"] = emit(t.h);
  return j;
}

inline nlohmann::ordered_json poly_json(const RPoly& p) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (int k = 0; k <= p.degree(); ++k) a.push_back(rat_str(p[k]));
  return a;
}

}  // namespace bannai

#endif  // BANNAI_BIPOLY_HPP

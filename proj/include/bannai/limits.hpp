#ifndef BANNAI_LIMITS_HPP
#define BANNAI_LIMITS_HPP

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannai/bipoly.hpp"
#include "bannai/cbi.hpp"
#include "bannai/dunkl.hpp"
#include "bannai/poly.hpp"
#include "bannai/rational.hpp"
#include "bannai/report.hpp"

namespace bannai {

using Cplx = std::complex<double>;

class near_singular_error : public std::runtime_error {
 public:
  explicit near_singular_error(const std::string& what) : std::runtime_error(what) {}
};

enum class AWKind { bi, cbi };

// Askey-Wilson data on the q -> -1 ray q = -e^eps, with a,b,c,d on the
// imaginary-exponential curves that contract to the four BI parameters.
struct AWParams {
  Cplx a, b, c, d, q;
  double eps = 0.0;
};

inline AWParams aw_params(const BIParams& p, double eps, AWKind kind) {
  const double rho1 = to_double(p.rho1), rho2 = to_double(p.rho2);
  const double r1 = to_double(p.r1), r2 = to_double(p.r2);
  const Cplx i(0.0, 1.0);
  AWParams w;
  w.eps = eps;
  w.q = -std::exp(eps);
  if (kind == AWKind::bi) {
    w.a = -i * std::exp(eps * (2 * rho1 + 0.5));
  } else {
    // sign change in a and rho1 -> rho1 + 1/2
    w.a = i * std::exp(eps * (2 * rho1 + 1.5));
  }
  w.b = -i * std::exp(eps * (2 * rho2 + 0.5));
  w.c = i * std::exp(eps * (-2 * r2 + 0.5));
  w.d = i * std::exp(eps * (-2 * r1 + 0.5));
  return w;
}

inline std::pair<Cplx, Cplx> aw_recurrence(const AWParams& w, int n) {
  const Cplx abcd = w.a * w.b * w.c * w.d;
  auto qp = [&](int k) { return std::pow(w.q, k); };
  const Cplx dA1 = 1.0 - abcd * qp(2 * n - 1), dA2 = 1.0 - abcd * qp(2 * n);
  const Cplx dC2 = 1.0 - abcd * qp(2 * n - 2);
  for (const Cplx& den : {dA1, dA2, dC2})
    if (std::abs(den) < 1e-8)
      throw near_singular_error("aw_recurrence: denominator below 1e-8 at n=" +
                                std::to_string(n));
  const Cplx A = (1.0 - w.a * w.b * qp(n)) * (1.0 - w.a * w.c * qp(n)) *
                 (1.0 - w.a * w.d * qp(n)) * (1.0 - abcd * qp(n - 1)) / (w.a * dA1 * dA2);
  const Cplx C = w.a * (1.0 - qp(n)) * (1.0 - w.b * w.c * qp(n - 1)) *
                 (1.0 - w.b * w.d * qp(n - 1)) * (1.0 - w.c * w.d * qp(n - 1)) / (dA1 * dC2);
  return {A, C};
}

inline Cplx aw_omega(const AWParams& w, const Cplx& z) {
  return (1.0 - w.a * z) * (1.0 - w.b * z) * (1.0 - w.c * z) * (1.0 - w.d * z) /
         ((1.0 - z * z) * (1.0 - w.q * z * z));
}

inline Cplx aw_eigenvalue(const AWParams& w, int n) {
  return (std::pow(w.q, -n) - 1.0) * (1.0 - w.a * w.b * w.c * w.d * std::pow(w.q, n - 1));
}

struct LimitRow {
  double eps = 0.0;
  int n = 0;
  double err_b = 0.0;
  double err_u = 0.0;
};

struct LimitReport {
  AWKind kind = AWKind::bi;
  std::vector<LimitRow> rows;          // one per (eps, n)
  std::vector<double> decade_ratios;   // err(eps_{i+1})/err(eps_i), both error kinds
  double fitted_order = 0.0;           // mean slope of log err vs log eps
  bool monotone = true;
};

// Scaled monic AW recurrence data against the q = -1 target. The y-scale is
// s(eps) = 4i(1+q), the (1+q)-normalized leading order of z + 1/z under
// z = i e^{-2 eps y}.
inline LimitReport aw_limit_report(const BIParams& p, const std::vector<double>& eps_list,
                                   int N, AWKind kind) {
  LimitReport rep;
  rep.kind = kind;
  std::vector<std::vector<double>> errs(eps_list.size());
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    const double eps = eps_list[e];
    const AWParams w = aw_params(p, eps, kind);
    const Cplx s = Cplx(0.0, 4.0) * (1.0 + w.q);
    for (int n = 0; n <= N; ++n) {
      const auto [An, Cn] = aw_recurrence(w, n);
      const Cplx b_y = (w.a + 1.0 / w.a - An - Cn) / s;
      double tb;
      if (kind == AWKind::bi)
        tb = to_double(Rat(1, 4) + coeff_b(p, n));
      else
        tb = to_double(Rat(1, 4) + (n % 2 == 0 ? p.rho2 : Rat(-p.rho2)));
      LimitRow row{eps, n, std::abs(b_y - tb), 0.0};
      if (n >= 1) {
        const auto [Anm, Cnm] = aw_recurrence(w, n - 1);
        (void)Cnm;
        const Cplx u_y = Anm * Cn / (s * s);
        const double tu = to_double(kind == AWKind::bi ? coeff_u(p, n) : cbi_v(p, n));
        row.err_u = std::abs(u_y - tu);
      }
      rep.rows.push_back(row);
      errs[e].push_back(row.err_b);
      if (n >= 1) errs[e].push_back(row.err_u);
    }
  }
  double order_acc = 0.0;
  int order_cnt = 0;
  for (std::size_t e = 1; e < eps_list.size(); ++e) {
    for (std::size_t k = 0; k < errs[e].size(); ++k) {
      if (errs[e][k] > errs[e - 1][k]) rep.monotone = false;
      if (errs[e - 1][k] > 0.0 && errs[e][k] > 0.0) {
        rep.decade_ratios.push_back(errs[e][k] / errs[e - 1][k]);
        order_acc += std::log(errs[e - 1][k] / errs[e][k]) /
                     std::log(eps_list[e - 1] / eps_list[e]);
        ++order_cnt;
      }
    }
  }
  if (order_cnt > 0) rep.fitted_order = order_acc / order_cnt;
  return rep;
}

inline std::string limit_csv(const LimitReport& rep) {
  std::ostringstream os;
  os << "eps,kind,n,err_b,err_u\n";
  char buf[64];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.6g,%s,%d,%.12e,%.12e", r.eps,
                  rep.kind == AWKind::bi ? "bi" : "cbi", r.n, r.err_b, r.err_u);
    os << buf << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json limit_json(const LimitReport& rep) {
  nlohmann::ordered_json j;
  j["kind"] = rep.kind == AWKind::bi ? "bi" : "cbi";
  j["fitted_order"] = rep.fitted_order;
  j["monotone"] = rep.monotone;
  j["decade_ratios"] = rep.decade_ratios;
  return j;
}

namespace detail {

// Phi1, Phi2 of the half-integer-shift operator form, as exact rational
// functions of y.
inline std::pair<RPoly, RPoly> phi1_fraction(const BIParams& p) {
  const RPoly num = Rat(-2) * RPoly{-p.rho1 - Rat(1, 4), Rat(1)} *
                    RPoly{-p.rho2 - Rat(1, 4), Rat(1)};
  return {num, RPoly{Rat(-1), Rat(4)}};
}
inline std::pair<RPoly, RPoly> phi2_fraction(const BIParams& p) {
  const RPoly num = Rat(2) * RPoly{-p.r1 + Rat(1, 4), Rat(1)} *
                    RPoly{-p.r2 + Rat(1, 4), Rat(1)};
  return {num, RPoly{Rat(1), Rat(4)}};
}

}  // namespace detail

// The T^- canonical form of the operator, applied directly.
inline RPoly apply_minus_form(const BIParams& p, const RPoly& f) {
  const RPoly refl = f.reflect() - f;                              // f(-y) - f(y)
  const RPoly across = f.compose_affine(Rat(-1), Rat(1)) - f;      // f(1-y) - f(y)
  RPoly out;
  if (!refl.is_zero())
    out += RPoly{-p.r1, Rat(1)} * RPoly{-p.r2, Rat(1)} *
           refl.exact_div_linear(Rat(2), Rat(0));
  if (!across.is_zero())
    out -= RPoly{-p.rho1 - Rat(1, 2), Rat(1)} * RPoly{-p.rho2 - Rat(1, 2), Rat(1)} *
           across.exact_div_linear(Rat(2), Rat(-1));
  return out;
}

// Exact operator-endpoint identities of the q -> -1 contraction, the
// equivalence of the T^- form with the conjugated T^+ form, and the numeric
// eigenvalue endpoint.
inline VerificationReport canonical_conjugation_check(const BIParams& p) {
  VerificationReport rep;
  const auto [n1, d1] = detail::phi1_fraction(p);
  const auto [n2, d2] = detail::phi2_fraction(p);
  const RPoly n1s = n1.compose_affine(Rat(1), Rat(1, 4));
  const RPoly d1s = d1.compose_affine(Rat(1), Rat(1, 4));
  const RPoly n2s = n2.compose_affine(Rat(1), Rat(1, 4));
  const RPoly d2s = d2.compose_affine(Rat(1), Rat(1, 4));
  const RPoly two_y{Rat(0), Rat(2)}, two_y1{Rat(1), Rat(2)};
  const RPoly lhs1 = n1s * two_y + detail::f_numer(p) * d1s;
  rep.add("shifted Phi1 equals -F", -1, lhs1.is_zero(), lhs1.is_zero() ? "" : poly_str(lhs1));
  const RPoly lhs2 = n2s * two_y1 - detail::g_numer(p) * d2s;
  rep.add("shifted Phi2 equals G", -1, lhs2.is_zero(), lhs2.is_zero() ? "" : poly_str(lhs2));
  for (int k = 0; k <= 8; ++k) {
    const RPoly f = RPoly::monomial(k);
    const RPoly via_conj =
        apply_L(p, f.compose_affine(Rat(1), Rat(1, 2))).compose_affine(Rat(1), Rat(-1, 2));
    const RPoly diff = apply_minus_form(p, f) - via_conj;
    rep.add("T^- form equals conjugated T^+ form", k, diff.is_zero(),
            diff.is_zero() ? "" : poly_str(diff));
  }
  bool lam_ok = true;
  for (int n = 0; n <= 8 && lam_ok; ++n) {
    double prev = -1.0;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      const AWParams w = aw_params(p, eps, AWKind::bi);
      const double err =
          std::abs(aw_eigenvalue(w, n) / (4.0 * (1.0 + w.q)) - to_double(lambda_n(p, n)));
      if (prev >= 0.0 && err > prev) lam_ok = false;
      prev = err;
    }
    if (prev > 1e-3) lam_ok = false;
  }
  rep.add("eigenvalue endpoint matches exact lambda_n", -1, lam_ok);
  // The operator data survives the limit only for the BI parametrization;
  // under the CBI one |Omega/(4(1+q))| blows up ~ 1/eps.
  const double y_probe = 0.37;
  double prev_bi = -1.0, prev_cbi = -1.0;
  bool probe_ok = true;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    const Cplx z = Cplx(0, 1) * std::exp(-2.0 * eps * y_probe);
    const AWParams wb = aw_params(p, eps, AWKind::bi);
    const AWParams wc = aw_params(p, eps, AWKind::cbi);
    const auto [pn, pd] = detail::phi1_fraction(p);
    const double target = to_double(pn(Rat(37, 100))) / to_double(pd(Rat(37, 100)));
    const double err_bi = std::abs(aw_omega(wb, z) / (4.0 * (1.0 + wb.q)) - target);
    const double mag_cbi = std::abs(aw_omega(wc, z) / (4.0 * (1.0 + wc.q)));
    if (prev_bi >= 0.0 && err_bi > prev_bi) probe_ok = false;
    if (prev_cbi >= 0.0 && mag_cbi < 5.0 * prev_cbi) probe_ok = false;
    prev_bi = err_bi;
    prev_cbi = mag_cbi;
  }
  rep.add("operator data converges (bi) and diverges (cbi)", -1, probe_ok);
  return rep;
}

// First-order reflection differential operator reached as h -> 0; both terms
// share the denominator 4y^2 and the combined numerator is exactly divisible.
inline RPoly big_m1_operator(const Rat& a1, const Rat& a2, const Rat& b1, const Rat& b2,
                             const RPoly& f) {
  const RPoly fc{-a1 * a2, -2 * (a1 * b2 + a2 * b1), 2 * b1 + 2 * b2 + 1};
  const RPoly dref = f.reflect().derivative();  // d/dy f(-y)
  const RPoly numer = RPoly{Rat(0), Rat(2)} * RPoly{-a1, Rat(1)} * RPoly{-a2, Rat(1)} * dref -
                      fc * (f - f.reflect());
  if (numer.is_zero()) return RPoly();
  return numer.exact_div_linear(Rat(1), Rat(0)).exact_div_linear(Rat(1), Rat(0)).divided_by(
      Rat(4));
}

// Two-parameter special case with the a2 = 0 normalization.
inline RPoly little_m1_operator(const Rat& alpha, const Rat& beta, const RPoly& f) {
  const RPoly dref = f.reflect().derivative();
  const RPoly odd = f - f.reflect();
  RPoly out = RPoly{Rat(2), Rat(-2)} * dref + (alpha + beta + 1) * odd;
  if (!odd.is_zero()) out -= alpha * odd.exact_div_linear(Rat(1), Rat(0));
  return out;
}

// The x -> y/h rescaled Dunkl shift operator at exact rational h.
inline RPoly apply_rescaled_L(const Rat& a1, const Rat& a2, const Rat& b1, const Rat& b2,
                              const Rat& h, const RPoly& f) {
  const RPoly odd = f - f.reflect();
  const RPoly across = f.compose_affine(Rat(-1), -h) - f;
  const RPoly numer = RPoly{-a1 - b1 * h, Rat(1)} * RPoly{-a2 - b2 * h, Rat(1)} *
                          RPoly{h, Rat(2)} * odd +
                      RPoly{Rat(0), Rat(2)} * RPoly{-a1 + h / 2, Rat(1)} *
                          RPoly{-a2 + h / 2, Rat(1)} * across;
  if (numer.is_zero()) return RPoly();
  return numer.exact_div_linear(Rat(1), Rat(0)).exact_div_linear(Rat(2), h).divided_by(2 * h);
}

inline RPoly jacobi_residual(const Rat& a1, const Rat& a2, const Rat& b1, const Rat& b2,
                             const Rat& h, int k) {
  const RPoly f = RPoly::monomial(k);
  return apply_rescaled_L(a1, a2, b1, b2, h, f) - big_m1_operator(a1, a2, b1, b2, f);
}

struct ContractionRow {
  Rat h;
  int k = 0;
  Rat sup;  // max |coefficient| of the residual
};

struct ContractionReport {
  std::vector<ContractionRow> rows;
  bool monotone = true;             // sup norms decrease along the h list
  bool sup_ratio_in_window = true;  // halving h scales sup by [2/5, 3/5]
  bool coeff_halves = true;         // every coefficient at least roughly halves
};

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline ContractionReport contraction_report(const Rat& a1, const Rat& a2, const Rat& b1,
                                            const Rat& b2, const std::vector<Rat>& h_list,
                                            int kmax) {
  ContractionReport rep;
  std::vector<std::vector<RPoly>> residuals(h_list.size());
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    for (int k = 0; k <= kmax; ++k) {
      const RPoly r = jacobi_residual(a1, a2, b1, b2, h_list[i], k);
      residuals[i].push_back(r);
      Rat sup(0);
      for (int j = 0; j <= r.degree(); ++j)
        if (rat_abs(r[j]) > sup) sup = rat_abs(r[j]);
      rep.rows.push_back({h_list[i], k, sup});
    }
  }
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    const bool halving = (h_list[i] * 2 == h_list[i - 1]);
    for (int k = 0; k <= kmax; ++k) {
      const Rat& s_prev = rep.rows[(i - 1) * (kmax + 1) + k].sup;
      const Rat& s_cur = rep.rows[i * (kmax + 1) + k].sup;
      if (s_prev > 0 && s_cur > s_prev) rep.monotone = false;
      if (!halving || k == 0) continue;  // k = 0 residual is identically zero
      if (!(5 * s_cur >= 2 * s_prev && 5 * s_cur <= 3 * s_prev))
        rep.sup_ratio_in_window = false;
      const RPoly& rp = residuals[i - 1][k];
      const RPoly& rc = residuals[i][k];
      const int dmax = std::max(rp.degree(), rc.degree());
      for (int j = 0; j <= dmax; ++j) {
        if (rp[j] == 0) {
          if (rc[j] != 0) rep.coeff_halves = false;
        } else if (5 * rat_abs(rc[j]) > 3 * rat_abs(rp[j])) {
          rep.coeff_halves = false;
        }
      }
    }
  }
  return rep;
}

inline std::string contraction_csv(const ContractionReport& rep) {
  std::ostringstream os;
  os << "h,k,sup_residual\n";
  char buf[48];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.12e", to_double(r.sup));
    os << rat_str(r.h) << ',' << r.k << ',' << buf << '\n';
  }
  return os.str();
}

}  // namespace bannai

#endif  // BANNAI_LIMITS_HPP

#ifndef BANNAI_GRID_HPP
#define BANNAI_GRID_HPP

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannai/bipoly.hpp"
#include "bannai/dunkl.hpp"
#include "bannai/poly.hpp"
#include "bannai/rational.hpp"

namespace bannai {

class pole_on_grid_error : public std::domain_error {
 public:
  explicit pole_on_grid_error(const std::string& what) : std::domain_error(what) {}
};
class root_mismatch_error : public std::logic_error {
 public:
  explicit root_mismatch_error(const std::string& what) : std::logic_error(what) {}
};

enum class GridKind { first, second };

// Shift-reflection invariant point set: first kind pairs -x_{2s} = x_{2s-1},
// -1-x_{2s} = x_{2s+1}; second kind swaps the pairing.
struct BIGrid {
  GridKind kind = GridKind::first;
  Rat offset;             // a (first kind) or b (second kind)
  std::vector<Rat> points;
};

inline Rat bi_grid_point(GridKind kind, const Rat& offset, int s) {
  const Rat inner = kind == GridKind::first ? Rat(Rat(1, 4) + offset + Rat(s, 2))
                                            : Rat(Rat(1, 4) + offset - Rat(s, 2));
  return (s % 2 == 0) ? Rat(Rat(-1, 4) + inner) : Rat(Rat(-1, 4) - inner);
}

inline BIGrid bi_grid(GridKind kind, const Rat& offset, int count) {
  BIGrid g{kind, offset, {}};
  g.points.reserve(count);
  for (int s = 0; s < count; ++s) g.points.push_back(bi_grid_point(kind, offset, s));
  return g;
}

// Ratio of two polynomials; evaluation refuses to sit on a pole.
struct RationalFn {
  RPoly num, den;

  Rat operator()(const Rat& x) const {
    const Rat d = den(x);
    if (d == 0) throw pole_on_grid_error("rational function pole at x = " + rat_str(x));
    return num(x) / d;
  }
};

// The BI operator in the H = A R + B T+R + C shape: A = -F, B = G, C = F - G.
struct OperatorABC {
  RationalFn A, B, C;
};

inline OperatorABC bi_operator_ABC(const BIParams& p) {
  const RPoly fn = detail::f_numer(p), gn = detail::g_numer(p);
  const RPoly two_x{Rat(0), Rat(2)}, two_x1{Rat(1), Rat(2)};
  OperatorABC abc;
  abc.A = {-fn, two_x};
  abc.B = {gn, two_x1};
  abc.C = {fn * two_x1 - gn * two_x, two_x * two_x1};
  return abc;
}

// Restriction of H to a BI grid: H f(x_s) = xi_s f(x_{s+1}) + eta_s f(x_s)
// + zeta_s f(x_{s-1}).
struct TridiagonalView {
  std::vector<Rat> xi, eta, zeta;
};

inline TridiagonalView tridiagonalize(const RationalFn& A, const RationalFn& B,
                                      const RationalFn& C, const BIGrid& grid) {
  TridiagonalView v;
  const int n = static_cast<int>(grid.points.size());
  v.xi.reserve(n);
  v.eta.reserve(n);
  v.zeta.reserve(n);
  for (int s = 0; s < n; ++s) {
    const Rat& x = grid.points[s];
    const bool even = (s % 2 == 0);
    const bool first = (grid.kind == GridKind::first);
    // first kind: even s reaches x_{s+1} through T+R and x_{s-1} through R;
    // second kind swaps the two.
    const Rat a = A(x), b = B(x);
    v.xi.push_back(first == even ? b : a);
    v.zeta.push_back(first == even ? a : b);
    v.eta.push_back(C(x));
  }
  return v;
}

// Closed-form spectral nodes of the truncated family; each is verified to be
// an exact root of P_{N+1}.
inline std::vector<Rat> spectral_nodes(const BIParams& p, int N) {
  std::vector<Rat> nodes;
  nodes.reserve(N + 1);
  if (N % 2 == 0) {
    if (2 * (p.r2 - p.rho2) != N + 1)
      throw root_mismatch_error("spectral_nodes: 2(r2 - rho2) = N+1 not satisfied");
    for (int s = 0; s <= N; ++s) nodes.push_back(bi_grid_point(GridKind::first, p.rho2, s));
  } else {
    if (2 * (p.r1 + p.r2) != N + 1)
      throw root_mismatch_error("spectral_nodes: r1 + r2 = (N+1)/2 not satisfied");
    for (int s = 0; s <= N; ++s)
      nodes.push_back(bi_grid_point(GridKind::second, p.r1 - Rat(1, 2), s));
  }
  const RPoly Pn1 = generate_P(p, N + 1).back();
  for (int s = 0; s <= N; ++s) {
    if (Pn1(nodes[s]) != 0)
      throw root_mismatch_error("spectral_nodes: closed-form node is not a root at s=" +
                                std::to_string(s));
    for (int t = 0; t < s; ++t)
      if (nodes[s] == nodes[t])
        throw root_mismatch_error("spectral_nodes: repeated node at s=" + std::to_string(s));
  }
  return nodes;
}

// Associated polynomials P^(1): same recurrence shifted one step up.
inline std::vector<RPoly> associated_polys(const BIParams& p, int N) {
  std::vector<RPoly> P;
  P.reserve(N + 1);
  P.push_back(RPoly::one());
  if (N >= 1) P.push_back(RPoly{-coeff_b(p, 1), Rat(1)});
  for (int n = 1; n < N; ++n)
    P.push_back(RPoly{-coeff_b(p, n + 1), Rat(1)} * P[n] - coeff_u(p, n + 1) * P[n - 1]);
  return P;
}

// Finite orthogonality certificate: exact nodes, weights and norms.
struct OrthoSystem {
  int N = 0;
  std::vector<Rat> nodes, weights, norms;
};

inline OrthoSystem exact_weights(const BIParams& p, int N) {
  const RecurrenceTable t = recurrence_coeffs(p, N);
  for (int n = 1; n <= N; ++n)
    if (t.u[n] <= 0)
      throw invalid_params_error("exact_weights: u_n <= 0 at n=" + std::to_string(n));
  if (t.u[N + 1] != 0)
    throw invalid_params_error("exact_weights: u_{N+1} != 0, not a truncated family");
  OrthoSystem sys;
  sys.N = N;
  sys.nodes = spectral_nodes(p, N);
  const std::vector<RPoly> P = generate_P(p, N + 1);
  const RPoly dPn1 = P[N + 1].derivative();
  const std::vector<RPoly> P1 = associated_polys(p, N);
  const Rat hN = t.h[N];
  for (int s = 0; s <= N; ++s) {
    const Rat der = dPn1(sys.nodes[s]);
    if (der == 0)
      throw std::logic_error("exact_weights: zero derivative at a node (root not simple)");
    const Rat w = hN / (P[N](sys.nodes[s]) * der);
    if (w != P1[N](sys.nodes[s]) / der)
      throw std::logic_error("exact_weights: associated-polynomial route disagrees at s=" +
                             std::to_string(s));
    if (w <= 0) throw std::logic_error("exact_weights: nonpositive weight at s=" +
                                       std::to_string(s));
    sys.weights.push_back(w);
  }
  sys.norms = t.h;
  return sys;
}

// sum_s w_s P_n(x_s) P_m(x_s) == delta_nm h_n, all pairs, exact.
inline bool orthogonality_exact(const BIParams& p, const OrthoSystem& sys) {
  const std::vector<RPoly> P = generate_P(p, sys.N);
  std::vector<std::vector<Rat>> vals(sys.N + 1, std::vector<Rat>());
  for (int n = 0; n <= sys.N; ++n)
    for (int s = 0; s <= sys.N; ++s) vals[n].push_back(P[n](sys.nodes[s]));
  for (int n = 0; n <= sys.N; ++n)
    for (int m = 0; m <= n; ++m) {
      Rat acc(0);
      for (int s = 0; s <= sys.N; ++s) acc += sys.weights[s] * vals[n][s] * vals[m][s];
      if (acc != (n == m ? sys.norms[n] : Rat(0))) return false;
    }
  return true;
}

enum class PhiForm { expr, sym };

// Floating symmetry factor built from gamma magnitudes; sigma = sin(2 pi x).
// The `expr` form is regular on even-N grids, `sym` on odd-N grids.
inline double symmetry_factor(double x, const BIParams& p, PhiForm form) {
  const double r1 = to_double(p.r1), r2 = to_double(p.r2);
  const double rho1 = to_double(p.rho1), rho2 = to_double(p.rho2);
  const double sigma = std::sin(2.0 * M_PI * x);
  SignedLog acc{0.0, 1};
  if (form == PhiForm::expr) {
    for (double t : {rho1 - x, x - r1 + 0.5, -x - r1 + 0.5, x + 1 + rho1})
      acc = acc * lgamma_signed(t);
    for (double t : {x + 1 - rho2, x + r2 + 0.5, r2 + 0.5 - x, -x - rho2})
      acc = acc / lgamma_signed(t);
    return -2.0 * sigma * acc.value();
  }
  for (double t : {rho1 - x, rho1 + 1 + x, rho2 - x, 1 + rho2 + x})
    acc = acc * lgamma_signed(t);
  for (double t : {r2 + 0.5 + x, r2 + 0.5 - x, r1 + 0.5 + x, r1 + 0.5 - x})
    acc = acc / lgamma_signed(t);
  return sigma * acc.value();
}

inline double F_at(const BIParams& p, double x) {
  return (x - to_double(p.rho1)) * (x - to_double(p.rho2)) / (2 * x);
}
inline double G_at(const BIParams& p, double x) {
  return (x - to_double(p.r1) + 0.5) * (x - to_double(p.r2) + 0.5) / (2 * x + 1);
}

inline std::string ortho_csv(const OrthoSystem& sys) {
  std::ostringstream os;
  os << "s,x_s,w_s\n";
  for (int s = 0; s <= sys.N; ++s)
    os << s << ',' << rat_str(sys.nodes[s]) << ',' << rat_str(sys.weights[s]) << '\n';
  return os.str();
}

inline nlohmann::ordered_json ortho_certificate(const BIParams& p, const OrthoSystem& sys) {
  nlohmann::ordered_json j;
  j["N"] = sys.N;
  j["params"] = {{"r1", rat_str(p.r1)},
                 {"r2", rat_str(p.r2)},
                 {"rho1", rat_str(p.rho1)},
                 {"rho2", rat_str(p.rho2)}};
  const bool ok = orthogonality_exact(p, sys);
  j["max_residual"] = ok ? "0" : "nonzero";
  bool pos = true;
  for (const auto& w : sys.weights) pos = pos && w > 0;
  j["positivity"] = pos;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  nlohmann::ordered_json weights = nlohmann::ordered_json::array();
  nlohmann::ordered_json norms = nlohmann::ordered_json::array();
  for (int s = 0; s <= sys.N; ++s) {
    nodes.push_back(rat_str(sys.nodes[s]));
    weights.push_back(rat_str(sys.weights[s]));
    norms.push_back(rat_str(sys.norms[s]));
  }
  j["nodes"] = nodes;
  j["weights"] = weights;
  j["norms"] = norms;
  return j;
}

}  // namespace bannai

#endif  // BANNAI_GRID_HPP

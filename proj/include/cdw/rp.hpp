#ifndef CDW_RP_HPP
#define CDW_RP_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cdw/thermal.hpp"

namespace cdw {

// Antiunitary map psi -> U conj(psi) between two equal-dimension factors.
struct Antiunitary {
  Matrix u;

  Vector apply(const Vector& psi) const { return u * psi.conjugate(); }
  // theta A theta^{-1} for A on the source factor.
  Matrix conjugate_op(const Matrix& a) const {
    return u * a.conjugate() * u.adjoint();
  }
  // theta^{-1} B theta for B on the target factor.
  Matrix conjugate_op_inverse(const Matrix& b) const {
    return (u.adjoint() * b * u).conjugate();
  }
};

// The reflection antiunitary of a half-lattice split, mapping the first
// (left/lower) Fock factor onto the second. It is pinned down by
//   theta Omega_first = Omega_second,
//   c_{j sigma} = theta a_{r(j) sigma} theta^{-1}  (j in the second half),
// where a_{j sigma} = c_{j sigma} (-1)^{N_first} inside the first factor.
// The construction maps creation monomials to relabeled monomials; the
// defining relations are re-verified as matrix identities and a residual
// above 1e-10 throws (it would mean a sign-convention bug).
Antiunitary reflection_antiunitary(const Torus& torus, const SplitBasis& split,
                                   SplitKind kind);

// Antiunitary on a single factor with xi Omega = Omega and
// xi c_k xi^{-1} = c_k (-1)^N; on occupation-diagonal operators its
// conjugation acts as entrywise complex conjugation.
Antiunitary gauge_antiunitary(const FockSpace& factor);

// Thermal reflection positivity of a state across a half-lattice split:
//   positivity    = <A (x) theta A theta^{-1}>            (>= 0)
//   schwarz_slack = <A..A><B..B> - |<A..B>|^2              (>= 0)
struct RPReport {
  double positivity = 0.0;
  double positivity_b = 0.0;
  double cross_abs = 0.0;
  double schwarz_slack = 0.0;
};
RPReport check_rp(const Matrix& a, const Matrix& b, const ThermalState& state,
                  const SplitBasis& split, const Antiunitary& theta);

// Dyson-Lieb-Simon style check on abstract factors at beta = 1 for
//   H = A(x)1 + 1(x)thAth^{-1} - sum_j (B_j(x)thB_jth^{-1} + B_j*(x)thB_j*th^{-1}).
// positivity and the squared Schwarz slack must be nonnegative; the
// unsquared comparison |<CD>| <= <CC><DD> is reported as informational
// only (it fails whenever the right side is small, squared form does not).
struct DLSReport {
  double positivity = 0.0;
  double positivity_d = 0.0;
  double cross_abs = 0.0;
  double schwarz_slack = 0.0;           // <CC><DD> - |<CD>|^2
  double unsquared_slack = 0.0;         // <CC><DD> - |<CD>|, informational
};
DLSReport check_dls(const Matrix& a, const std::vector<Matrix>& bs,
                    const Matrix& c, const Matrix& d, const Antiunitary& theta);

// Residual of the factorized-trace identity
// Tr[A (x) theta B theta^{-1}] = Tr[A] conj(Tr[B]).
double trace_factorization_residual(const Matrix& a, const Matrix& b,
                                    const Antiunitary& theta);

// Exact decomposition of the pair-hopping Hamiltonian across a half-lattice
// split. In the product basis,
//   H = C (x) 1 + 1 (x) theta C theta^{-1}
//       + sum over directed crossing bonds of
//           s_b t (B_b (x) theta B_b theta^{-1} + h.c.)
//       - V sum over directed crossing bonds of q_m (x) theta q_m theta^{-1},
// where B_b is the dressed pair operator a* at the bond's first-half
// endpoint and s_b = -1 when the bond's even endpoint lies in the second
// half but s_b = +1 when it lies in the first half. The +1 ("adverse")
// family has the sign that breaks thermal positivity arguments;
// `h_mirror` is the comparison Hamiltonian with those signs flipped, whose
// Gibbs states are reflection positive for every beta.
struct SplitCoupling {
  Matrix h_product;  // the Hamiltonian in the product basis
  Matrix h_mirror;   // adverse crossing signs flipped to the favorable one
  double decomposition_residual = 0.0;  // reassembly identity residual
  double mirror_residual = 0.0;  // || C_second - theta C_first theta^{-1} ||
  int adverse_bonds = 0;         // directed crossing bonds with s_b = +1
  int favorable_bonds = 0;       // directed crossing bonds with s_b = -1
};
SplitCoupling analyze_split_coupling(const ModelParams& params,
                                     const Torus& torus, const FockSpace& fock,
                                     const SplitBasis& split,
                                     const Antiunitary& theta);

// Checks on the cone generated by {E (x) theta E theta^{-1}}:
// trace nonnegativity, closure under products, Trotter approximation of
// e^{-H} by cone elements (residual must decrease as steps double), and
// the Schwarz inequality against a cone element.
struct ConeReport {
  double trace_value = 0.0;
  double product_trace = 0.0;
  std::vector<double> trotter_residuals;
  bool trotter_decreasing = false;
  double schwarz_slack = 0.0;
};
ConeReport reflection_positive_cone_check(
    const std::vector<double>& coeffs, const std::vector<Matrix>& generators,
    const Matrix& a, const std::vector<Matrix>& bs, const Matrix& c,
    const Matrix& d, const Antiunitary& theta);

// A cyclic multilinear functional together with its antilinear involution
// and (for the odd-arity form) the auxiliary maps T+-. `distance` compares
// two elements so hypothesis self-tests can assert identities on elements.
template <typename Elem>
struct Functional {
  int arity = 0;
  std::function<Complex(const std::vector<Elem>&)> omega;
  std::function<Elem(const Elem&)> j;
  std::function<Elem(const Elem&)> t_plus;
  std::function<Elem(const Elem&)> t_minus;
  std::function<double(const Elem&, const Elem&)> distance;
};

struct ChessboardReport {
  bool hypotheses_ok = true;
  std::string hypothesis_note;
  double lhs = 0.0;          // |omega(A_1, ..., A_n)|
  double rhs = 0.0;          // product of homogenized values^(1/n)
  double slack = 0.0;        // rhs - lhs
  double chess2_residual = 0.0;  // odd-arity form only
};

namespace detail {

inline double real_clamped(Complex z) { return std::max(z.real(), 0.0); }

}  // namespace detail

// Hoelder-type bound for even arity 2L:
// |omega(A_1..A_2L)| <= prod_j omega(JA_j, A_j, ..., JA_j, A_j)^{1/2L}.
// Hypotheses (cyclicity, positivity of the reflected half-tuple, the
// Schwarz step) are self-tested on the given tuple first.
template <typename Elem>
ChessboardReport chessboard_standard(const Functional<Elem>& w,
                                     const std::vector<Elem>& as, double tol) {
  ChessboardReport r;
  const int n = w.arity;
  if (n % 2 != 0 || static_cast<int>(as.size()) != n)
    throw std::invalid_argument("even arity tuple required");
  const int half = n / 2;

  const Complex base = w.omega(as);
  {  // cyclicity
    std::vector<Elem> rot(as.begin() + 1, as.end());
    rot.push_back(as.front());
    if (std::abs(base - w.omega(rot)) > tol * (1.0 + std::abs(base))) {
      r.hypotheses_ok = false;
      r.hypothesis_note = "cyclicity violated";
    }
  }
  auto reflected = [&](const std::vector<Elem>& head) {
    std::vector<Elem> tuple = head;
    for (int k = half - 1; k >= 0; --k)
      tuple.push_back(w.j(head[static_cast<size_t>(k)]));
    return tuple;
  };
  const std::vector<Elem> front(as.begin(), as.begin() + half);
  std::vector<Elem> back_j;
  for (int k = n - 1; k >= half; --k) back_j.push_back(w.j(as[static_cast<size_t>(k)]));
  const Complex pos_front = w.omega(reflected(front));
  const Complex pos_back = w.omega(reflected(back_j));
  if (pos_front.real() < -tol || pos_back.real() < -tol) {
    r.hypotheses_ok = false;
    r.hypothesis_note = "reflected half-tuple not positive";
  }
  const double schwarz = std::sqrt(detail::real_clamped(pos_front)) *
                         std::sqrt(detail::real_clamped(pos_back));
  if (std::abs(base) > schwarz + tol * (1.0 + schwarz)) {
    r.hypotheses_ok = false;
    r.hypothesis_note = "Schwarz step violated";
  }

  r.lhs = std::abs(base);
  double rhs = 1.0;
  for (const Elem& a : as) {
    std::vector<Elem> homog;
    for (int k = 0; k < half; ++k) {
      homog.push_back(w.j(a));
      homog.push_back(a);
    }
    rhs *= std::pow(detail::real_clamped(w.omega(homog)), 1.0 / n);
  }
  r.rhs = rhs;
  r.slack = r.rhs - r.lhs;
  return r;
}

// Odd-arity (2M+1, M even) variant with the auxiliary maps T+-:
// |omega(A_1..A_{2M+1})|
//   <= prod_j omega(JA_j, A_j, ..., JA_j, A_j, T+(JA_j))^{1/(2M+1)},
// plus the equality between the T+(JA_j) and T-(A_j) homogenized forms.
template <typename Elem>
ChessboardReport chessboard_modified(const Functional<Elem>& w,
                                     const std::vector<Elem>& as, double tol) {
  ChessboardReport r;
  const int n = w.arity;
  if (n % 2 == 0 || static_cast<int>(as.size()) != n)
    throw std::invalid_argument("odd arity tuple required");
  const int m = (n - 1) / 2;
  if (m % 2 != 0) throw std::invalid_argument("(arity - 1)/2 must be even");

  const Complex base = w.omega(as);
  {  // cyclicity
    std::vector<Elem> rot(as.begin() + 1, as.end());
    rot.push_back(as.front());
    if (std::abs(base - w.omega(rot)) > tol * (1.0 + std::abs(base))) {
      r.hypotheses_ok = false;
      r.hypothesis_note = "cyclicity violated";
    }
  }
  // (a) T_alpha(T_beta(A)) = T_beta(A), on every element of the tuple.
  for (const Elem& a : as) {
    const Elem tp = w.t_plus(a);
    const Elem tm = w.t_minus(a);
    const double res =
        std::max({w.distance(w.t_plus(tp), tp), w.distance(w.t_minus(tp), tp),
                  w.distance(w.t_plus(tm), tm), w.distance(w.t_minus(tm), tm)});
    if (res > tol) {
      r.hypotheses_ok = false;
      r.hypothesis_note = "T maps are not half-copy idempotent";
    }
  }
  // (b) reflected half-tuples with T+-(A_{M+1}) in the middle are positive,
  // and (c) the Schwarz step.
  auto middle_tuple = [&](const std::vector<Elem>& tuple, bool plus) {
    std::vector<Elem> out(tuple.begin(), tuple.begin() + m);
    out.push_back(plus ? w.t_plus(tuple[static_cast<size_t>(m)])
                       : w.t_minus(tuple[static_cast<size_t>(m)]));
    for (int k = m - 1; k >= 0; --k) out.push_back(w.j(tuple[static_cast<size_t>(k)]));
    return out;
  };
  const Complex pos_plus = w.omega(middle_tuple(as, true));
  std::vector<Elem> minus_tuple;
  for (int k = n - 1; k >= m + 1; --k) minus_tuple.push_back(w.j(as[static_cast<size_t>(k)]));
  minus_tuple.push_back(w.t_minus(as[static_cast<size_t>(m)]));
  for (int k = m + 1; k <= n - 1; ++k) minus_tuple.push_back(as[static_cast<size_t>(k)]);
  const Complex pos_minus = w.omega(minus_tuple);
  if (pos_plus.real() < -tol || pos_minus.real() < -tol) {
    r.hypotheses_ok = false;
    r.hypothesis_note = "reflected half-tuple not positive";
  }
  const double schwarz = std::sqrt(detail::real_clamped(pos_plus)) *
                         std::sqrt(detail::real_clamped(pos_minus));
  if (std::abs(base) > schwarz + tol * (1.0 + schwarz)) {
    r.hypotheses_ok = false;
    r.hypothesis_note = "Schwarz step violated";
  }

  r.lhs = std::abs(base);
  double rhs = 1.0;
  double chess2 = 0.0;
  for (const Elem& a : as) {
    std::vector<Elem> homog_plus, homog_minus;
    for (int k = 0; k < m; ++k) {
      homog_plus.push_back(w.j(a));
      homog_plus.push_back(a);
      homog_minus.push_back(w.j(a));
      homog_minus.push_back(a);
    }
    homog_plus.push_back(w.t_plus(w.j(a)));
    homog_minus.push_back(w.t_minus(a));
    const Complex vp = w.omega(homog_plus);
    const Complex vm = w.omega(homog_minus);
    chess2 = std::max(chess2, std::abs(vp - vm));
    rhs *= std::pow(detail::real_clamped(vp), 1.0 / n);
  }
  r.rhs = rhs;
  r.slack = r.rhs - r.lhs;
  r.chess2_residual = chess2;
  return r;
}

// Classical reflection-positive ring functionals used to exercise the
// two estimates at full strength.

// Four ferromagnetically coupled Ising spins on a ring; a cell is one
// spin, an element is a complex function on {-1,+1}, J is conjugation.
using SpinFunction = Eigen::Vector2cd;
Functional<SpinFunction> ising_ring_functional(double coupling);

// Five cells of two spins each on a ten-spin ferromagnetic ring. Elements
// are formal real combinations of product functions g(y) h(z), so that
// J(g (x) h) = conj(h) (x) conj(g) and the half-copy maps
// T+(g (x) h) = g (x) conj(g), T-(g (x) h) = conj(h) (x) h are genuinely
// real linear.
struct ProductTerm {
  double coeff = 1.0;
  SpinFunction g;
  SpinFunction h;
};
using PairElem = std::vector<ProductTerm>;
Functional<PairElem> pair_ring_functional(double coupling);

}  // namespace cdw

#endif

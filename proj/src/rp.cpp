#include "cdw/rp.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace cdw {

namespace {

Matrix hermitian_exp(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  const RealVector ev = solver.eigenvalues().array().exp();
  return solver.eigenvectors() * ev.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

Antiunitary reflection_antiunitary(const Torus& torus, const SplitBasis& split,
                                   SplitKind kind) {
  const int n_modes = static_cast<int>(split.left_modes.size());
  if (split.right_modes.size() != split.left_modes.size())
    throw std::invalid_argument("unbalanced split");
  const FockSpace fl(n_modes);
  const FockSpace fr(n_modes);
  const long d = fl.dim();

  std::vector<int> all_modes(static_cast<size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) all_modes[static_cast<size_t>(k)] = k;
  const RealVector par = fl.parity_diag(all_modes);

  // Right-factor mode -> partner left-factor mode under the reflection.
  std::vector<int> partner(static_cast<size_t>(n_modes));
  std::vector<Matrix> a_star(static_cast<size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) {
    const int full_mode = split.right_modes[static_cast<size_t>(k)];
    const Site s = torus.site(full_mode / 2);
    const Site refl = (kind == SplitKind::Vertical)
                          ? torus.reflect(s, kind)
                          : torus.reflect_inverse(s, kind);
    const int left_full = 2 * torus.index(refl) + full_mode % 2;
    const auto it = std::find(split.left_modes.begin(),
                              split.left_modes.end(), left_full);
    if (it == split.left_modes.end())
      throw std::runtime_error("reflection left the opposite half");
    partner[static_cast<size_t>(k)] =
        static_cast<int>(it - split.left_modes.begin());
  }
  for (int k = 0; k < n_modes; ++k)
    a_star[static_cast<size_t>(k)] =
        par.cast<Complex>().asDiagonal() * fl.creation(k);

  // Map each creation monomial of the left factor to the corresponding
  // right-factor occupation state.
  Matrix u = Matrix::Zero(d, d);
  for (long mask = 0; mask < d; ++mask) {
    Vector mono = fl.vacuum();
    for (int k = n_modes - 1; k >= 0; --k)
      if ((mask >> k) & 1L)
        mono = a_star[static_cast<size_t>(partner[static_cast<size_t>(k)])] * mono;
    u.row(mask) = mono.transpose();
  }

  Antiunitary theta{u};
  // Re-verify the defining relations.
  if (std::abs(theta.apply(fl.vacuum())(0) - 1.0) > 1e-10)
    throw std::runtime_error("reflection antiunitary: vacuum not preserved");
  for (int k = 0; k < n_modes; ++k) {
    const Matrix lhs = fr.annihilation(k);
    const Matrix a_op = fl.creation(partner[static_cast<size_t>(k)]).adjoint() *
                        par.cast<Complex>().asDiagonal();
    if (max_abs(lhs - theta.conjugate_op(a_op)) > 1e-10)
      throw std::runtime_error(
          "reflection antiunitary: defining relation violated");
  }
  return theta;
}

Antiunitary gauge_antiunitary(const FockSpace& factor) {
  const int n_modes = factor.num_modes();
  const long d = factor.dim();
  std::vector<int> all_modes(static_cast<size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) all_modes[static_cast<size_t>(k)] = k;
  const RealVector par = factor.parity_diag(all_modes);
  std::vector<Matrix> b_star(static_cast<size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k)
    b_star[static_cast<size_t>(k)] =
        par.cast<Complex>().asDiagonal() * factor.creation(k);

  Matrix u = Matrix::Zero(d, d);
  for (long mask = 0; mask < d; ++mask) {
    Vector mono = factor.vacuum();
    for (int k = n_modes - 1; k >= 0; --k)
      if ((mask >> k) & 1L) mono = b_star[static_cast<size_t>(k)] * mono;
    u.col(mask) = mono;
  }
  Antiunitary xi{u};
  for (int k = 0; k < n_modes; ++k) {
    const Matrix lhs = xi.conjugate_op(factor.annihilation(k));
    const Matrix rhs =
        factor.annihilation(k) * par.cast<Complex>().asDiagonal();
    if (max_abs(lhs - rhs) > 1e-10)
      throw std::runtime_error("gauge antiunitary: defining relation violated");
  }
  return xi;
}

RPReport check_rp(const Matrix& a, const Matrix& b, const ThermalState& state,
                  const SplitBasis& split, const Antiunitary& theta) {
  auto embedded = [&](const Matrix& left, const Matrix& right) {
    return split.from_product(kron(left, theta.conjugate_op(right)));
  };
  RPReport r;
  r.positivity = state.average(embedded(a, a)).real();
  r.positivity_b = state.average(embedded(b, b)).real();
  const Complex cross = state.average(embedded(a, b));
  r.cross_abs = std::abs(cross);
  r.schwarz_slack = r.positivity * r.positivity_b - r.cross_abs * r.cross_abs;
  return r;
}

namespace {

Matrix dls_hamiltonian(const Matrix& a, const std::vector<Matrix>& bs,
                       const Antiunitary& theta) {
  const long n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix h = kron(a, id) + kron(id, theta.conjugate_op(a));
  for (const Matrix& b : bs) {
    h -= kron(b, theta.conjugate_op(b));
    h -= kron(Matrix(b.adjoint()), theta.conjugate_op(b.adjoint()));
  }
  return h;
}

}  // namespace

DLSReport check_dls(const Matrix& a, const std::vector<Matrix>& bs,
                    const Matrix& c, const Matrix& d,
                    const Antiunitary& theta) {
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("A must be Hermitian");
  const long n = a.rows();
  const ThermalState state(diagonalize(dls_hamiltonian(a, bs, theta)), 1.0);
  auto pair_op = [&](const Matrix& x, const Matrix& y) {
    return kron(x, theta.conjugate_op(y));
  };
  DLSReport r;
  r.positivity = state.average(pair_op(c, c)).real();
  r.positivity_d = state.average(pair_op(d, d)).real();
  r.cross_abs = std::abs(state.average(pair_op(c, d)));
  r.schwarz_slack = r.positivity * r.positivity_d - r.cross_abs * r.cross_abs;
  r.unsquared_slack = r.positivity * r.positivity_d - r.cross_abs;
  (void)n;
  return r;
}

double trace_factorization_residual(const Matrix& a, const Matrix& b,
                                    const Antiunitary& theta) {
  const Complex lhs = kron(a, theta.conjugate_op(b)).trace();
  const Complex rhs = a.trace() * std::conj(b.trace());
  return std::abs(lhs - rhs);
}

ConeReport reflection_positive_cone_check(
    const std::vector<double>& coeffs, const std::vector<Matrix>& generators,
    const Matrix& a, const std::vector<Matrix>& bs, const Matrix& c,
    const Matrix& d, const Antiunitary& theta) {
  if (coeffs.size() != generators.size())
    throw std::invalid_argument("one coefficient per generator required");
  for (double w : coeffs)
    if (w < 0.0) throw std::invalid_argument("cone coefficients must be >= 0");
  const long n = a.rows();
  const long dim2 = n * n;

  Matrix x = Matrix::Zero(dim2, dim2);
  Matrix y = Matrix::Zero(dim2, dim2);
  for (size_t k = 0; k < generators.size(); ++k) {
    x += coeffs[k] * kron(generators[k], theta.conjugate_op(generators[k]));
    const Matrix& rev = generators[generators.size() - 1 - k];
    y += coeffs[k] * kron(rev, theta.conjugate_op(rev));
  }

  ConeReport r;
  r.trace_value = x.trace().real();
  r.product_trace = (x * y).trace().real();

  const Matrix id = Matrix::Identity(n, n);
  const Matrix h0 = kron(a, id) + kron(id, theta.conjugate_op(a));
  Matrix v = Matrix::Zero(dim2, dim2);
  for (const Matrix& b : bs) {
    v += kron(b, theta.conjugate_op(b));
    v += kron(Matrix(b.adjoint()), theta.conjugate_op(b.adjoint()));
  }
  const Matrix target = hermitian_exp(-(h0 - v));
  for (int steps : {1, 2, 4, 8, 16}) {
    const Matrix factor =
        hermitian_exp(-h0 / steps) * hermitian_exp(v / steps);
    Matrix approx = Matrix::Identity(dim2, dim2);
    for (int s = 0; s < steps; ++s) approx = approx * factor;
    r.trotter_residuals.push_back(operator_norm(target - approx));
  }
  r.trotter_decreasing = true;
  for (size_t k = 1; k < r.trotter_residuals.size(); ++k)
    if (r.trotter_residuals[k] > r.trotter_residuals[k - 1] + 1e-12)
      r.trotter_decreasing = false;

  auto pair_op = [&](const Matrix& p, const Matrix& q) {
    return kron(p, theta.conjugate_op(q));
  };
  const double cc = (pair_op(c, c) * x).trace().real();
  const double dd = (pair_op(d, d) * x).trace().real();
  const double cd = std::abs((pair_op(c, d) * x).trace());
  r.schwarz_slack = cc * dd - cd * cd;
  return r;
}

SplitCoupling analyze_split_coupling(const ModelParams& params,
                                     const Torus& torus, const FockSpace& fock,
                                     const SplitBasis& split,
                                     const Antiunitary& theta) {
  SplitCoupling out;
  out.h_product = split.to_product(build_H_tilde(params, torus, fock));
  const long dl = split.dim_left();
  const long dr = split.dim_right();
  const Matrix idl = Matrix::Identity(dl, dl);
  const Matrix idr = Matrix::Identity(dr, dr);

  // Single-factor parts by normalized partial traces (every crossing term
  // below is traceless in each factor, so this extraction is exact up to
  // the constant split between the factors).
  Matrix cl = Matrix::Zero(dl, dl);
  Matrix cr = Matrix::Zero(dr, dr);
  for (long i = 0; i < dl; ++i)
    for (long j = 0; j < dl; ++j) {
      Complex s = 0.0;
      for (long k = 0; k < dr; ++k) s += out.h_product(i * dr + k, j * dr + k);
      cl(i, j) = s / static_cast<double>(dr);
    }
  for (long i = 0; i < dr; ++i)
    for (long j = 0; j < dr; ++j) {
      Complex s = 0.0;
      for (long k = 0; k < dl; ++k) s += out.h_product(k * dr + i, k * dr + j);
      cr(i, j) = s / static_cast<double>(dl);
    }
  const Complex mean = out.h_product.trace() / static_cast<double>(dl * dr);
  cl -= (mean / 2.0) * idl;
  cr -= (mean / 2.0) * idr;
  out.mirror_residual = max_abs(cr - theta.conjugate_op(cl));

  // Crossing-bond coupling, built bond by bond. Each directed bond joins an
  // even site to an odd neighbor; it crosses the split when its endpoints
  // fall in different halves. The pair operator lives at the first-half
  // endpoint m: B = (-1)^{N_first} c*_{m sigma}, coupled as
  // s t (B (x) theta B theta^{-1} + h.c.) with s = +1 exactly when the even
  // endpoint is the first-half one; the charge part is always
  // -V q_m (x) theta q_m theta^{-1}.
  const FockSpace fl(static_cast<int>(split.left_modes.size()));
  std::vector<int> all_left_modes(split.left_modes.size());
  for (size_t k = 0; k < all_left_modes.size(); ++k)
    all_left_modes[k] = static_cast<int>(k);
  const Matrix par_l =
      fl.parity_diag(all_left_modes).cast<Complex>().asDiagonal();
  auto local_left = [&](int site) {
    for (size_t k = 0; k < split.left_sites.size(); ++k)
      if (split.left_sites[k] == site) return static_cast<int>(k);
    return -1;
  };

  Matrix cross = Matrix::Zero(dl * dr, dl * dr);
  Matrix adverse = Matrix::Zero(dl * dr, dl * dr);
  for (const Bond& b : torus.bonds()) {
    const int loc_from = local_left(b.from);
    const int loc_to = local_left(b.to);
    if ((loc_from >= 0) == (loc_to >= 0)) continue;  // not a crossing bond
    const bool even_first_half = loc_from >= 0;
    const int m = even_first_half ? loc_from : loc_to;
    const double sign = even_first_half ? +1.0 : -1.0;
    if (even_first_half)
      ++out.adverse_bonds;
    else
      ++out.favorable_bonds;
    for (int spin = 0; spin < 2; ++spin) {
      const Matrix astar = par_l * fl.creation(2 * m + spin);
      const Matrix term = kron(astar, theta.conjugate_op(astar));
      cross += sign * params.t * (term + term.adjoint());
      if (even_first_half) adverse += params.t * (term + term.adjoint());
    }
    const Matrix q = fl.charge_diag(m).cast<Complex>().asDiagonal();
    cross -= params.V * kron(q, theta.conjugate_op(q));
  }

  out.decomposition_residual =
      max_abs(out.h_product - kron(cl, idr) - kron(idl, cr) - cross);
  out.h_mirror = out.h_product - 2.0 * adverse;
  return out;
}

namespace {

// Spin value by index: 0 -> +1, 1 -> -1.
inline double spin_of(int bit) { return bit == 0 ? 1.0 : -1.0; }

}  // namespace

Functional<SpinFunction> ising_ring_functional(double coupling) {
  Functional<SpinFunction> w;
  w.arity = 4;
  w.omega = [coupling](const std::vector<SpinFunction>& fs) {
    if (fs.size() != 4) throw std::invalid_argument("arity 4 tuple required");
    Complex num = 0.0;
    double z = 0.0;
    for (int state = 0; state < 16; ++state) {
      double x[4];
      for (int i = 0; i < 4; ++i) x[i] = spin_of((state >> i) & 1);
      double weight = 0.0;
      for (int i = 0; i < 4; ++i) weight += x[i] * x[(i + 1) % 4];
      const double boltz = std::exp(coupling * weight);
      Complex val = 1.0;
      for (int i = 0; i < 4; ++i) val *= fs[static_cast<size_t>(i)]((state >> i) & 1);
      num += boltz * val;
      z += boltz;
    }
    return num / z;
  };
  w.j = [](const SpinFunction& f) { return SpinFunction(f.conjugate()); };
  w.distance = [](const SpinFunction& f, const SpinFunction& g) {
    return (f - g).norm();
  };
  return w;
}

namespace {

Eigen::Vector4cd flatten(const PairElem& e) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  for (const ProductTerm& t : e)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) v(2 * y + z) += t.coeff * t.g(y) * t.h(z);
  return v;
}

}  // namespace

Functional<PairElem> pair_ring_functional(double coupling) {
  Functional<PairElem> w;
  w.arity = 5;
  w.omega = [coupling](const std::vector<PairElem>& fs) {
    if (fs.size() != 5) throw std::invalid_argument("arity 5 tuple required");
    Eigen::Matrix<Complex, 4, 5> values;
    for (int j = 0; j < 5; ++j)
      values.col(j) = flatten(fs[static_cast<size_t>(j)]);
    Complex num = 0.0;
    double z = 0.0;
    for (int state = 0; state < 1024; ++state) {
      double x[10];
      for (int i = 0; i < 10; ++i) x[i] = spin_of((state >> i) & 1);
      double weight = 0.0;
      for (int i = 0; i < 10; ++i) weight += x[i] * x[(i + 1) % 10];
      const double boltz = std::exp(coupling * weight);
      Complex val = 1.0;
      for (int j = 0; j < 5; ++j) {
        const int y = (state >> (2 * j)) & 1;
        const int zz = (state >> (2 * j + 1)) & 1;
        val *= values(2 * y + zz, j);
      }
      num += boltz * val;
      z += boltz;
    }
    return num / z;
  };
  w.j = [](const PairElem& e) {
    PairElem out;
    for (const ProductTerm& t : e)
      out.push_back(ProductTerm{t.coeff, SpinFunction(t.h.conjugate()),
                                SpinFunction(t.g.conjugate())});
    return out;
  };
  w.t_plus = [](const PairElem& e) {
    PairElem out;
    for (const ProductTerm& t : e)
      out.push_back(
          ProductTerm{t.coeff, t.g, SpinFunction(t.g.conjugate())});
    return out;
  };
  w.t_minus = [](const PairElem& e) {
    PairElem out;
    for (const ProductTerm& t : e)
      out.push_back(
          ProductTerm{t.coeff, SpinFunction(t.h.conjugate()), t.h});
    return out;
  };
  w.distance = [](const PairElem& a, const PairElem& b) {
    return (flatten(a) - flatten(b)).norm();
  };
  return w;
}

}  // namespace cdw

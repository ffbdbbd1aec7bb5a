#include "cdw/fock.hpp"

#include <Eigen/SVD>
#include <bit>
#include <stdexcept>

namespace cdw {

FockSpace::FockSpace(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1 || n_modes > 24)
    throw std::invalid_argument("unsupported mode count");
}

Matrix FockSpace::creation(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw std::out_of_range("bad mode");
  const long d = dim();
  Matrix out = Matrix::Zero(d, d);
  const unsigned long bit = 1UL << mode;
  const unsigned long below = bit - 1;
  for (long b = 0; b < d; ++b) {
    const auto ub = static_cast<unsigned long>(b);
    if (ub & bit) continue;
    const int sgn = (std::popcount(ub & below) % 2 == 0) ? 1 : -1;
    out(static_cast<long>(ub | bit), b) = sgn;
  }
  return out;
}

RealVector FockSpace::number_diag(int mode) const {
  const long d = dim();
  RealVector out(d);
  for (long b = 0; b < d; ++b)
    out(b) = (static_cast<unsigned long>(b) >> mode) & 1UL;
  return out;
}

RealVector FockSpace::charge_diag(int site) const {
  const long d = dim();
  const int mu = mode_index(site, Spin::Up);
  const int md = mode_index(site, Spin::Down);
  RealVector out(d);
  for (long b = 0; b < d; ++b) {
    const auto ub = static_cast<unsigned long>(b);
    out(b) = static_cast<double>(((ub >> mu) & 1UL) + ((ub >> md) & 1UL)) - 1.0;
  }
  return out;
}

RealVector FockSpace::parity_diag(const std::vector<int>& modes) const {
  unsigned long mask = 0;
  for (int m : modes) mask |= 1UL << m;
  const long d = dim();
  RealVector out(d);
  for (long b = 0; b < d; ++b)
    out(b) = (std::popcount(static_cast<unsigned long>(b) & mask) % 2 == 0)
                 ? 1.0
                 : -1.0;
  return out;
}

std::vector<int> FockSpace::total_number() const {
  std::vector<int> out(static_cast<size_t>(dim()));
  for (long b = 0; b < dim(); ++b)
    out[static_cast<size_t>(b)] = std::popcount(static_cast<unsigned long>(b));
  return out;
}

std::vector<int> FockSpace::total_sz() const {
  // Up modes are even mode indices, down modes odd; S_z in units of 1/2.
  unsigned long up_mask = 0;
  for (int m = 0; m < n_modes_; m += 2) up_mask |= 1UL << m;
  std::vector<int> out(static_cast<size_t>(dim()));
  for (long b = 0; b < dim(); ++b) {
    const auto ub = static_cast<unsigned long>(b);
    const int up = std::popcount(ub & up_mask);
    const int dn = std::popcount(ub & ~up_mask & ((1UL << n_modes_) - 1));
    out[static_cast<size_t>(b)] = up - dn;
  }
  return out;
}

Vector FockSpace::vacuum() const {
  Vector v = Vector::Zero(dim());
  v(0) = 1.0;
  return v;
}

SplitBasis tensor_split(const FockSpace& fock, const Torus& torus,
                        SplitKind kind) {
  SplitBasis sb;
  sb.left_sites = torus.half_sites(kind, true);
  sb.right_sites = torus.half_sites(kind, false);
  for (int m = 0; m < fock.num_modes(); ++m) {
    const int site = m / 2;
    if (torus.in_first_half(torus.site(site), kind))
      sb.left_modes.push_back(m);
    else
      sb.right_modes.push_back(m);
  }
  const long d = fock.dim();
  unsigned long left_mask = 0;
  for (int m : sb.left_modes) left_mask |= 1UL << m;

  sb.perm = Matrix::Zero(d, d);
  for (long b = 0; b < d; ++b) {
    const auto ub = static_cast<unsigned long>(b);
    long idx_l = 0, idx_r = 0;
    for (size_t k = 0; k < sb.left_modes.size(); ++k)
      if ((ub >> sb.left_modes[k]) & 1UL) idx_l |= 1L << k;
    for (size_t k = 0; k < sb.right_modes.size(); ++k)
      if ((ub >> sb.right_modes[k]) & 1UL) idx_r |= 1L << k;
    // Reordering sign: one transposition per (occupied left, occupied right)
    // pair that is out of canonical order.
    int inversions = 0;
    for (int l : sb.left_modes) {
      if (!((ub >> l) & 1UL)) continue;
      for (int r : sb.right_modes)
        if (((ub >> r) & 1UL) && l > r) ++inversions;
    }
    const int sgn = inversions % 2 == 0 ? 1 : -1;
    sb.perm(idx_l * sb.dim_right() + idx_r, b) = sgn;
  }
  return sb;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix a_operator(const FockSpace& fock, const Torus& torus, Mode mode,
                  SplitKind kind) {
  if (!torus.in_first_half(torus.site(mode.site), kind))
    throw std::invalid_argument("a operator requires a first-half site");
  std::vector<int> half_modes;
  for (int s : torus.half_sites(kind, true)) {
    half_modes.push_back(FockSpace::mode_index(s, Spin::Up));
    half_modes.push_back(FockSpace::mode_index(s, Spin::Down));
  }
  const Matrix c =
      fock.creation(FockSpace::mode_index(mode.site, mode.spin)).adjoint();
  const RealVector par = fock.parity_diag(half_modes);
  return c * par.cast<Complex>().asDiagonal();
}

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& a, double tol) {
  return max_abs(a - Matrix(a.adjoint())) <= tol;
}

double operator_norm(const Matrix& a) {
  return a.jacobiSvd().singularValues()(0);
}

}  // namespace cdw

#include "cdw/model.hpp"

#include <stdexcept>

namespace cdw {

void ModelParams::validate() const {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  if (V < 0.0) throw std::invalid_argument("V must be nonnegative");
  if (Delta < 0.0) throw std::invalid_argument("Delta must be nonnegative");
  if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
}

Matrix build_hamiltonian(const ModelParams& p, const Torus& torus,
                         const FockSpace& fock) {
  const long d = fock.dim();
  Matrix h = Matrix::Zero(d, d);

  // Hopping.
  for (const Bond& b : torus.bonds()) {
    for (Spin s : {Spin::Up, Spin::Down}) {
      const Matrix ci = fock.creation(FockSpace::mode_index(b.from, s));
      const Matrix cj = fock.creation(FockSpace::mode_index(b.to, s));
      const Matrix hop = ci * cj.adjoint();
      h += -p.t * (hop + hop.adjoint());
    }
  }

  // Diagonal interactions and staggered potential.
  RealVector diag = RealVector::Zero(d);
  std::vector<RealVector> q;
  for (int j = 0; j < torus.num_sites(); ++j) q.push_back(fock.charge_diag(j));
  for (int j = 0; j < torus.num_sites(); ++j) {
    diag += p.U * q[j].cwiseProduct(q[j]);
    diag += (p.Delta / 2.0) * torus.sign(torus.site(j)) * q[j];
  }
  for (const Bond& b : torus.bonds())
    diag += p.V * q[b.from].cwiseProduct(q[b.to]);
  h += diag.cast<Complex>().asDiagonal();
  return h;
}

Matrix build_T(const ModelParams& p, const Torus& torus,
               const FockSpace& fock) {
  const long d = fock.dim();
  Matrix t = Matrix::Zero(d, d);
  for (const Bond& b : torus.bonds()) {
    for (Spin s : {Spin::Up, Spin::Down}) {
      const Matrix ci = fock.creation(FockSpace::mode_index(b.from, s));
      const Matrix cj = fock.creation(FockSpace::mode_index(b.to, s));
      const Matrix pair = ci * cj;  // c*_i c*_j, i even
      t += -p.t * (pair + pair.adjoint());
    }
  }
  return t;
}

RealVector build_W_diag(const ModelParams& p, const Torus& torus,
                        const FockSpace& fock) {
  const long d = fock.dim();
  RealVector w = RealVector::Zero(d);
  std::vector<RealVector> q;
  for (int j = 0; j < torus.num_sites(); ++j) q.push_back(fock.charge_diag(j));
  for (int j = 0; j < torus.num_sites(); ++j) {
    w += p.U * q[j].cwiseProduct(q[j]);
    w += (p.Delta / 2.0) * q[j];
  }
  for (const Bond& b : torus.bonds())
    w += -p.V * q[b.from].cwiseProduct(q[b.to]);
  return w;
}

RealVector build_W_diag_rewritten(const ModelParams& p, const Torus& torus,
                                  const FockSpace& fock) {
  const long d = fock.dim();
  RealVector w = RealVector::Zero(d);
  std::vector<RealVector> q;
  for (int j = 0; j < torus.num_sites(); ++j) q.push_back(fock.charge_diag(j));
  for (int j = 0; j < torus.num_sites(); ++j) {
    w += -p.S() * q[j].cwiseProduct(q[j]);
    w += (p.Delta / 2.0) * q[j];
  }
  for (const Bond& b : torus.bonds()) {
    const RealVector diff = q[b.from] - q[b.to];
    w += (p.V / 2.0) * diff.cwiseProduct(diff);
  }
  return w;
}

Matrix build_H_tilde(const ModelParams& p, const Torus& torus,
                     const FockSpace& fock) {
  Matrix h = build_T(p, torus, fock);
  h += build_W_diag(p, torus, fock).cast<Complex>().asDiagonal();
  return h;
}

Matrix zigzag_unitary(const Torus& torus, const FockSpace& fock) {
  Matrix v = fock.identity();
  for (int j = 0; j < torus.num_sites(); ++j) {
    if (torus.parity(j) != Parity::Odd) continue;
    for (Spin s : {Spin::Up, Spin::Down}) {
      // String over all same-spin modes except (j, sigma).
      std::vector<int> string_modes;
      for (int i = 0; i < torus.num_sites(); ++i)
        if (i != j) string_modes.push_back(FockSpace::mode_index(i, s));
      const RealVector str = fock.parity_diag(string_modes);
      const Matrix cdag = fock.creation(FockSpace::mode_index(j, s));
      const Matrix vjs =
          str.cast<Complex>().asDiagonal() * (cdag + cdag.adjoint());
      v = v * vjs;
    }
  }
  return v;
}

ProjectorSet charge_projectors(const FockSpace& fock, int site) {
  const RealVector q = fock.charge_diag(site);
  const long d = q.size();
  ProjectorSet ps;
  ps.p0 = RealVector::Zero(d);
  ps.pminus = RealVector::Zero(d);
  ps.lambda_plus = RealVector::Zero(d);
  for (long b = 0; b < d; ++b) {
    if (q(b) == 0.0) ps.p0(b) = 1.0;
    if (q(b) == -1.0) ps.pminus(b) = 1.0;
    if (q(b) == 1.0) ps.lambda_plus(b) = 1.0;
  }
  ps.pplus = ps.p0 + ps.lambda_plus;  // E({0, +1})
  ps.lambda_zero = ps.p0;
  ps.lambda_minus = ps.pminus;
  return ps;
}

ChessboardProjectors chessboard_projectors(const Torus& torus,
                                           const FockSpace& fock) {
  const int L = torus.half_side();
  const int M = (L - 1) / 2;
  ChessboardProjectors out;
  out.plus = RealVector::Ones(fock.dim());
  out.minus = RealVector::Ones(fock.dim());
  auto pick = [&](int site, bool plus) {
    const ProjectorSet ps = charge_projectors(fock, site);
    return plus ? ps.pplus : ps.pminus;
  };
  // Striped bulk columns, empty when M = 0.
  for (int m = 1; m <= M; ++m) {
    for (int n = -L; n <= L - 1; ++n) {
      const int base = -L + 4 * m;
      const bool pat[4] = {true, false, false, true};  // for P^{(+)}
      for (int k = 0; k < 4; ++k) {
        const Site s = torus.wrap(base + k, n);
        const int idx = torus.index(s);
        out.plus = out.plus.cwiseProduct(pick(idx, pat[k]));
        out.minus = out.minus.cwiseProduct(pick(idx, !pat[k]));
      }
    }
  }
  // Boundary factor dP^{(omega)} over columns L-2 and L-1.
  for (int n = -L; n <= L - 1; ++n) {
    for (int x : {L - 2, L - 1}) {
      const int idx = torus.index(torus.wrap(x, n));
      out.plus = out.plus.cwiseProduct(pick(idx, true));
      out.minus = out.minus.cwiseProduct(pick(idx, false));
    }
  }
  return out;
}

RealVector gauge_u(const Torus& torus, const FockSpace& fock) {
  std::vector<int> odd_modes;
  for (int j = 0; j < torus.num_sites(); ++j) {
    if (torus.parity(j) != Parity::Odd) continue;
    odd_modes.push_back(FockSpace::mode_index(j, Spin::Up));
    odd_modes.push_back(FockSpace::mode_index(j, Spin::Down));
  }
  return fock.parity_diag(odd_modes);
}

double charge_config_energy(const ModelParams& p, const Torus& torus,
                            const std::vector<int>& m) {
  double e = 0.0;
  for (int j = 0; j < torus.num_sites(); ++j) {
    const double mj = m[static_cast<size_t>(j)];
    e += -p.S() * mj * mj + (p.Delta / 2.0) * mj;
  }
  for (const Bond& b : torus.bonds()) {
    const double diff = m[static_cast<size_t>(b.from)] - m[static_cast<size_t>(b.to)];
    e += (p.V / 2.0) * diff * diff;
  }
  return e;
}

}  // namespace cdw

#ifndef CDW_MODEL_HPP
#define CDW_MODEL_HPP

#include "cdw/fock.hpp"
#include "cdw/lattice.hpp"

namespace cdw {

// Physical couplings and inverse temperature.
struct ModelParams {
  double t = 0.1;      // hopping, > 0
  double U = 0.0;      // on-site coupling
  double V = 1.0;      // nearest-neighbor coupling, >= 0
  double Delta = 2.0;  // staggered potential, >= 0
  double beta = 10.0;  // inverse temperature, > 0 (0 = normalized trace)

  double S() const { return 2.0 * V - U; }
  // Hypothesis of the long-range-order statement: 2V - U + Delta/2 > 0.
  bool cdw_regime() const { return S() + Delta / 2.0 > 0.0; }
  void validate() const;
};

// Spectral projectors of q_j, all diagonal.
//   p0    = E({0}),   pplus = E({0, +1}),   pminus = E({-1}),
//   plus the rank-per-eigenvalue family E({-1}), E({0}), E({+1}).
struct ProjectorSet {
  RealVector p0;
  RealVector pplus;
  RealVector pminus;
  RealVector lambda_minus;  // E({-1}) (== pminus)
  RealVector lambda_zero;   // E({0})  (== p0)
  RealVector lambda_plus;   // E({+1})
};

// H = -t sum_{<i,j>,sigma} (c*_i c_j + h.c.) + U sum (n_j - 1)^2
//     + V sum_{<i,j>} q_i q_j + (Delta/2) sum (-1)^{|j|} q_j,
// with <i,j> enumerated as directed bonds from even sites.
Matrix build_hamiltonian(const ModelParams& p, const Torus& torus,
                         const FockSpace& fock);

// Pair-hopping part of the zigzag-transformed Hamiltonian:
// T = sum_{<i,j>,sigma} (-t)(c*_i c*_j + c_j c_i), i the even site.
Matrix build_T(const ModelParams& p, const Torus& torus,
               const FockSpace& fock);

// Classical charge potential, diagonal:
// W = U sum q_j^2 - V sum_{<i,j>} q_i q_j + (Delta/2) sum q_j.
RealVector build_W_diag(const ModelParams& p, const Torus& torus,
                        const FockSpace& fock);
// Same operator via the rewriting
// W = -S sum q_j^2 + (V/2) sum_{<i,j>} (q_i - q_j)^2 + (Delta/2) sum q_j.
RealVector build_W_diag_rewritten(const ModelParams& p, const Torus& torus,
                                  const FockSpace& fock);

Matrix build_H_tilde(const ModelParams& p, const Torus& torus,
                     const FockSpace& fock);

// Zigzag unitary V = prod_{j odd} v_{j up} v_{j down},
// v_{j sigma} = [prod_{i != j} (-1)^{n_{i sigma}}] (c*_{j sigma} + c_{j sigma}).
// Factors are multiplied in canonical mode order; only the conjugation
// identities are contractual, not the matrix itself.
Matrix zigzag_unitary(const Torus& torus, const FockSpace& fock);

ProjectorSet charge_projectors(const FockSpace& fock, int site);

// Chessboard projectors P_Lambda^{(+-)} for L = 2M + 1, including the
// boundary factor dP^{(omega)} over the two columns j1 = L-2 and L-1.
// For M = 0 the bracketed product is empty and P_Lambda^{(omega)} = dP^{(omega)}.
struct ChessboardProjectors {
  RealVector plus;
  RealVector minus;
};
ChessboardProjectors chessboard_projectors(const Torus& torus,
                                           const FockSpace& fock);

// Diagonal gauge u = exp{i pi sum_sigma sum_{j odd} n_{j sigma}};
// u T u^{-1} = -T and u W u^{-1} = W.
RealVector gauge_u(const Torus& torus, const FockSpace& fock);

// Classical energy of a charge configuration m in {-1,0,+1}^Lambda:
// e(m) = -S sum m_j^2 + (V/2) sum_{<i,j>} (m_i - m_j)^2 + (Delta/2) sum m_j.
double charge_config_energy(const ModelParams& p, const Torus& torus,
                            const std::vector<int>& m);

}  // namespace cdw

#endif

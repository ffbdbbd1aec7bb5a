#ifndef CDW_THERMAL_HPP
#define CDW_THERMAL_HPP

#include "cdw/model.hpp"

namespace cdw {

struct EigenSystem {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, unitary
};

EigenSystem diagonalize(const Matrix& h);

// Blockwise diagonalization of a Hamiltonian that commutes with total
// particle number and total S_z; basis states are grouped by (N, S_z),
// each block is solved independently, and the result is reassembled in
// ascending eigenvalue order. Used as a cross-check of the dense path.
EigenSystem diagonalize_blocked(const Matrix& h, const FockSpace& fock);

// Gibbs state of a fixed Hamiltonian at inverse temperature beta >= 0
// (beta = 0 means the normalized trace). Boltzmann weights are measured
// from the ground energy so that no overflow occurs at large beta.
class ThermalState {
 public:
  ThermalState(EigenSystem es, double beta);

  double beta() const { return beta_; }
  const EigenSystem& eigensystem() const { return es_; }
  double ground_energy() const { return es_.eigenvalues(0); }
  double gap() const;
  // ln Tr e^{-beta H}
  double log_z() const { return log_z_; }

  Complex average(const Matrix& a) const;
  // Fast path for operators diagonal in the same basis as the
  // Hamiltonian matrix.
  double average_diag(const RealVector& a_diag) const;

 private:
  EigenSystem es_;
  double beta_;
  RealVector weights_;  // e^{-beta (lambda_k - lambda_0)}
  double weight_sum_;
  double log_z_;
};

Complex thermal_average(const Matrix& a, const Matrix& h, double beta);

// Spectral window [e_min, e_min + delta * |Lambda|] of a Hamiltonian and
// the projectors onto it and its complement.
struct SpectralWindow {
  double delta = 0.0;
  double ground_energy = 0.0;
  int rank = 0;
  Matrix projector;   // E_delta
  Matrix complement;  // 1 - E_delta
};

SpectralWindow spectral_window(const EigenSystem& es, double delta,
                               int num_sites);

// Staggered charge correlation between the origin o = (0,0) and site j,
// evaluated along both routes that must agree:
//   via_h       = (-1)^{|j|} < q_o q_j >  in the Gibbs state of H,
//   via_h_tilde =            < q_o q_j >  in the Gibbs state of H-tilde.
struct CorrelationPair {
  double via_h = 0.0;
  double via_h_tilde = 0.0;
};

CorrelationPair staggered_correlation(int j, const ThermalState& state_h,
                                      const ThermalState& state_ht,
                                      const Torus& torus,
                                      const FockSpace& fock);
CorrelationPair staggered_correlation(int j, const ModelParams& p,
                                      const Torus& torus,
                                      const FockSpace& fock);

// Exact t = 0 reference values by classical enumeration: with the pair
// hopping switched off, H-tilde is diagonal and every eigenstate is
// labelled by a charge configuration m in {-1,0,+1}^Lambda with
// degeneracy 2^{#{j : m_j = 0}} and energy charge_config_energy(m).
double classical_staggered_correlation(const ModelParams& p,
                                       const Torus& torus, int j);
double classical_log_z(const ModelParams& p, const Torus& torus);

}  // namespace cdw

#endif

#ifndef CDW_FOCK_HPP
#define CDW_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cdw/lattice.hpp"

namespace cdw {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Fermionic mode (site, spin). Modes are ordered site-major with up < down;
// this order is frozen: every Jordan-Wigner sign below depends on it.
enum class Spin { Up = 0, Down = 1 };

struct Mode {
  int site = 0;
  Spin spin = Spin::Up;
};

// Fock space over an ordered list of modes, occupation bitstrings as basis.
// Bit m of a basis index is the occupancy of mode m. Dense matrices only;
// intended scale is L=1 (8 modes, dimension 256).
class FockSpace {
 public:
  explicit FockSpace(int n_modes);
  static FockSpace over(const Torus& torus) {
    return FockSpace(2 * torus.num_sites());
  }

  int num_modes() const { return n_modes_; }
  long dim() const { return 1L << n_modes_; }

  static int mode_index(int site, Spin spin) {
    return 2 * site + static_cast<int>(spin);
  }

  // c^*_m with sign (-1)^{# occupied modes preceding m}.
  Matrix creation(int mode) const;
  Matrix annihilation(int mode) const { return creation(mode).adjoint(); }
  // n_m, diagonal.
  RealVector number_diag(int mode) const;

  // q_j = n_{j up} + n_{j down} - 1, diagonal entries in {-1, 0, +1}.
  RealVector charge_diag(int site) const;
  Matrix charge(int site) const {
    return charge_diag(site).cast<Complex>().asDiagonal();
  }

  // Parity (-1)^{sum of n_m over the given modes}, diagonal +-1.
  RealVector parity_diag(const std::vector<int>& modes) const;

  // Total particle number and S_z (in units of 1/2) of each basis state,
  // for sector bookkeeping of number-conserving Hamiltonians.
  std::vector<int> total_number() const;
  std::vector<int> total_sz() const;

  Matrix identity() const {
    return Matrix::Identity(dim(), dim());
  }
  Vector vacuum() const;

 private:
  int n_modes_;
};

// Tensor factorization of the full Fock space across a half-lattice split.
// The product basis lists the first-half ("left") modes before the
// second-half ones; basis vectors are re-signed by the fermionic reordering
// permutation, so the change of basis is a signed permutation (unitary).
// Product index = (left occupancy index) * dim_right + (right occupancy index),
// matching kron(A_left, B_right).
struct SplitBasis {
  std::vector<int> left_modes;   // full-space mode indices, canonical order
  std::vector<int> right_modes;
  std::vector<int> left_sites;   // site indices of the halves
  std::vector<int> right_sites;
  Matrix perm;                   // product-basis row, canonical-basis column

  long dim_left() const { return 1L << left_modes.size(); }
  long dim_right() const { return 1L << right_modes.size(); }

  // A (canonical basis) -> A in the product basis.
  Matrix to_product(const Matrix& a) const { return perm * a * perm.adjoint(); }
  Matrix from_product(const Matrix& a) const {
    return perm.adjoint() * a * perm;
  }
};

SplitBasis tensor_split(const FockSpace& fock, const Torus& torus,
                        SplitKind kind);

Matrix kron(const Matrix& a, const Matrix& b);

// a_{j sigma} = c_{j sigma} (-1)^{N_first_half}; the mode's site must lie in
// the first half of the split.
Matrix a_operator(const FockSpace& fock, const Torus& torus, Mode mode,
                  SplitKind kind);

// Small numerical helpers used throughout.
double max_abs(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = 1e-12);
double operator_norm(const Matrix& a);  // largest singular value

}  // namespace cdw

#endif

#ifndef CDW_LATTICE_HPP
#define CDW_LATTICE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdw {

// Lattice coordinates (j1, j2), each in [-L, L), periodic with L == -L.
struct Site {
  int x = 0;  // j1
  int y = 0;  // j2
  friend bool operator==(const Site& a, const Site& b) {
    return a.x == b.x && a.y == b.y;
  }
};

enum class Parity { Even, Odd };
enum class SplitKind { Vertical, Horizontal };

// Directed bond emitted by an even site, one of the four directions
// (+-1, 0), (0, +-1). The Hamiltonian sums run over this multiset, so on
// the side-2 torus geometric pairs appear twice.
struct Bond {
  int from = 0;  // site index, always even parity
  int to = 0;    // site index of from + direction (wrapped)
  int dx = 0;
  int dy = 0;
};

// Undirected geometric edge, multiplicity 1, used by contour combinatorics.
struct Edge {
  int a = 0;
  int b = 0;          // a < b in canonical index order
  bool horizontal = false;  // endpoints differ in the 1-coordinate
  int lower = 0;      // the endpoint s with partner == s + delta (wrapped)
};

// Periodic square torus of even side. Sites are stored row-major on
// (j1, j2), j1 major; this canonical order is frozen because every mode
// index downstream depends on it.
class Torus {
 public:
  // Quantum convention: half-side L must be odd and positive.
  static Torus from_half_side(int L);
  // Geometry-only constructor for contour combinatorics, any even side >= 2.
  static Torus from_side(int side);

  int side() const { return side_; }
  int half_side() const { return side_ / 2; }
  int num_sites() const { return side_ * side_; }

  int index(Site s) const;
  Site site(int idx) const { return sites_[static_cast<size_t>(idx)]; }
  const std::vector<Site>& sites() const { return sites_; }

  // Wraps arbitrary integer coordinates into [-L, L).
  Site wrap(int x, int y) const;

  Parity parity(Site s) const {
    return ((std::abs(s.x) + std::abs(s.y)) % 2 == 0) ? Parity::Even
                                                      : Parity::Odd;
  }
  Parity parity(int idx) const { return parity(site(idx)); }
  int sign(Site s) const {  // (-1)^{|j|}
    return parity(s) == Parity::Even ? 1 : -1;
  }

  // Directed bonds, 4 per even site, 2|Lambda| total.
  const std::vector<Bond>& bonds() const { return bonds_; }
  // Deduplicated geometric edges.
  const std::vector<Edge>& edges() const { return edges_; }
  // Distinct geometric neighbors of a site (4 on side >= 3, 2 on side 2).
  const std::vector<int>& neighbors(int idx) const {
    return neighbors_[static_cast<size_t>(idx)];
  }

  // Half-lattice splits. Vertical: left = {j1 <= -1}, right = {j1 >= 0}.
  // Horizontal: lower = {j2 <= -1}, upper = {j2 >= 0}.
  std::vector<int> half_sites(SplitKind kind, bool first_half) const;
  bool in_first_half(Site s, SplitKind kind) const {
    return kind == SplitKind::Vertical ? s.x <= -1 : s.y <= -1;
  }

  // r_v: Lambda_R -> Lambda_L, (j1, j2) -> (-j1-1, j2), domain j1 >= 0.
  // r_h: Lambda^L -> Lambda^U, (j1, j2) -> (j1, -j2-1), domain j2 <= -1.
  Site reflect(Site s, SplitKind kind) const;
  // Inverse maps (Lambda_L -> Lambda_R resp. Lambda^U -> Lambda^L); the
  // formulas are the same, only the domain check differs.
  Site reflect_inverse(Site s, SplitKind kind) const;

 private:
  explicit Torus(int side);
  int side_ = 0;
  std::vector<Site> sites_;
  std::vector<Bond> bonds_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
};

}  // namespace cdw

#endif

#ifndef CDW_CONTOURS_HPP
#define CDW_CONTOURS_HPP

#include <cstdint>
#include <vector>

#include "cdw/lattice.hpp"

namespace cdw {

// A connected subset gamma of the torus, stored as sorted site indices.
using ConnectedSet = std::vector<int>;

// One nearest-neighbor boundary pair <i, j> with i inside, j outside.
// horizontal = endpoints differ in the 1-coordinate. wedge_even is the
// parity of the pair's reference site (the endpoint with the smaller
// 1-coordinate for horizontal pairs, smaller 2-coordinate for vertical
// ones, coordinates taken in [-L, L)).
struct BoundaryPair {
  int inside = 0;
  int outside = 0;
  bool horizontal = false;
  bool wedge_even = false;
};

struct Contour {
  std::vector<BoundaryPair> pairs;
  int length() const { return static_cast<int>(pairs.size()); }
  // Size of the split d(gamma)_{alpha,beta}.
  int split_size(bool horizontal, bool wedge_even) const;
  std::vector<BoundaryPair> split(bool horizontal, bool wedge_even) const;
};

// A spin assignment Lambda -> {+, -}; true means +.
using Configuration = std::vector<bool>;

// Breadth-first connectivity oracle over geometric (undirected) adjacency.
bool is_connected(const std::vector<int>& sites, const Torus& torus);

// All connected subsets of size in [1, max_size], each exactly once,
// deterministic order. Guarded to side <= 8.
std::vector<ConnectedSet> enumerate_connected_sets(const Torus& torus,
                                                   int max_size);

// Boundary pairs of gamma over the geometric (multiplicity-1) edge view.
// Rejects gamma empty or equal to the whole torus.
Contour boundary(const std::vector<int>& gamma, const Torus& torus);

// The connected component of {j : c(j) = +} containing m; requires c(m) = +.
ConnectedSet minimal_set(const Configuration& c, int m, const Torus& torus);

// #{gamma connected : m in gamma, |gamma| <= |Lambda|/2, |boundary| = ell}.
// The |gamma| <= |Lambda|/2 convention discards complement duplicates; on
// this convention the side-4 count at ell = 4 is exactly the singleton.
// Guards: side in {2, 4, 6}; at side 6 the enumeration is over connected
// sets of size <= 8, which is exhaustive for ell <= 10 because any larger
// set (wrapping or not) has boundary length >= 12.
struct ContourCount {
  std::int64_t count = 0;
  double bound = 0.0;  // ell^2 3^ell
  double ratio = 0.0;  // count / bound
};
ContourCount count_contours(const Torus& torus, int ell, int m_site);

// C * sum_{ell >= 4} ell^2 3^ell P^{ell / (2|Lambda|)}, evaluated in closed
// form when x = 3 P^{1/(2|Lambda|)} < 1; diverges = true otherwise.
struct PeierlsSum {
  double value = 0.0;
  bool diverges = false;
};
PeierlsSum peierls_series(double script_p, int num_sites, double c);

}  // namespace cdw

#endif

#include "cdw/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace cdw {

Torus::Torus(int side) : side_(side) {
  const int L = side_ / 2;
  sites_.reserve(static_cast<size_t>(num_sites()));
  for (int x = -L; x < L; ++x)
    for (int y = -L; y < L; ++y) sites_.push_back(Site{x, y});

  // Directed bonds from even sites, in canonical site order.
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int i = 0; i < num_sites(); ++i) {
    if (parity(i) != Parity::Even) continue;
    const Site s = site(i);
    for (const auto& d : dirs) {
      const Site t = wrap(s.x + d[0], s.y + d[1]);
      bonds_.push_back(Bond{i, index(t), d[0], d[1]});
    }
  }

  // Geometric edges (undirected, deduplicated) and neighbor lists.
  neighbors_.assign(static_cast<size_t>(num_sites()), {});
  for (int i = 0; i < num_sites(); ++i) {
    const Site s = site(i);
    for (const auto& d : dirs) {
      const int j = index(wrap(s.x + d[0], s.y + d[1]));
      auto& nb = neighbors_[static_cast<size_t>(i)];
      if (std::find(nb.begin(), nb.end(), j) == nb.end()) nb.push_back(j);
    }
  }
  for (int i = 0; i < num_sites(); ++i) {
    const Site s = site(i);
    // Each edge is recorded once, from the endpoint whose partner is s + delta.
    for (const auto& d : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}}) {
      const int j = index(wrap(s.x + d.first, s.y + d.second));
      if (j == i) continue;  // side-2 self-wrap duplicates are handled below
      Edge e;
      e.a = std::min(i, j);
      e.b = std::max(i, j);
      e.horizontal = d.first != 0;
      e.lower = i;
      const bool dup = std::any_of(edges_.begin(), edges_.end(), [&](const Edge& f) {
        return f.a == e.a && f.b == e.b && f.horizontal == e.horizontal;
      });
      if (!dup) edges_.push_back(e);
    }
  }
}

Torus Torus::from_half_side(int L) {
  if (L < 1) throw std::invalid_argument("L must be positive");
  if (L % 2 == 0) throw std::invalid_argument("L must be odd");
  return Torus(2 * L);
}

Torus Torus::from_side(int side) {
  if (side < 2 || side % 2 != 0)
    throw std::invalid_argument("side must be even and >= 2");
  return Torus(side);
}

int Torus::index(Site s) const {
  const int L = half_side();
  if (s.x < -L || s.x >= L || s.y < -L || s.y >= L)
    throw std::out_of_range("site coordinates out of range");
  return (s.x + L) * side_ + (s.y + L);
}

Site Torus::wrap(int x, int y) const {
  const int L = half_side();
  auto w = [&](int v) {
    v = (v + L) % side_;
    if (v < 0) v += side_;
    return v - L;
  };
  return Site{w(x), w(y)};
}

std::vector<int> Torus::half_sites(SplitKind kind, bool first_half) const {
  std::vector<int> out;
  for (int i = 0; i < num_sites(); ++i) {
    if (in_first_half(site(i), kind) == first_half) out.push_back(i);
  }
  return out;
}

Site Torus::reflect(Site s, SplitKind kind) const {
  if (kind == SplitKind::Vertical) {
    if (s.x < 0) throw std::invalid_argument("r_v domain is the right half");
    return Site{-s.x - 1, s.y};
  }
  if (s.y > -1) throw std::invalid_argument("r_h domain is the lower half");
  return Site{s.x, -s.y - 1};
}

Site Torus::reflect_inverse(Site s, SplitKind kind) const {
  if (kind == SplitKind::Vertical) {
    if (s.x > -1) throw std::invalid_argument("r_v^{-1} domain is the left half");
    return Site{-s.x - 1, s.y};
  }
  if (s.y < 0) throw std::invalid_argument("r_h^{-1} domain is the upper half");
  return Site{s.x, -s.y - 1};
}

}  // namespace cdw

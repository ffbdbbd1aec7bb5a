#include "cdw/contours.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace cdw {

int Contour::split_size(bool horizontal, bool wedge_even) const {
  int n = 0;
  for (const BoundaryPair& p : pairs)
    if (p.horizontal == horizontal && p.wedge_even == wedge_even) ++n;
  return n;
}

std::vector<BoundaryPair> Contour::split(bool horizontal,
                                         bool wedge_even) const {
  std::vector<BoundaryPair> out;
  for (const BoundaryPair& p : pairs)
    if (p.horizontal == horizontal && p.wedge_even == wedge_even)
      out.push_back(p);
  return out;
}

bool is_connected(const std::vector<int>& sites, const Torus& torus) {
  if (sites.empty()) return false;
  std::set<int> in(sites.begin(), sites.end());
  std::set<int> seen;
  std::deque<int> queue{sites.front()};
  seen.insert(sites.front());
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int nb : torus.neighbors(cur)) {
      if (in.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        queue.push_back(nb);
      }
    }
  }
  return seen.size() == in.size();
}

namespace {

// Enumerates every connected superset of `base` exactly once: each call
// emits the current set, then branches on each admissible frontier site,
// forbidding it for later siblings.
void grow(const Torus& torus, std::vector<int>& set, std::vector<char>& in_set,
          std::vector<char>& forbidden, int min_site, int max_size,
          const std::function<void(const std::vector<int>&)>& emit) {
  emit(set);
  if (static_cast<int>(set.size()) == max_size) return;
  std::vector<int> frontier;
  for (int s : set)
    for (int nb : torus.neighbors(s))
      if (nb > min_site && !in_set[static_cast<size_t>(nb)] &&
          !forbidden[static_cast<size_t>(nb)])
        frontier.push_back(nb);
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()),
                 frontier.end());
  std::vector<int> locally_forbidden;
  for (int u : frontier) {
    set.push_back(u);
    in_set[static_cast<size_t>(u)] = 1;
    grow(torus, set, in_set, forbidden, min_site, max_size, emit);
    in_set[static_cast<size_t>(u)] = 0;
    set.pop_back();
    forbidden[static_cast<size_t>(u)] = 1;
    locally_forbidden.push_back(u);
  }
  for (int u : locally_forbidden) forbidden[static_cast<size_t>(u)] = 0;
}

void for_each_connected_containing(const Torus& torus, int root, int min_site,
                                   int max_size,
                                   const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> set{root};
  std::vector<char> in_set(static_cast<size_t>(torus.num_sites()), 0);
  std::vector<char> forbidden(static_cast<size_t>(torus.num_sites()), 0);
  in_set[static_cast<size_t>(root)] = 1;
  grow(torus, set, in_set, forbidden, min_site, max_size, emit);
}

}  // namespace

std::vector<ConnectedSet> enumerate_connected_sets(const Torus& torus,
                                                   int max_size) {
  if (torus.side() > 8)
    throw std::invalid_argument("enumeration limited to side <= 8");
  if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
  std::vector<ConnectedSet> out;
  for (int v = 0; v < torus.num_sites(); ++v) {
    // Sets whose minimum site index is v.
    for_each_connected_containing(torus, v, v, max_size,
                                  [&](const std::vector<int>& s) {
                                    ConnectedSet sorted = s;
                                    std::sort(sorted.begin(), sorted.end());
                                    out.push_back(std::move(sorted));
                                  });
  }
  std::sort(out.begin(), out.end(),
            [](const ConnectedSet& a, const ConnectedSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

Contour boundary(const std::vector<int>& gamma, const Torus& torus) {
  if (gamma.empty()) throw std::invalid_argument("gamma must be nonempty");
  if (static_cast<int>(gamma.size()) == torus.num_sites())
    throw std::invalid_argument("gamma must be a proper subset");
  std::vector<char> in(static_cast<size_t>(torus.num_sites()), 0);
  for (int s : gamma) in[static_cast<size_t>(s)] = 1;
  Contour out;
  for (const Edge& e : torus.edges()) {
    const bool a_in = in[static_cast<size_t>(e.a)];
    const bool b_in = in[static_cast<size_t>(e.b)];
    if (a_in == b_in) continue;
    BoundaryPair p;
    p.inside = a_in ? e.a : e.b;
    p.outside = a_in ? e.b : e.a;
    p.horizontal = e.horizontal;
    const Site sa = torus.site(e.a);
    const Site sb = torus.site(e.b);
    // Reference site: literal smaller coordinate in the pair's direction.
    const Site wedge = e.horizontal ? (sa.x < sb.x ? sa : sb)
                                    : (sa.y < sb.y ? sa : sb);
    p.wedge_even = torus.parity(wedge) == Parity::Even;
    out.pairs.push_back(p);
  }
  return out;
}

ConnectedSet minimal_set(const Configuration& c, int m, const Torus& torus) {
  if (static_cast<int>(c.size()) != torus.num_sites())
    throw std::invalid_argument("configuration size mismatch");
  if (!c[static_cast<size_t>(m)])
    throw std::invalid_argument("pinned site must carry +");
  std::vector<char> seen(c.size(), 0);
  std::deque<int> queue{m};
  seen[static_cast<size_t>(m)] = 1;
  ConnectedSet out{m};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int nb : torus.neighbors(cur)) {
      if (c[static_cast<size_t>(nb)] && !seen[static_cast<size_t>(nb)]) {
        seen[static_cast<size_t>(nb)] = 1;
        out.push_back(nb);
        queue.push_back(nb);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ContourCount count_contours(const Torus& torus, int ell, int m_site) {
  if (torus.side() > 6)
    throw std::invalid_argument("contour counting limited to side <= 6");
  const int ell_guard = torus.side() == 6 ? 10 : 16;
  if (ell < 1 || ell > ell_guard)
    throw std::invalid_argument("boundary length out of range");

  std::int64_t count = 0;
  const int half = torus.num_sites() / 2;
  if (torus.side() <= 4) {
    const int n = torus.num_sites();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (!(mask & (1u << m_site))) continue;
      std::vector<int> gamma;
      for (int s = 0; s < n; ++s)
        if (mask & (1u << s)) gamma.push_back(s);
      if (static_cast<int>(gamma.size()) > half) continue;
      if (static_cast<int>(gamma.size()) == n) continue;
      if (!is_connected(gamma, torus)) continue;
      if (boundary(gamma, torus).length() == ell) ++count;
    }
  } else {
    // Any connected set of more than 8 sites has boundary length >= 12
    // (the minimal polyomino perimeter 2*ceil(2*sqrt(k)) for k >= 9, and
    // any set wrapping the torus meets every transverse line twice for a
    // boundary of at least 2 * side = 12), so size 8 is exhaustive for
    // ell <= 10.
    for_each_connected_containing(
        torus, m_site, -1, 8, [&](const std::vector<int>& gamma) {
          if (boundary(gamma, torus).length() == ell) ++count;
        });
  }
  ContourCount out;
  out.count = count;
  out.bound = static_cast<double>(ell) * ell * std::pow(3.0, ell);
  out.ratio = static_cast<double>(count) / out.bound;
  return out;
}

PeierlsSum peierls_series(double script_p, int num_sites, double c) {
  if (c <= 0.0) throw std::invalid_argument("constant must be positive");
  if (script_p < 0.0 || script_p > 1.0)
    throw std::invalid_argument("probability weight out of [0, 1]");
  PeierlsSum out;
  if (script_p == 0.0) return out;
  const double x = 3.0 * std::pow(script_p, 1.0 / (2.0 * num_sites));
  if (x >= 1.0) {
    out.diverges = true;
    return out;
  }
  // sum_{l>=1} l^2 x^l = x(1+x)/(1-x)^3, minus the l = 1..3 head.
  const double full = x * (1.0 + x) / std::pow(1.0 - x, 3);
  const double head = x + 4.0 * x * x + 9.0 * x * x * x;
  out.value = c * (full - head);
  return out;
}

}  // namespace cdw

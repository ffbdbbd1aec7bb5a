#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "cdw/contours.hpp"

using namespace cdw;

namespace {

// Independent connectivity oracle: union over neighbor closure.
bool connected_oracle(const std::vector<int>& sites, const Torus& torus) {
  if (sites.empty()) return false;
  std::set<int> inside(sites.begin(), sites.end());
  std::set<int> seen{sites[0]};
  std::vector<int> stack{sites[0]};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (int nb : torus.neighbors(cur))
      if (inside.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        stack.push_back(nb);
      }
  }
  return seen.size() == inside.size();
}

std::vector<int> mask_to_sites(unsigned mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("side-2 connectivity census: 13 of 15 nonempty subsets") {
  const Torus torus = Torus::from_side(2);
  int connected = 0;
  for (unsigned mask = 1; mask < 16; ++mask) {
    const auto sites = mask_to_sites(mask, 4);
    CHECK(is_connected(sites, torus) == connected_oracle(sites, torus));
    if (is_connected(sites, torus)) ++connected;
  }
  // The two diagonal pairs are the only disconnected subsets.
  CHECK(connected == 13);
}

TEST_CASE("connected-set enumeration matches the bitmask oracle on side 4") {
  const Torus torus = Torus::from_side(4);
  const auto sets = enumerate_connected_sets(torus, 16);
  std::set<std::vector<int>> unique(sets.begin(), sets.end());
  CHECK(unique.size() == sets.size());  // no duplicates
  std::map<int, long> by_size_enum, by_size_oracle;
  for (const auto& g : sets) {
    CHECK(connected_oracle(g, torus));
    CHECK(std::is_sorted(g.begin(), g.end()));
    ++by_size_enum[static_cast<int>(g.size())];
  }
  for (unsigned mask = 1; mask < (1U << 16); ++mask) {
    const auto sites = mask_to_sites(mask, 16);
    if (connected_oracle(sites, torus))
      ++by_size_oracle[static_cast<int>(sites.size())];
  }
  CHECK(by_size_enum == by_size_oracle);
}

TEST_CASE("boundary pairs match an edge-crossing oracle") {
  const Torus torus = Torus::from_side(4);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned mask =
        1U + static_cast<unsigned>(rng() % ((1U << 16) - 2));
    const auto gamma = mask_to_sites(mask, 16);
    std::set<int> inside(gamma.begin(), gamma.end());
    int crossing = 0;
    for (const Edge& e : torus.edges())
      if (inside.count(e.a) != inside.count(e.b)) ++crossing;
    const Contour c = boundary(gamma, torus);
    CHECK(c.length() == crossing);
    for (const BoundaryPair& bp : c.pairs) {
      CHECK(inside.count(bp.inside) == 1);
      CHECK(inside.count(bp.outside) == 0);
    }
    // The four split classes partition the boundary.
    int total = 0;
    for (bool hor : {false, true})
      for (bool even : {false, true}) {
        total += c.split_size(hor, even);
        CHECK(c.split_size(hor, even) ==
              static_cast<int>(c.split(hor, even).size()));
      }
    CHECK(total == c.length());
  }
  CHECK_THROWS(boundary({}, torus));
  std::vector<int> all(16);
  for (int i = 0; i < 16; ++i) all[static_cast<size_t>(i)] = i;
  CHECK_THROWS(boundary(all, torus));
}

TEST_CASE("minimal set is the plus-component of the marked site") {
  const Torus torus = Torus::from_side(4);
  Configuration c(16, false);
  const int m = torus.index(Site{0, 0});
  const int nb = torus.neighbors(m)[0];
  const int far = torus.index(Site{-2, -2});
  c[static_cast<size_t>(m)] = true;
  c[static_cast<size_t>(nb)] = true;
  c[static_cast<size_t>(far)] = true;  // separate plus island
  const ConnectedSet got = minimal_set(c, m, torus);
  std::vector<int> expect{m, nb};
  std::sort(expect.begin(), expect.end());
  CHECK(got == expect);
}

TEST_CASE("contour counts at pinned site") {
  const Torus t4 = Torus::from_side(4);
  const int m4 = t4.index(Site{0, 0});
  // Boundary length 4: only the singleton {m}.
  CHECK(count_contours(t4, 4, m4).count == 1);
  // Boundary length 6: the four dominoes containing m.
  CHECK(count_contours(t4, 6, m4).count == 4);
  // Odd lengths are impossible.
  CHECK(count_contours(t4, 5, m4).count == 0);

  const Torus t6 = Torus::from_side(6);
  const int m6 = t6.index(Site{0, 0});
  CHECK(count_contours(t6, 4, m6).count == 1);
  CHECK(count_contours(t6, 6, m6).count == 4);
  // Entropy bound ell^2 3^ell dominates through the guard.
  for (int ell = 1; ell <= 10; ++ell) {
    const ContourCount c = count_contours(t6, ell, m6);
    CHECK(c.bound == doctest::Approx(ell * ell * std::pow(3.0, ell)));
    CHECK(c.ratio <= 1.0);
    CHECK(c.ratio ==
          doctest::Approx(static_cast<double>(c.count) / c.bound));
  }
  CHECK_THROWS(count_contours(t6, 12, m6));  // beyond the exhaustive guard
}

TEST_CASE("series closed form matches partial sums") {
  const int num_sites = 36;
  const double c = 2.0;
  // Convergence needs 3 p^{1/72} < 1, i.e. p below roughly 4e-35.
  for (double p : {1e-45, 1e-40, 1e-38}) {
    const PeierlsSum s = peierls_series(p, num_sites, c);
    REQUIRE(!s.diverges);
    const double x = 3.0 * std::pow(p, 1.0 / (2.0 * num_sites));
    double partial = 0.0;
    for (int ell = 4; ell <= 4000; ++ell)
      partial += ell * ell * std::pow(x, ell);
    partial *= c;
    CHECK(s.value == doctest::Approx(partial).epsilon(1e-10));
  }
  CHECK(peierls_series(1.0, num_sites, c).diverges);
  CHECK(peierls_series(0.9, 4, c).diverges);  // x = 3 * 0.9^{1/8} > 1
}

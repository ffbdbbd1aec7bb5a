#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cdw/lattice.hpp"

using namespace cdw;

TEST_CASE("constructors enforce side conventions") {
  CHECK_NOTHROW(Torus::from_half_side(1));
  CHECK_NOTHROW(Torus::from_half_side(3));
  CHECK_THROWS(Torus::from_half_side(2));   // quantum half-side must be odd
  CHECK_THROWS(Torus::from_half_side(0));
  CHECK_NOTHROW(Torus::from_side(4));
  CHECK_THROWS(Torus::from_side(5));        // geometric side must be even
}

TEST_CASE("index / site / wrap round trips") {
  const Torus torus = Torus::from_half_side(3);
  CHECK(torus.side() == 6);
  CHECK(torus.num_sites() == 36);
  for (int i = 0; i < torus.num_sites(); ++i)
    CHECK(torus.index(torus.site(i)) == i);
  const Site s = torus.wrap(3, -4);  // wraps into [-3, 3)
  CHECK(s.x == -3);
  CHECK(s.y == 2);
  CHECK(torus.wrap(-3, 2) == s);
}

TEST_CASE("parity and staggered sign") {
  const Torus torus = Torus::from_half_side(1);
  CHECK(torus.parity(Site{0, 0}) == Parity::Even);
  CHECK(torus.parity(Site{-1, 0}) == Parity::Odd);
  CHECK(torus.parity(Site{0, -1}) == Parity::Odd);
  CHECK(torus.parity(Site{-1, -1}) == Parity::Even);
  CHECK(torus.sign(Site{0, 0}) == 1);
  CHECK(torus.sign(Site{-1, 0}) == -1);
}

TEST_CASE("directed bonds: four per even site, even origin") {
  for (int L : {1, 3}) {
    const Torus torus = Torus::from_half_side(L);
    CHECK(static_cast<int>(torus.bonds().size()) == 2 * torus.num_sites());
    for (const Bond& b : torus.bonds()) {
      CHECK(torus.parity(b.from) == Parity::Even);
      CHECK(std::abs(b.dx) + std::abs(b.dy) == 1);
      const Site from = torus.site(b.from);
      CHECK(torus.index(torus.wrap(from.x + b.dx, from.y + b.dy)) == b.to);
    }
  }
}

TEST_CASE("side-2 geometric pairs carry bond multiplicity two") {
  const Torus torus = Torus::from_half_side(1);
  std::set<std::pair<int, int>> pairs;
  int duplicates = 0;
  for (const Bond& b : torus.bonds()) {
    const auto key = std::minmax(b.from, b.to);
    if (!pairs.insert({key.first, key.second}).second) ++duplicates;
  }
  CHECK(static_cast<int>(pairs.size()) == 4);
  CHECK(duplicates == 4);  // every geometric pair seen twice
}

TEST_CASE("edges are deduplicated and canonical") {
  const Torus t2 = Torus::from_half_side(1);
  CHECK(t2.edges().size() == 4);
  const Torus t6 = Torus::from_half_side(3);
  CHECK(static_cast<int>(t6.edges().size()) == 2 * t6.num_sites());
  for (const Edge& e : t6.edges()) {
    CHECK(e.a < e.b);
    CHECK((e.lower == e.a || e.lower == e.b));
    const Site sa = t6.site(e.a);
    const Site sb = t6.site(e.b);
    if (e.horizontal)
      CHECK(sa.y == sb.y);
    else
      CHECK(sa.x == sb.x);
  }
}

TEST_CASE("neighbors: two distinct on side 2, four on side 6") {
  const Torus t2 = Torus::from_half_side(1);
  for (int i = 0; i < t2.num_sites(); ++i)
    CHECK(t2.neighbors(i).size() == 2);
  const Torus t6 = Torus::from_half_side(3);
  for (int i = 0; i < t6.num_sites(); ++i)
    CHECK(t6.neighbors(i).size() == 4);
}

TEST_CASE("half-lattice splits partition the torus") {
  const Torus torus = Torus::from_half_side(3);
  for (SplitKind kind : {SplitKind::Vertical, SplitKind::Horizontal}) {
    const auto first = torus.half_sites(kind, true);
    const auto second = torus.half_sites(kind, false);
    CHECK(first.size() == 18);
    CHECK(second.size() == 18);
    std::set<int> all(first.begin(), first.end());
    all.insert(second.begin(), second.end());
    CHECK(static_cast<int>(all.size()) == torus.num_sites());
    for (int i : first) CHECK(torus.in_first_half(torus.site(i), kind));
    for (int i : second) CHECK(!torus.in_first_half(torus.site(i), kind));
  }
}

TEST_CASE("reflection is an involution-style bijection between halves") {
  const Torus torus = Torus::from_half_side(3);
  // Vertical: maps the right half {j1 >= 0} onto the left half {j1 <= -1}.
  for (int i : torus.half_sites(SplitKind::Vertical, false)) {
    const Site s = torus.site(i);
    const Site r = torus.reflect(s, SplitKind::Vertical);
    CHECK(r.x == -s.x - 1);
    CHECK(r.y == s.y);
    CHECK(torus.in_first_half(r, SplitKind::Vertical));
    CHECK(torus.reflect_inverse(r, SplitKind::Vertical) == s);
  }
  // Horizontal: maps the lower half {j2 <= -1} onto the upper half.
  for (int i : torus.half_sites(SplitKind::Horizontal, true)) {
    const Site s = torus.site(i);
    const Site r = torus.reflect(s, SplitKind::Horizontal);
    CHECK(r.y == -s.y - 1);
    CHECK(!torus.in_first_half(r, SplitKind::Horizontal));
    CHECK(torus.reflect_inverse(r, SplitKind::Horizontal) == s);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cdw/certify.hpp"
#include "cdw/lattice.hpp"

using namespace cdw;

TEST_CASE("check id registry is stable and duplicate-free") {
  const auto ids = suite_check_ids();
  CHECK(ids.size() == 18);
  const std::set<std::string> unique(ids.begin(), ids.end());
  CHECK(unique.size() == ids.size());
  CHECK(ids.front() == "zigzag-identity");
}

TEST_CASE("projector inequality has a closed-form infinite-temperature value") {
  ModelParams p;
  p.beta = 0.0;
  // Pick the site diagonally across from the origin so the correlation on
  // the left side vanishes at infinite temperature.
  const int j = Torus::from_half_side(1).index(Site{0, -1});
  const CertReport r = verify_first_step(p, j, 1e-10);
  CHECK(r.pass);
  // <q_o q_j> = 0 while the right side is 1 - 3/2 - 4 * 3/16 = -5/4.
  CHECK(std::abs(r.lhs) < 1e-12);
  CHECK(r.rhs == doctest::Approx(-1.25).epsilon(1e-10));
  CHECK(r.slack == doctest::Approx(1.25).epsilon(1e-10));
}

TEST_CASE("projector inequality at finite temperature") {
  ModelParams p;
  p.beta = 4.0;
  for (int j = 0; j < 4; ++j) {
    const CertReport r = verify_first_step(p, j, 1e-10);
    CHECK(r.pass);
    CHECK(r.slack >= -1e-10);
  }
}

TEST_CASE("contour and lattice-filling bounds at a generic point") {
  ModelParams p;
  p.t = 0.2;
  p.beta = 3.0;
  const CertReport contour = verify_contour_inequality(p, -1, 1e-8);
  CHECK(contour.pass);
  CHECK(contour.hypothesis_met);
  const CertReport chess = verify_chessboard_lattice(p, 1e-8);
  CHECK(chess.pass);
}

TEST_CASE("spectral split bookkeeping") {
  ModelParams p;
  p.beta = 4.0;
  const CertReport r = verify_estR(p, 0.5, 1e-8);
  CHECK(r.pass);
  CHECK(r.hypothesis_met);
}

TEST_CASE("off-diagonal reach of the pair hopping") {
  for (double u : {0.0, 3.0}) {
    ModelParams p;
    p.U = u;
    const CertReport r = verify_eshift(p, 1e-10);
    CHECK(r.pass);
  }
}

TEST_CASE("norm and ground-energy bounds") {
  ModelParams p;
  p.t = 0.8;
  const CertReport r = verify_lemma_basic2(p, 1e-8);
  CHECK(r.pass);
}

TEST_CASE("synthetic localization instances satisfy the overlap bound") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const LocalizationInstance inst =
        make_localization_instance(rng, 8 + trial);
    const CertReport r = verify_localization(inst, 1e-12);
    CHECK(r.pass);
    CHECK(r.hypothesis_met);
  }
}

TEST_CASE("charge-moment lower bounds in both coupling regimes") {
  ModelParams strong;  // S = 2 >= 0
  strong.t = 0.02;
  strong.beta = 20.0;
  const CertReport a = verify_vacuum_and_q2(strong, 1e-10, 1e-8);
  CHECK(a.pass);

  ModelParams weak;  // S = -1 < 0, Delta/2 - |S| = 0.5 > 0
  weak.t = 0.02;
  weak.U = 3.0;
  weak.V = 1.0;
  weak.Delta = 3.0;
  weak.beta = 20.0;
  const CertReport b = verify_vacuum_and_q2(weak, 1e-10, 1e-8);
  CHECK(b.pass);
}

TEST_CASE("suite subset selection and determinism") {
  SuiteOptions opt;
  opt.only = {"zigzag-identity", "trace-factorization"};
  const auto first = run_suite(opt);
  const auto second = run_suite(opt);
  REQUIRE(first.size() == second.size());
  CHECK(first.size() >= 2);
  CHECK(all_pass(first));
  for (size_t k = 0; k < first.size(); ++k) {
    CHECK(first[k].id == second[k].id);
    CHECK(first[k].lhs == second[k].lhs);  // bitwise reproducible
    CHECK(first[k].rhs == second[k].rhs);
    CHECK(first[k].slack == second[k].slack);
  }
}

TEST_CASE("zero tolerance forces failures") {
  // The staggered-equivalence check compares two independently
  // diagonalized 256-dimensional spectra, so its residual is tiny but
  // nonzero and a zero tolerance must reject it.
  SuiteOptions opt;
  opt.only = {"staggered-equivalence"};
  opt.tol_matrix = 0.0;
  opt.tol_rel = 0.0;
  const auto reports = run_suite(opt);
  CHECK(!all_pass(reports));
}

TEST_CASE("point formatting") {
  ModelParams p;
  CHECK(format_point(p) == "t=0.1 U=0 V=1 Delta=2 beta=10");
}

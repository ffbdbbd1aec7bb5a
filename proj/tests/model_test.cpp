#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "cdw/model.hpp"
#include "cdw/thermal.hpp"

using namespace cdw;

namespace {

struct Setup {
  Torus torus = Torus::from_half_side(1);
  FockSpace fock = FockSpace::over(torus);
};

}  // namespace

TEST_CASE("parameter validation and derived couplings") {
  ModelParams p;
  CHECK(p.S() == doctest::Approx(2.0));
  CHECK(p.cdw_regime());
  CHECK_NOTHROW(p.validate());
  p.t = 0.0;
  CHECK_THROWS(p.validate());
  p = ModelParams{};
  p.U = 5.0;  // S = -3, S + Delta/2 = -2
  CHECK(!p.cdw_regime());
}

TEST_CASE("hamiltonians are hermitian") {
  const Setup s;
  ModelParams p;
  p.t = 0.3;
  p.U = 1.2;
  CHECK(is_hermitian(build_hamiltonian(p, s.torus, s.fock)));
  CHECK(is_hermitian(build_T(p, s.torus, s.fock)));
  CHECK(is_hermitian(build_H_tilde(p, s.torus, s.fock)));
}

TEST_CASE("charge potential rewriting is an identity") {
  const Setup s;
  for (double u : {0.0, 1.7, 4.0}) {
    ModelParams p;
    p.U = u;
    p.V = 0.8;
    p.Delta = 1.3;
    const RealVector w1 = build_W_diag(p, s.torus, s.fock);
    const RealVector w2 = build_W_diag_rewritten(p, s.torus, s.fock);
    CHECK((w1 - w2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("particle-hole unitary conjugates charge and hopping correctly") {
  const Setup s;
  const Matrix v = zigzag_unitary(s.torus, s.fock);
  CHECK(max_abs(v * v.adjoint() - s.fock.identity()) < 1e-12);

  for (int j = 0; j < s.torus.num_sites(); ++j) {
    const Matrix q = s.fock.charge(j);
    const double sign = s.torus.sign(s.torus.site(j));
    CHECK(max_abs(v * q * v.adjoint() - sign * q) < 1e-12);
  }
  // On odd sites the annihilator turns into the creator.
  for (int j = 0; j < s.torus.num_sites(); ++j) {
    if (s.torus.parity(j) != Parity::Odd) continue;
    for (Spin sp : {Spin::Up, Spin::Down}) {
      const int m = FockSpace::mode_index(j, sp);
      const Matrix lhs = v * s.fock.annihilation(m) * v.adjoint();
      CHECK(max_abs(lhs - s.fock.creation(m)) < 1e-12);
    }
  }
}

TEST_CASE("conjugated hamiltonian equals pair hopping plus charge potential") {
  const Setup s;
  const Matrix v = zigzag_unitary(s.torus, s.fock);
  for (double u : {0.0, 2.5}) {
    ModelParams p;
    p.t = 0.7;
    p.U = u;
    p.V = 1.1;
    p.Delta = 0.9;
    const Matrix h = build_hamiltonian(p, s.torus, s.fock);
    const Matrix ht = build_H_tilde(p, s.torus, s.fock);
    CHECK(max_abs(v * h * v.adjoint() - ht) < 1e-10);
  }
}

TEST_CASE("charge potential spectrum matches configuration enumeration") {
  const Setup s;
  ModelParams p;
  p.U = 0.6;
  p.V = 1.4;
  p.Delta = 2.2;
  RealVector w = build_W_diag(p, s.torus, s.fock);
  std::sort(w.data(), w.data() + w.size());

  // Every eigenstate of the diagonal potential is a charge configuration
  // m in {-1,0,+1}^4 with degeneracy 2^{#{m_j = 0}}.
  std::vector<double> expected;
  const int n = s.torus.num_sites();
  std::vector<int> m(static_cast<size_t>(n));
  for (int code = 0; code < 81; ++code) {
    int c = code, zeros = 0;
    for (int j = 0; j < n; ++j) {
      m[static_cast<size_t>(j)] = c % 3 - 1;
      if (m[static_cast<size_t>(j)] == 0) ++zeros;
      c /= 3;
    }
    const double e = charge_config_energy(p, s.torus, m);
    for (int d = 0; d < (1 << zeros); ++d) expected.push_back(e);
  }
  std::sort(expected.begin(), expected.end());
  REQUIRE(static_cast<long>(expected.size()) == w.size());
  for (long k = 0; k < w.size(); ++k)
    CHECK(w(k) == doctest::Approx(expected[static_cast<size_t>(k)])
                      .epsilon(1e-12));
}

TEST_CASE("charge projectors resolve the identity") {
  const Setup s;
  for (int j = 0; j < s.torus.num_sites(); ++j) {
    const ProjectorSet ps = charge_projectors(s.fock, j);
    const RealVector one = RealVector::Ones(s.fock.dim());
    CHECK((ps.lambda_minus + ps.lambda_zero + ps.lambda_plus - one)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((ps.pplus - ps.lambda_plus - ps.p0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ps.pminus - ps.lambda_minus).cwiseAbs().maxCoeff() == 0.0);
    for (const RealVector* proj : {&ps.p0, &ps.pplus, &ps.pminus})
      CHECK((proj->cwiseProduct(*proj) - *proj).cwiseAbs().maxCoeff() == 0.0);
    // Projectors select the advertised charge values.
    const RealVector q = s.fock.charge_diag(j);
    CHECK(q.cwiseProduct(ps.pminus).cwiseAbs().maxCoeff() == 1.0);
    CHECK(q.cwiseProduct(ps.p0).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("lattice-filling projectors: ranks and the vacuum") {
  const Setup s;
  const ChessboardProjectors cb = chessboard_projectors(s.torus, s.fock);
  // minus requires q_j = -1 everywhere: only the empty state.
  CHECK(cb.minus.sum() == doctest::Approx(1.0));
  CHECK(cb.minus(0) == 1.0);
  // plus requires q_j in {0, +1} everywhere: 3 local states per site.
  CHECK(cb.plus.sum() == doctest::Approx(81.0));
  CHECK((cb.plus.cwiseProduct(cb.minus)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gauge flips the pair hopping and fixes the potential") {
  const Setup s;
  const RealVector u = gauge_u(s.torus, s.fock);
  CHECK((u.cwiseProduct(u) - RealVector::Ones(s.fock.dim()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  ModelParams p;
  p.t = 0.4;
  const Matrix t = build_T(p, s.torus, s.fock);
  const Matrix ud = u.cast<Complex>().asDiagonal();
  CHECK(max_abs(ud * t * ud - (-t)) < 1e-12);
}

TEST_CASE("ordered-regime ground configuration is fully staggered") {
  const Setup s;
  ModelParams p;  // S = 2 > 0
  const RealVector w = build_W_diag(p, s.torus, s.fock);
  const double target = -(p.S() + p.Delta / 2.0) * s.torus.num_sites();
  CHECK(w.minCoeff() == doctest::Approx(target).epsilon(1e-12));
}

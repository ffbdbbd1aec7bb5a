#include "cdw/thermal.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cdw {

EigenSystem diagonalize(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem diagonalize_blocked(const Matrix& h, const FockSpace& fock) {
  const long d = fock.dim();
  if (h.rows() != d) throw std::invalid_argument("dimension mismatch");
  const std::vector<int> num = fock.total_number();
  const std::vector<int> sz = fock.total_sz();

  std::map<std::pair<int, int>, std::vector<long>> sectors;
  for (long b = 0; b < d; ++b)
    sectors[{num[static_cast<size_t>(b)], sz[static_cast<size_t>(b)]}]
        .push_back(b);

  std::vector<std::pair<double, Vector>> pairs;
  pairs.reserve(static_cast<size_t>(d));
  for (const auto& [key, idx] : sectors) {
    const long n = static_cast<long>(idx.size());
    Matrix block(n, n);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c)
        block(r, c) = h(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(c)]);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigensolver failed");
    for (long k = 0; k < n; ++k) {
      Vector v = Vector::Zero(d);
      for (long r = 0; r < n; ++r)
        v(idx[static_cast<size_t>(r)]) = solver.eigenvectors()(r, k);
      pairs.emplace_back(solver.eigenvalues()(k), std::move(v));
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  EigenSystem es;
  es.eigenvalues.resize(d);
  es.eigenvectors.resize(d, d);
  for (long k = 0; k < d; ++k) {
    es.eigenvalues(k) = pairs[static_cast<size_t>(k)].first;
    es.eigenvectors.col(k) = pairs[static_cast<size_t>(k)].second;
  }
  return es;
}

ThermalState::ThermalState(EigenSystem es, double beta)
    : es_(std::move(es)), beta_(beta) {
  if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
  const double e0 = es_.eigenvalues(0);
  weights_ = (-beta_ * (es_.eigenvalues.array() - e0)).exp();
  weight_sum_ = weights_.sum();
  log_z_ = -beta_ * e0 + std::log(weight_sum_);
}

double ThermalState::gap() const {
  const double e0 = es_.eigenvalues(0);
  for (long k = 1; k < es_.eigenvalues.size(); ++k)
    if (es_.eigenvalues(k) - e0 > 1e-12) return es_.eigenvalues(k) - e0;
  return 0.0;
}

Complex ThermalState::average(const Matrix& a) const {
  if (a.rows() != es_.eigenvectors.rows())
    throw std::invalid_argument("dimension mismatch");
  Complex acc = 0.0;
  const Matrix av = a * es_.eigenvectors;
  for (long k = 0; k < es_.eigenvalues.size(); ++k)
    acc += weights_(k) * es_.eigenvectors.col(k).dot(av.col(k));
  return acc / weight_sum_;
}

double ThermalState::average_diag(const RealVector& a_diag) const {
  if (a_diag.size() != es_.eigenvectors.rows())
    throw std::invalid_argument("dimension mismatch");
  double acc = 0.0;
  for (long k = 0; k < es_.eigenvalues.size(); ++k) {
    const double expect =
        es_.eigenvectors.col(k).cwiseAbs2().dot(a_diag);
    acc += weights_(k) * expect;
  }
  return acc / weight_sum_;
}

Complex thermal_average(const Matrix& a, const Matrix& h, double beta) {
  return ThermalState(diagonalize(h), beta).average(a);
}

SpectralWindow spectral_window(const EigenSystem& es, double delta,
                               int num_sites) {
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  SpectralWindow w;
  w.delta = delta;
  w.ground_energy = es.eigenvalues(0);
  const double cutoff = w.ground_energy + delta * num_sites;
  const long d = es.eigenvalues.size();
  w.projector = Matrix::Zero(d, d);
  for (long k = 0; k < d; ++k) {
    if (es.eigenvalues(k) <= cutoff + 1e-12) {
      w.projector += es.eigenvectors.col(k) * es.eigenvectors.col(k).adjoint();
      ++w.rank;
    }
  }
  w.complement = Matrix::Identity(d, d) - w.projector;
  return w;
}

CorrelationPair staggered_correlation(int j, const ThermalState& state_h,
                                      const ThermalState& state_ht,
                                      const Torus& torus,
                                      const FockSpace& fock) {
  const int o = torus.index(Site{0, 0});
  const RealVector qq =
      fock.charge_diag(o).cwiseProduct(fock.charge_diag(j));
  CorrelationPair out;
  out.via_h = torus.sign(torus.site(j)) * state_h.average_diag(qq);
  out.via_h_tilde = state_ht.average_diag(qq);
  return out;
}

CorrelationPair staggered_correlation(int j, const ModelParams& p,
                                      const Torus& torus,
                                      const FockSpace& fock) {
  const ThermalState state_h(diagonalize(build_hamiltonian(p, torus, fock)),
                             p.beta);
  const ThermalState state_ht(diagonalize(build_H_tilde(p, torus, fock)),
                              p.beta);
  return staggered_correlation(j, state_h, state_ht, torus, fock);
}

namespace {

// Visits all charge configurations m in {-1,0,+1}^Lambda.
template <typename F>
void for_each_config(int n_sites, F&& visit) {
  std::vector<int> m(static_cast<size_t>(n_sites), -1);
  while (true) {
    visit(m);
    int k = 0;
    while (k < n_sites && m[static_cast<size_t>(k)] == 1) {
      m[static_cast<size_t>(k)] = -1;
      ++k;
    }
    if (k == n_sites) break;
    ++m[static_cast<size_t>(k)];
  }
}

}  // namespace

double classical_staggered_correlation(const ModelParams& p,
                                       const Torus& torus, int j) {
  const int n = torus.num_sites();
  const int o = torus.index(Site{0, 0});
  double e_min = 0.0;
  bool first = true;
  for_each_config(n, [&](const std::vector<int>& m) {
    const double e = charge_config_energy(p, torus, m);
    if (first || e < e_min) e_min = e;
    first = false;
  });
  double z = 0.0, corr = 0.0;
  for_each_config(n, [&](const std::vector<int>& m) {
    int zeros = 0;
    for (int v : m) zeros += (v == 0);
    const double w = std::ldexp(1.0, zeros) *
                     std::exp(-p.beta * (charge_config_energy(p, torus, m) - e_min));
    z += w;
    corr += w * m[static_cast<size_t>(o)] * m[static_cast<size_t>(j)];
  });
  return corr / z;
}

double classical_log_z(const ModelParams& p, const Torus& torus) {
  const int n = torus.num_sites();
  double e_min = 0.0;
  bool first = true;
  for_each_config(n, [&](const std::vector<int>& m) {
    const double e = charge_config_energy(p, torus, m);
    if (first || e < e_min) e_min = e;
    first = false;
  });
  double z = 0.0;
  for_each_config(n, [&](const std::vector<int>& m) {
    int zeros = 0;
    for (int v : m) zeros += (v == 0);
    z += std::ldexp(1.0, zeros) *
         std::exp(-p.beta * (charge_config_energy(p, torus, m) - e_min));
  });
  return -p.beta * e_min + std::log(z);
}

}  // namespace cdw

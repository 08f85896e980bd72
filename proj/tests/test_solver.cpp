#include <doctest.h>

#include <cmath>
#include <random>

#include "cmrisps/pipeline.hpp"
#include "cmrisps/solver.hpp"

using namespace cmrisps;

namespace {

IncModel random_model(std::mt19937_64& rng, int m, int terms) {
  std::uniform_real_distribution<> angle(-80.0, 80.0);
  std::uniform_real_distribution<> logw(-1.0, 3.0);
  const ArrayConfig cfg = ArrayConfig::ideal(m);
  IncModel inc;
  inc.m = m;
  inc.noise_load = 1.0;
  inc.weights.resize(terms);
  for (int t = 0; t < terms; ++t) {
    inc.indices.push_back(t);
    inc.weights[t] = std::pow(10.0, logw(rng));
    inc.steering.push_back(
        steering_vector(cfg, deg2rad(angle(rng))).values);
  }
  return inc;
}

CVector random_a(std::mt19937_64& rng, int m) {
  std::normal_distribution<> n;
  CVector v(m);
  for (int i = 0; i < m; ++i) v[i] = Complex(n(rng), n(rng));
  return std::sqrt(double(m)) * v / v.norm();
}

}  // namespace

TEST_CASE("CG matches the direct inverse on random models") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const IncModel inc = random_model(rng, 10, 18);
    const CVector a = random_a(rng, 10);
    const CgResult cg = cg_solve(inc, a, 1e-12 * a.norm(), 20);
    const BeamformerWeights direct = direct_weights(inc, a);
    CHECK((cg.weights.w - direct.w).norm() < 1e-6 * direct.w.norm());
    CHECK(cg.state.iterations <= 20);
  }
}

TEST_CASE("CG weights satisfy the distortionless constraint") {
  std::mt19937_64 rng(22);
  const IncModel inc = random_model(rng, 10, 12);
  const CVector a = random_a(rng, 10);
  const CgResult cg = cg_solve(inc, a);
  CHECK(std::abs(cg.weights.w.dot(a) - Complex(1.0, 0.0)) < 1e-6);
  CHECK(cg.weights.method == "cmr-isps");
}

TEST_CASE("CG cost is monotonically nonincreasing") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const IncModel inc = random_model(rng, 10, 15);
    const CgResult cg = cg_solve(inc, random_a(rng, 10));
    for (int t = 1; t < cg.state.costs.size(); ++t)
      CHECK(cg.state.costs[t] <= cg.state.costs[t - 1] + 1e-9);
  }
}

TEST_CASE("gradient norm collapses fast on the standard scenario") {
  const SnapshotMatrix snap = simulate(default_scenario());
  PipelineConfig cfg;
  cfg.cg_max_iter = 20;
  PipelineTrace trace;
  run_pipeline(snap, cfg, &trace);
  const RVector& g = trace.cg.state.grad_norms;
  REQUIRE(g.size() >= 2);
  double best = g[0];
  const int upto = std::min<int>(10, g.size() - 1);
  for (int t = 1; t <= upto; ++t) best = std::min(best, g[t]);
  CHECK(best <= g[0] / 1000.0);
}

TEST_CASE("CG op count is linear in the model size") {
  std::mt19937_64 rng(24);
  // per-iteration cost ~ terms * M: doubling terms roughly doubles ops
  const CVector a10 = random_a(rng, 10);
  const IncModel small = random_model(rng, 10, 10);
  const IncModel large = random_model(rng, 10, 40);
  const CgResult r_small = cg_solve(small, a10, 1e-10, 8);
  const CgResult r_large = cg_solve(large, a10, 1e-10, 8);
  const double per_iter_small =
      double(r_small.state.op_count) / r_small.state.iterations;
  const double per_iter_large =
      double(r_large.state.op_count) / r_large.state.iterations;
  CHECK(per_iter_large / per_iter_small > 2.5);
  CHECK(per_iter_large / per_iter_small < 6.0);
}

TEST_CASE("direct weights equal the closed-form MVDR solution") {
  const ArrayConfig arr = ArrayConfig::ideal(10);
  const double theta_l = deg2rad(19.8);
  IncModel inc;
  inc.m = 10;
  inc.noise_load = 1.0;
  inc.indices = {0};
  inc.weights = RVector::Constant(1, 1000.0);
  inc.steering = {steering_vector(arr, theta_l).values};
  const CVector a0 = steering_vector(arr, deg2rad(10.0)).values;
  const BeamformerWeights w = direct_weights(inc, a0);
  const CMatrix inv = woodbury_inverse_single_interferer(10, 1000.0, theta_l);
  const CVector expected =
      inv * a0 / (a0.adjoint() * inv * a0)(0).real();
  CHECK((w.w - expected).norm() < 1e-9 * expected.norm());
}

TEST_CASE("SMI weights solve the loaded sample covariance") {
  Scenario scn = default_scenario();
  scn.seed = 30;
  const SnapshotMatrix snap = simulate(scn);
  const CovarianceMatrix r = sample_covariance(snap);
  const CVector a_bar =
      steering_vector(ArrayConfig::ideal(10), deg2rad(10.0)).values;
  const BeamformerWeights w = smi_weights(r, a_bar);
  CHECK(std::abs(w.w.dot(a_bar) - Complex(1.0, 0.0)) < 1e-9);
  CHECK(w.method == "smi");
}

TEST_CASE("solver rejects degenerate inputs") {
  std::mt19937_64 rng(25);
  const IncModel inc = random_model(rng, 10, 5);
  CVector zero = CVector::Zero(10);
  CHECK_THROWS_AS(cg_solve(inc, zero), std::invalid_argument);
  CVector wrong = CVector::Ones(7);
  CHECK_THROWS_AS(cg_solve(inc, wrong), std::invalid_argument);
}

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "cmrisps/inc.hpp"

using namespace cmrisps;

namespace {

const ArrayConfig kArr = ArrayConfig::ideal(10);
const AngularGrid kGrid = make_grid(200);
const SoiSector kSoi{10.0, 4.0};

SectorSet standard_sectors() {
  DoaTrack t1, t2;
  t1.theta_center = deg2rad(20.0);
  t1.theta_min = t1.theta_max = t1.theta_center;
  t2.interferer_id = 1;
  t2.theta_center = deg2rad(-40.0);
  t2.theta_min = t2.theta_max = t2.theta_center;
  return build_sectors({t1, t2}, kGrid, kSoi, 4.0);
}

SpectrumEstimate standard_me() {
  Scenario scn;
  scn.soi = SourceSpec{10.0, 10.0, 0.0, std::nullopt};
  scn.interferers = {SourceSpec{20.0, 30.0, 0.0, std::nullopt},
                     SourceSpec{-40.0, 30.0, 0.0, std::nullopt}};
  scn.seed = 12;
  return me_spectrum(sample_covariance(simulate(scn)), kGrid, kArr);
}

}  // namespace

TEST_CASE("empty sector set gives the noise-only diagonal model") {
  const SpectrumEstimate me = standard_me();
  SectorSet empty;
  empty.soi = kSoi;
  const IncModel inc = build_inc(me, empty, kArr, 1.0);
  CHECK(inc.terms() == 0);
  CHECK((inc.materialize() - CMatrix::Identity(10, 10)).norm() < 1e-14);
}

TEST_CASE("build_inc carries P * delta weights and the noise diagonal") {
  const SpectrumEstimate me = standard_me();
  const SectorSet s = standard_sectors();
  const IncModel inc = build_inc(me, s, kArr, 0.7);
  REQUIRE(inc.terms() == static_cast<int>(s.union_indices.size()));
  CMatrix expected = 0.7 * CMatrix::Identity(10, 10);
  for (int b : s.union_indices) {
    const CVector a = steering_vector(kArr, kGrid.angles[b]).values;
    expected += me.values[b] * kGrid.delta * a * a.adjoint();
  }
  CHECK((inc.materialize() - expected).norm() < 1e-12 * expected.norm());
  for (int t = 0; t < inc.terms(); ++t) CHECK(inc.weights[t] > 0.0);
}

TEST_CASE("implicit apply equals the materialized product") {
  const IncModel inc = build_inc(standard_me(), standard_sectors(), kArr, 1.0);
  const CMatrix r = inc.materialize();
  std::mt19937_64 rng(5);
  std::normal_distribution<> n;
  for (int trial = 0; trial < 10; ++trial) {
    CVector v(10);
    for (int i = 0; i < 10; ++i) v[i] = Complex(n(rng), n(rng));
    CHECK((inc.apply(v) - r * v).norm() < 1e-12 * (r * v).norm());
  }
}

TEST_CASE("materialized model is Hermitian positive semidefinite") {
  const CMatrix r =
      build_inc(standard_me(), standard_sectors(), kArr, 1.0).materialize();
  CHECK((r - r.adjoint()).norm() < 1e-12 * r.norm());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()[0] >= -1e-10 * es.eigenvalues()[9]);
}

TEST_CASE("two-sector model has exactly two dominant directions") {
  const IncModel inc = build_inc(standard_me(), standard_sectors(), kArr, 1.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(inc.materialize(),
                                            Eigen::EigenvaluesOnly);
  // two eigenvalues stand clear of the rest; the remainder sit near the
  // unit noise load
  CHECK(es.eigenvalues()[8] >= 10.0 * es.eigenvalues()[7]);
  CHECK(es.eigenvalues()[7] <= 5.0);
}

TEST_CASE("reconstruction suppresses the true interferer directions") {
  // Dense reconstruction grid: the quadratic form at the true (off-grid)
  // interferer must sit far above the noise floor.
  const AngularGrid dense = make_grid(1000);
  Scenario scn;
  scn.soi = SourceSpec{10.0, 10.0, 0.0, std::nullopt};
  scn.interferers = {SourceSpec{20.0, 30.0, 0.0, std::nullopt},
                     SourceSpec{-40.0, 30.0, 0.0, std::nullopt}};
  scn.seed = 13;
  const SnapshotMatrix snap = simulate(scn);
  const SpectrumEstimate me =
      me_spectrum(sample_covariance(snap), dense, kArr);
  DoaTrack t1, t2;
  t1.theta_center = deg2rad(20.0);
  t1.theta_min = t1.theta_max = t1.theta_center;
  t2.theta_center = deg2rad(-40.0);
  t2.theta_min = t2.theta_max = t2.theta_center;
  const SectorSet s = build_sectors({t1, t2}, dense, kSoi, 4.0);
  const IncModel inc = build_inc(me, s, kArr, 1.0);
  for (const CVector& al : snap.truth.a_l) {
    const double quad = al.dot(inc.apply(al)).real();
    CHECK(quad >= 100.0 * 10.0 * inc.noise_load);  // 20 dB over M*noise
  }
}

TEST_CASE("ME reconstruction reinforces interference beyond Capon") {
  const double theta_l = kGrid.angles[122];
  const CovarianceMatrix rtc =
      theoretical_single_interferer(10, 1000.0, theta_l);
  const SpectrumEstimate me = me_spectrum(rtc, kGrid, kArr);
  const IncModel me_inc = build_inc_full_sector(me, kArr);
  const IncModel cap_inc =
      build_capon_inc_baseline(rtc, kGrid, SoiSector{-80.0, 4.0}, kArr);
  Eigen::SelfAdjointEigenSolver<CMatrix> em(me_inc.materialize(),
                                            Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMatrix> ec(cap_inc.materialize(),
                                            Eigen::EigenvaluesOnly);
  CHECK(em.eigenvalues()[9] / ec.eigenvalues()[9] >= 10.0 * 1000.0 / 2.0);
}

TEST_CASE("Capon baseline on white noise matches its direct sum and scales") {
  CovarianceMatrix eye;
  eye.values = CMatrix::Identity(10, 10);
  eye.kind = CovarianceMatrix::Kind::theoretical;
  const IncModel inc = build_capon_inc_baseline(eye, kGrid, kSoi, kArr);
  const CMatrix r = inc.materialize();
  // direct oracle: (1/M) sum over out-of-sector bins of a a^H * delta
  CMatrix oracle = CMatrix::Zero(10, 10);
  for (int j = 0; j < kGrid.size(); ++j) {
    if (kSoi.contains_deg(kGrid.angle_deg(j))) continue;
    const CVector a = steering_vector(kArr, kGrid.angles[j]).values;
    oracle += 0.1 * kGrid.delta * a * a.adjoint();
  }
  CHECK((r - oracle).norm() < 1e-10 * oracle.norm());
  // equal diagonal entries close to (pi - |soi|) / M
  const double expect_diag = (kPi - deg2rad(8.0)) / 10.0;
  for (int i = 0; i < 10; ++i)
    CHECK(r(i, i).real() == doctest::Approx(expect_diag).epsilon(0.1));

  // scale equivariance
  CovarianceMatrix scaled = eye;
  scaled.values *= 5.0;
  const CMatrix r5 =
      build_capon_inc_baseline(scaled, kGrid, kSoi, kArr).materialize();
  CHECK((r5 - 5.0 * r).norm() < 1e-9 * r5.norm());
}

TEST_CASE("SOI estimate aligns with the truth when nothing is mismatched") {
  const CVector a0 = steering_vector(kArr, deg2rad(10.0)).values;
  CovarianceMatrix r;
  r.values = CMatrix::Identity(10, 10) + 1000.0 * a0 * a0.adjoint();
  r.kind = CovarianceMatrix::Kind::theoretical;
  const SpectrumEstimate me = me_spectrum(r, kGrid, kArr);
  const SoiEstimate soi = estimate_soi(me, kSoi, kArr, 10.0);
  CHECK(soi.a_hat.squaredNorm() == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(soi.s_points >= 8);
  const double sim = std::abs(soi.a_hat.dot(a0)) / (soi.a_hat.norm() * a0.norm());
  CHECK(sim > 0.999);
}

TEST_CASE("SOI estimate falls back to the presumed vector without a SOI") {
  Scenario scn;
  scn.soi = SourceSpec{10.0, -300.0, 0.0, std::nullopt};
  scn.snapshots = 50;
  scn.seed = 14;
  const SpectrumEstimate me =
      me_spectrum(sample_covariance(simulate(scn)), kGrid, kArr);
  const SoiEstimate soi = estimate_soi(me, kSoi, kArr, 10.0);
  const CVector a_bar = steering_vector(kArr, deg2rad(10.0)).values;
  const double sim =
      std::abs(soi.a_hat.dot(a_bar)) / (soi.a_hat.norm() * a_bar.norm());
  CHECK(sim > 0.9);
}

TEST_CASE("predicted SINR loss arithmetic") {
  CHECK(predicted_sinr_loss(0.0, 0.1) == 1.0);
  CHECK(predicted_sinr_loss(0.07, 0.1) ==
        doctest::Approx(1.0 - 4.083333333e-6).epsilon(1e-9));
  CHECK(predicted_sinr_loss(0.2, 0.5) <= 1.0);
}

TEST_CASE("mismatched inner product follows the sine-ratio form") {
  const CVector a0 = steering_vector(kArr, deg2rad(10.0)).values;
  const CVector ab = steering_vector(kArr, deg2rad(14.0)).values;
  const double phi = kPi * (std::sin(deg2rad(14.0)) - std::sin(deg2rad(10.0)));
  const double ratio =
      std::pow(std::sin(10.0 * phi / 2.0) / std::sin(phi / 2.0), 2);
  CHECK(std::norm(ab.dot(a0)) == doctest::Approx(ratio).epsilon(1e-12));
}

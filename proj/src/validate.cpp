#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "cmrisps/pipeline.hpp"
#include "cmrisps/rng.hpp"

// Analytical oracles for the single-interferer closed forms and the solver
// equivalences. Everything here has an exact expected value or a derived
// threshold; nothing depends on Monte Carlo statistics.

namespace cmrisps {
namespace {

constexpr int kM = 10;
constexpr double kInr = 1000.0;  // 30 dB, unit noise

struct Setup {
  AngularGrid grid;
  ArrayConfig array;
  double theta_l;  // on-grid interferer angle, radians
  int peak_index;
  CovarianceMatrix r_tc;
};

Setup make_setup() {
  Setup s;
  s.grid = make_grid(200);
  s.array = ArrayConfig::ideal(kM);
  s.peak_index = 122;  // 19.8 degrees
  s.theta_l = s.grid.angles[s.peak_index];
  s.r_tc = theoretical_single_interferer(kM, kInr, s.theta_l);
  return s;
}

double rank_one_fit_residual(const CMatrix& r, double diag,
                             double interference, const CVector& a_l,
                             double* c_out = nullptr) {
  const int m = static_cast<int>(r.rows());
  const CMatrix s = diag * CMatrix::Identity(m, m) +
                    interference * a_l * a_l.adjoint();
  const double c =
      (s.adjoint() * r).trace().real() / s.squaredNorm();
  if (c_out) *c_out = c;
  return (r - c * s).norm() / r.norm();
}

IncModel random_pd_model(std::mt19937_64& rng, int m, int terms) {
  std::uniform_real_distribution<> angle(-kPi / 2, kPi / 2 * 0.999);
  std::uniform_real_distribution<> logw(-1.0, 3.0);
  std::uniform_real_distribution<> load(0.5, 2.0);
  const ArrayConfig cfg = ArrayConfig::ideal(m);
  IncModel inc;
  inc.m = m;
  inc.noise_load = load(rng);
  inc.weights.resize(terms);
  for (int t = 0; t < terms; ++t) {
    inc.indices.push_back(t);
    inc.weights[t] = std::pow(10.0, logw(rng));
    inc.steering.push_back(steering_vector(cfg, angle(rng)).values);
  }
  return inc;
}

CVector random_unit(std::mt19937_64& rng, int m) {
  std::normal_distribution<> n(0.0, 1.0);
  CVector v(m);
  for (int i = 0; i < m; ++i) v[i] = Complex(n(rng), n(rng));
  return v / v.norm();
}

void add(ValidationReport& rep, const std::string& name, double measured,
         double threshold, const std::string& detail = "") {
  ValidationEntry e;
  e.name = name;
  e.measured = measured;
  e.threshold = threshold;
  e.pass = measured <= threshold;
  e.detail = detail;
  rep.entries.push_back(std::move(e));
}

}  // namespace

bool ValidationReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

ValidationReport validate_analysis() {
  ValidationReport rep;
  const Setup s = make_setup();
  const CVector a_l = steering_vector(s.array, s.theta_l).values;

  // Capon peak against the exact denominator and the residual-noise form.
  {
    const SpectrumEstimate cap = capon_spectrum(s.r_tc, s.grid, s.array);
    const double rho = 1.0 / kInr;
    const double exact =
        1.0 / (kM - double(kM) * kM / (rho + kM));  // sigma_n^2 = 1
    add(rep, "capon-peak-exact",
        std::abs(cap.values[s.peak_index] - exact) / exact, 1e-6);
    const double approx = kInr + 1.0 / kM;
    add(rep, "capon-peak-residual-noise",
        std::abs(cap.values[s.peak_index] - approx) / approx, 0.01);
  }

  // Max-entropy peak against the exact epsilon closed form, and the
  // large-M approximation against its analytically forced ratio.
  {
    const SpectrumEstimate me = me_spectrum(s.r_tc, s.grid, s.array);
    const double eps_exact = (1.0 + kM * kInr) / (1.0 + (kM - 1) * kInr);
    add(rep, "me-epsilon-exact", std::abs(me.epsilon - eps_exact) / eps_exact,
        1e-6);
    const double peak_exact =
        (1.0 + kM * kInr) * (1.0 + kM * kInr) / eps_exact;
    add(rep, "me-peak-exact",
        std::abs(me.values[s.peak_index] - peak_exact) / peak_exact, 1e-6);
    const double peak_approx =
        1.0 + (2.0 * kM + double(kM) * kM * kInr) * kInr;
    const double forced_ratio = (1.0 + kM * kInr) / (1.0 + (kM - 1) * kInr);
    add(rep, "me-peak-large-m-ratio",
        std::abs(peak_approx / peak_exact - forced_ratio) / forced_ratio,
        1e-3);
  }

  // Woodbury inverse identity.
  {
    const CMatrix inv = woodbury_inverse_single_interferer(kM, kInr, s.theta_l);
    add(rep, "woodbury-identity",
        (inv * s.r_tc.values - CMatrix::Identity(kM, kM)).norm(), 1e-10);
  }

  // Sine-ratio form of the mismatched inner product, 100 random offsets.
  {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<> u(-0.3, 0.3);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double s0 = u(rng), s1 = u(rng);
      const CVector a = steering_vector(s.array, std::asin(s0)).values;
      const CVector b = steering_vector(s.array, std::asin(s1)).values;
      const double phi = kPi * (s1 - s0);  // electrical offset
      const double lhs = std::norm(a.dot(b));
      const double ratio = std::abs(phi) < 1e-14
                               ? double(kM) * kM
                               : std::pow(std::sin(kM * phi / 2), 2) /
                                     std::pow(std::sin(phi / 2), 2);
      worst = std::max(worst, std::abs(lhs - ratio) / ratio);
    }
    add(rep, "sine-ratio-inner-product", worst, 1e-10);
  }

  // Mismatch loss curve values.
  {
    add(rep, "sinr-loss-zero-mismatch",
        std::abs(predicted_sinr_loss(0.0, 0.1) - 1.0), 1e-15);
    const double expected = 1.0 - (0.01 * 0.07 * 0.07) / 12.0;
    add(rep, "sinr-loss-curve",
        std::abs(predicted_sinr_loss(0.07, 0.1) - expected), 1e-15);
  }

  // Full-sector reconstruction identities: the Capon sum preserves the
  // rank-one structure with interference coefficient sigma_l^2, the ME sum
  // with M^2 sigma_l^4 / sigma_n^2.
  {
    const SoiSector far_soi{-80.0, 4.0};
    const IncModel cap_inc =
        build_capon_inc_baseline(s.r_tc, s.grid, far_soi, s.array);
    add(rep, "capon-reconstruction-structure",
        rank_one_fit_residual(cap_inc.materialize(), 1.0, kInr, a_l), 0.15);

    const SpectrumEstimate me = me_spectrum(s.r_tc, s.grid, s.array);
    const IncModel me_inc = build_inc_full_sector(me, s.array);
    const CMatrix r_me = me_inc.materialize();
    add(rep, "me-reconstruction-structure",
        rank_one_fit_residual(r_me, 1.0, double(kM) * kM * kInr * kInr, a_l),
        0.15);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(r_me, Eigen::EigenvaluesOnly);
    const double dominant = es.eigenvalues()[kM - 1];
    const double floor = es.eigenvalues()[kM - 2];
    const double required = double(kM) * kM * kInr / 10.0;
    add(rep, "me-reconstruction-eigen-ratio", required / (dominant / floor),
        1.0, "dominant/floor vs M^2*INR/10");
  }

  // Implicit gradient equals the materialized matrix-vector product.
  {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const IncModel inc = random_pd_model(rng, kM, 18);
      const CMatrix r = inc.materialize();
      const CVector v = random_unit(rng, kM);
      worst = std::max(worst, ((inc.apply(v) - r * v).norm() / (r * v).norm()));
    }
    add(rep, "implicit-gradient-agreement", worst, 1e-10);
  }

  // CG equals the direct inverse on random positive definite models.
  {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    bool monotone = true;
    for (int i = 0; i < 50; ++i) {
      const IncModel inc = random_pd_model(rng, kM, 18);
      const CVector a_hat = std::sqrt(double(kM)) * random_unit(rng, kM);
      const CgResult cg = cg_solve(inc, a_hat, 1e-12 * a_hat.norm(), 2 * kM);
      const BeamformerWeights direct = direct_weights(inc, a_hat);
      worst = std::max(worst,
                       (cg.weights.w - direct.w).norm() / direct.w.norm());
      for (int t = 1; t < cg.state.costs.size(); ++t)
        if (cg.state.costs[t] > cg.state.costs[t - 1] + 1e-12)
          monotone = false;
    }
    add(rep, "cg-direct-equivalence", worst, 1e-6);
    add(rep, "cg-monotone-descent", monotone ? 0.0 : 1.0, 0.5);
  }

  return rep;
}

}  // namespace cmrisps

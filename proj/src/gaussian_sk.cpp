#include "secrecy/gaussian_sk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace secrecy::gaussian_sk {

namespace {

constexpr double kNndTol = 1e-10;
constexpr double kC2Tol = 1e-10;

Eigen::Matrix3d covariance_matrix(const GaussianWiretapParams& p) {
  const double sn = std::sqrt(p.var_n);
  const double sm = std::sqrt(p.var_m);
  const double ss = std::sqrt(p.var_s);
  Eigen::Matrix3d c;
  c << p.var_n, p.rho1 * sn * sm, p.rho2 * sn * ss,
       p.rho1 * sn * sm, p.var_m, p.rho3 * sm * ss,
       p.rho2 * sn * ss, p.rho3 * sm * ss, p.var_s;
  return c;
}

}  // namespace

std::array<double, 9> GaussianWiretapParams::covariance() const {
  const Eigen::Matrix3d c = covariance_matrix(*this);
  std::array<double, 9> out;
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) out[3 * r + k] = c(r, k);
  }
  return out;
}

void GaussianWiretapParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::domain_error(std::string(name) + " must be positive, got " +
                              std::to_string(v));
    }
  };
  positive(power, "power");
  positive(var_n, "var_n");
  positive(var_m, "var_m");
  positive(var_s, "var_s");
  auto corr = [](double r, const char* name) {
    if (!(std::abs(r) < 1.0)) {
      throw std::domain_error(std::string(name) + " must satisfy |rho| < 1, got " +
                              std::to_string(r));
    }
  };
  corr(rho1, "rho1");
  corr(rho2, "rho2");
  corr(rho3, "rho3");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(covariance_matrix(*this));
  const double lambda_min = eig.eigenvalues().minCoeff();
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (lambda_min < -kNndTol * std::max(1.0, lambda_max)) {
    throw DegenerateParamsError(
        "noise covariance is not non-negative definite (min eigenvalue " +
        std::to_string(lambda_min) + ")");
  }
}

double SkConfig::gamma() const { return std::sqrt(params.power / params.var_n); }

double SkConfig::alpha() const {
  return std::sqrt((params.power + params.var_n) / params.var_n);
}

double SkConfig::alpha_i(std::size_t i) const {
  if (i < 1) throw std::domain_error("alpha_i: iteration index is 1-based");
  if (i == 1) return alpha();
  return gamma() * std::pow(alpha(), static_cast<double>(i - 1));
}

void SkConfig::validate() const {
  params.validate();
  if (n < 1) throw std::domain_error("SkConfig: n must be >= 1");
  if (num_messages < 2) throw std::domain_error("SkConfig: num_messages must be >= 2");
}

CorrelatedNoiseSampler::CorrelatedNoiseSampler(const GaussianWiretapParams& params) {
  params.validate();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(covariance_matrix(params));
  if (eig.info() != Eigen::Success) {
    throw DegenerateParamsError("noise covariance eigendecomposition failed");
  }
  // Symmetric square root V diag(sqrt(lambda^+)) V^T; tiny negative
  // eigenvalues (within the NND tolerance) are clamped to zero.
  Eigen::Vector3d lambda = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix3d l =
      eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) factor_[3 * r + k] = l(r, k);
  }
}

std::array<double, 3> CorrelatedNoiseSampler::sample(rng::Sampler& rnd) const {
  const double g0 = rnd.gaussian();
  const double g1 = rnd.gaussian();
  const double g2 = rnd.gaussian();
  return {factor_[0] * g0 + factor_[1] * g1 + factor_[2] * g2,
          factor_[3] * g0 + factor_[4] * g1 + factor_[5] * g2,
          factor_[6] * g0 + factor_[7] * g1 + factor_[8] * g2};
}

double encode_message(std::uint64_t w, std::uint64_t num_messages) {
  if (num_messages < 1) {
    throw std::domain_error("encode_message: num_messages must be >= 1");
  }
  if (w < 1 || w > num_messages) {
    throw std::domain_error("encode_message: w = " + std::to_string(w) +
                            " outside [1, " + std::to_string(num_messages) + "]");
  }
  return -0.5 + (static_cast<double>(w) - 0.5) / static_cast<double>(num_messages);
}

std::uint64_t decode_theta(double theta_hat, std::uint64_t num_messages) {
  if (num_messages < 1) {
    throw std::domain_error("decode_theta: num_messages must be >= 1");
  }
  if (!std::isfinite(theta_hat)) {
    throw std::domain_error("decode_theta: estimate is not finite");
  }
  // Subinterval boundaries sit at t = (theta+0.5)*M integer; a boundary value
  // is equidistant from two midpoints and ceil assigns it the lower index.
  const double t = (theta_hat + 0.5) * static_cast<double>(num_messages);
  if (t <= 1.0) return 1;
  if (t >= static_cast<double>(num_messages)) return num_messages;
  return static_cast<std::uint64_t>(std::ceil(t));
}

namespace {

SkTranscript run_sk_impl(const SkConfig& config, std::uint64_t w,
                         const CorrelatedNoiseSampler& noise,
                         rng::Sampler& rnd) {
  const double theta = encode_message(w, config.num_messages);

  SkTranscript t;
  t.theta = theta;
  t.x.resize(config.n);
  t.y.resize(config.n);
  t.z.resize(config.n);
  t.ybar.resize(config.n);
  t.theta_hat.resize(config.n);
  t.xhat.resize(config.n);
  t.h.resize(config.n);

  double sum_a2 = 0.0;       // running sum of alpha_j^2, j <= i-1 at loop entry
  double sum_a2_xhat = 0.0;  // running sum of alpha_j^2 * xhat_j
  double theta_hat_prev = 0.0;
  for (std::size_t i = 1; i <= config.n; ++i) {
    const double a = config.alpha_i(i);
    const double x = (i == 1) ? a * theta : a * (theta - theta_hat_prev);
    const auto [nn, nm, ns] = noise.sample(rnd);
    const double y = x + nn;

    const std::size_t k = i - 1;
    t.x[k] = x;
    t.y[k] = y;
    t.z[k] = x + nm;
    t.ybar[k] = y + ns;
    t.xhat[k] = (i == 1) ? y / a : theta_hat_prev + y / a;
    t.h[k] = (i == 1) ? 0.0 : -a / sum_a2;

    sum_a2 += a * a;
    sum_a2_xhat += a * a * t.xhat[k];
    theta_hat_prev = sum_a2_xhat / sum_a2;
    t.theta_hat[k] = theta_hat_prev;
  }
  return t;
}

}  // namespace

SkTranscript run_sk(const SkConfig& config, std::uint64_t w) {
  config.validate();
  const CorrelatedNoiseSampler noise(config.params);
  rng::Sampler rnd(config.seed);
  return run_sk_impl(config, w, noise, rnd);
}

double error_variance_theory(const SkConfig& config) {
  config.validate();
  return config.params.var_n /
         std::pow(config.alpha(), 2.0 * static_cast<double>(config.n));
}

MonteCarloResult monte_carlo_sk(const SkConfig& config, std::size_t trials) {
  config.validate();
  if (trials < 1) throw std::domain_error("monte_carlo_sk: trials must be >= 1");
  const CorrelatedNoiseSampler noise(config.params);

  MonteCarloResult r;
  r.trials = trials;
  r.empirical_symbol_power.assign(config.n, 0.0);
  double sum_sq_err = 0.0;
  const double m = static_cast<double>(config.num_messages);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    rng::Sampler rnd(rng::derive_seed(config.seed, trial));
    std::uint64_t w =
        1 + static_cast<std::uint64_t>(rnd.uniform01() * m);  // uniform message
    if (w > config.num_messages) w = config.num_messages;
    const SkTranscript t = run_sk_impl(config, w, noise, rnd);
    const double err = t.theta - t.theta_hat.back();
    sum_sq_err += err * err;
    r.errors += decode_theta(t.theta_hat.back(), config.num_messages) != w;
    for (std::size_t k = 0; k < config.n; ++k) {
      r.empirical_symbol_power[k] += t.x[k] * t.x[k];
    }
  }
  const double tn = static_cast<double>(trials);
  for (double& p : r.empirical_symbol_power) p /= tn;
  r.error_rate = static_cast<double>(r.errors) / tn;
  r.error_variance = sum_sq_err / tn;
  r.ci_halfwidth_error_rate =
      1.96 * std::sqrt(r.error_rate * (1.0 - r.error_rate) / tn);
  // Normal-theory standard error of a mean-square statistic.
  r.ci_halfwidth_error_variance = 1.96 * r.error_variance * std::sqrt(2.0 / tn);
  return r;
}

double capacity_forward(const GaussianWiretapParams& params) {
  params.validate();
  return 0.5 * std::log2(1.0 + params.power / params.var_n);
}

double secrecy_capacity_no_feedback(const GaussianWiretapParams& params) {
  params.validate();
  const double diff = std::log2(1.0 + params.power / params.var_n) -
                      std::log2(1.0 + params.power / params.var_m);
  return 0.5 * std::max(0.0, diff);
}

LeakageBound leakage_bound(const GaussianWiretapParams& params, std::size_t n,
                           std::uint64_t finite_num_messages) {
  params.validate();
  if (n < 1) throw std::domain_error("leakage_bound: n must be >= 1");
  if (finite_num_messages == 1) {
    throw std::domain_error("leakage_bound: finite_num_messages must be >= 2");
  }

  const double c2 = params.rho1 * params.rho1 + params.rho2 * params.rho2 +
                    params.rho3 * params.rho3 -
                    2.0 * params.rho1 * params.rho2 * params.rho3 - 1.0;
  if (std::abs(c2) <= kC2Tol) {
    throw DegenerateParamsError(
        "leakage_bound: singular correlation structure (c2 = " +
        std::to_string(c2) + ")");
  }
  const double sm = std::sqrt(params.var_m);
  const double ss = std::sqrt(params.var_s);
  const double c1 = 2.0 * (params.rho3 - params.rho1 * params.rho2) * sm * ss +
                    (params.rho1 * params.rho1 - 1.0) * params.var_m +
                    (params.rho2 * params.rho2 - 1.0) * params.var_s;
  const double alpha1_sq = (params.power + params.var_n) / params.var_n;
  // 12 * Var(theta): 1 in the dense-message limit, (M^2-1)/M^2 for midpoints
  double variance_scale = 1.0;
  if (finite_num_messages >= 2) {
    const double m = static_cast<double>(finite_num_messages);
    variance_scale = (m * m - 1.0) / (m * m);
  }
  const double arg = 1.0 + variance_scale * alpha1_sq * c1 /
                               (12.0 * params.var_s * params.var_m * c2);
  if (!(arg > 0.0)) {
    throw DegenerateParamsError(
        "leakage_bound: non-positive log argument " + std::to_string(arg) +
        "; pathological correlation parameters");
  }
  LeakageBound b;
  b.one_shot_bits = 0.5 * std::log2(arg);
  b.per_symbol_bits = b.one_shot_bits / static_cast<double>(n);
  return b;
}

SecrecySummary secrecy_summary(const GaussianWiretapParams& params,
                               std::size_t n, double rate) {
  const double c_f = capacity_forward(params);
  if (!(rate >= 0.0 && rate <= c_f + 1e-12)) {
    throw std::domain_error("secrecy_summary: rate must lie in [0, C_f]");
  }
  const LeakageBound b = leakage_bound(params, n);
  SecrecySummary s;
  s.c_f = c_f;
  s.c_s_no_feedback = secrecy_capacity_no_feedback(params);
  s.c_sf = c_f;
  s.per_symbol_leakage_bound = b.per_symbol_bits;
  s.equivocation_rate_lower_bound = rate - b.per_symbol_bits;
  s.rate = rate;
  s.n = n;
  return s;
}

}  // namespace secrecy::gaussian_sk

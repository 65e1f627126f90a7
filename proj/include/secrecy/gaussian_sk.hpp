#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "secrecy/rng.hpp"

// Schalkwijk-Kailath iterative coding over a Gaussian wiretap channel with
// perfect causal output feedback, where the eavesdropper sees her own channel
// output plus a noisy copy of the feedback. Includes the closed-form
// capacity, leakage-bound and equivocation accounting for that model.

namespace secrecy::gaussian_sk {

// Raised for singular correlation structure or a non-factorizable noise
// covariance, as opposed to plain out-of-range arguments.
class DegenerateParamsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Transmit power plus the joint statistics of the per-time noise triple
// (N, M, S): N at the legitimate receiver, M at the eavesdropper's direct
// channel, S on the feedback copy overheard by the eavesdropper.
struct GaussianWiretapParams {
  double power;  // P
  double var_n;  // sigma_N^2
  double var_m;  // sigma_M^2
  double var_s;  // sigma_S^2
  double rho1;   // corr(N, M)
  double rho2;   // corr(N, S)
  double rho3;   // corr(M, S)

  // Row-major 3x3 covariance of (N, M, S).
  std::array<double, 9> covariance() const;

  // Throws std::domain_error for range violations (P, variances, |rho|) and
  // DegenerateParamsError when the covariance fails the non-negative-definite
  // eigenvalue check (tolerance 1e-10).
  void validate() const;
};

// Coefficient schedule: gamma = sqrt(P/var_n), alpha = sqrt((P+var_n)/var_n),
// alpha_1 = alpha and alpha_i = gamma * alpha^(i-1) for i >= 2. With this
// schedule sum_{j<=i} alpha_j^2 = alpha^(2i) and every retransmission has
// expected power P.
struct SkConfig {
  GaussianWiretapParams params;
  std::size_t n = 1;                // iteration count
  std::uint64_t num_messages = 2;   // M = 2^(nR)
  std::uint64_t seed = 0;

  double gamma() const;
  double alpha() const;
  double alpha_i(std::size_t i) const;  // 1-based
  void validate() const;
};

// Per-iteration record of one run; index k holds iteration i = k+1.
// h[k] = -alpha_i / sum_{j<i} alpha_j^2 for i >= 2 (h[0] is 0 by convention:
// the first transmission is not an error retransmission).
struct SkTranscript {
  double theta = 0.0;
  std::vector<double> x;          // channel inputs
  std::vector<double> y;          // Bob's outputs, x + N
  std::vector<double> z;          // Eve's direct outputs, x + M
  std::vector<double> ybar;       // Eve's feedback copy, y + S
  std::vector<double> theta_hat;  // Bob's running ML estimate
  std::vector<double> xhat;       // per-iteration observation theta + N_i/alpha_i
  std::vector<double> h;
};

// Correlated sampling of (N, M, S) via the symmetric eigendecomposition
// square root of the covariance (kCovFactorizationId). Construction runs the
// non-negative-definite check and throws DegenerateParamsError on failure.
class CorrelatedNoiseSampler {
 public:
  explicit CorrelatedNoiseSampler(const GaussianWiretapParams& params);

  std::array<double, 3> sample(rng::Sampler& rnd) const;
  const std::array<double, 9>& sqrt_factor() const { return factor_; }

 private:
  std::array<double, 9> factor_;
};

inline constexpr const char* kCovFactorizationId = "symmetric-eigendecomposition-sqrt";

// Message w in {1..M} to the midpoint of its subinterval of [-0.5, 0.5]:
// theta = -0.5 + (w - 0.5)/M.
double encode_message(std::uint64_t w, std::uint64_t num_messages);

// Nearest midpoint's index, clamped to [1, M]; ties break toward the lower
// index. Requires a finite estimate.
std::uint64_t decode_theta(double theta_hat, std::uint64_t num_messages);

// Executes the estimate-error recursions for message w with i.i.d. noise
// triples drawn from the config's seed. The running-sums form of the ML
// estimate is used; the transcript satisfies the closed-form identities to
// floating-point roundoff.
SkTranscript run_sk(const SkConfig& config, std::uint64_t w);

// E[(theta - theta_hat_n)^2] = var_n / alpha^(2n).
double error_variance_theory(const SkConfig& config);

struct MonteCarloResult {
  std::size_t trials = 0;
  std::size_t errors = 0;
  double error_rate = 0.0;
  double error_variance = 0.0;  // mean squared final estimation error
  double ci_halfwidth_error_rate = 0.0;      // 95% normal approximation
  double ci_halfwidth_error_variance = 0.0;  // 95% normal approximation
  std::vector<double> empirical_symbol_power;  // mean x_i^2 per iteration
};

// Runs independent trials with uniformly drawn messages; trial t uses the
// stream seed rng::derive_seed(config.seed, t), so results are independent
// of evaluation order.
MonteCarloResult monte_carlo_sk(const SkConfig& config, std::size_t trials);

// C_f = 1/2 log2(1 + P/var_n), with or without feedback.
double capacity_forward(const GaussianWiretapParams& params);

// No-feedback secrecy capacity:
// 1/2 [log2(1 + P/var_n) - log2(1 + P/var_m)]^+ (zero when var_n >= var_m).
double secrecy_capacity_no_feedback(const GaussianWiretapParams& params);

struct LeakageBound {
  double one_shot_bits;    // 1/2 log2(1 + alpha_1^2 c1 / (12 var_s var_m c2))
  double per_symbol_bits;  // one_shot_bits / n
};

// Upper bound on the information the eavesdropper's useful observations
// carry about the signal point, from the Gaussian-maximizer bound
// 1/2 log2 det(I + Var(theta) A A^T C^-1) with A = [0, alpha_1, alpha_1]^T
// and the limiting uniform variance Var(theta) = 1/12. In expanded form the
// log argument is 1 + alpha_1^2 c1 / (12 var_s var_m c2) with
//   c1 = 2(rho3 - rho1 rho2) sigma_M sigma_S + (rho1^2 - 1) var_m + (rho2^2 - 1) var_s,
//   c2 = rho1^2 + rho2^2 + rho3^2 - 2 rho1 rho2 rho3 - 1.
// Passing finite_num_messages >= 2 refines Var(theta) to the exact midpoint
// variance (M^2 - 1)/(12 M^2); the default 0 keeps the limiting bound.
// Throws DegenerateParamsError when |c2| <= 1e-10 or the argument is not
// positive (verified, not assumed).
LeakageBound leakage_bound(const GaussianWiretapParams& params, std::size_t n,
                           std::uint64_t finite_num_messages = 0);

struct SecrecySummary {
  double c_f;
  double c_s_no_feedback;
  double c_sf;  // equals c_f: feedback restores the full forward capacity
  double per_symbol_leakage_bound;
  double equivocation_rate_lower_bound;  // rate - per_symbol_leakage_bound
  double rate;
  std::size_t n;
};

// Requires 0 <= rate <= C_f.
SecrecySummary secrecy_summary(const GaussianWiretapParams& params,
                               std::size_t n, double rate);

}  // namespace secrecy::gaussian_sk

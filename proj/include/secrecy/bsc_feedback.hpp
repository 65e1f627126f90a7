#pragma once

#include <cstdint>
#include <vector>

// Closed-form secrecy rates for the binary-symmetric wiretap channel with an
// independent binary-symmetric backward channel: the combined key-generation
// plus modulo-add time-share scheme, its exact alpha optimization, rate
// surfaces, and a bit-level Monte Carlo of the modulo-add (Maurer) step.

namespace secrecy::bsc_feedback {

// Crossover probabilities of the four channels: Alice->Bob (eps_f),
// Alice->Eve (del_f), Bob->Alice (eps_b), Bob->Eve (del_b).
// The API restricts crossovers to [0, 0.5]; a value in (0.5, 1] is rejected
// with a hint, since the caller can relabel one bit alphabet (p -> 1-p)
// without loss of generality. Values outside [0, 1] are rejected outright.
struct BscSystem {
  BscSystem(double eps_f, double del_f, double eps_b, double del_b);

  double eps_f;
  double del_f;
  double eps_b;
  double del_b;
};

struct RateBreakdown {
  double r1;     // secrecy rate of the plain wiretap code on the forward channel
  double r2;     // one-time-pad rate fed by the backward secret key
  double r3;     // modulo-add rate using the random-bit portion of the feedback
  double alpha;  // time-share fraction of the backward channel used for key generation
  double total;  // r1 + r2 + r3
};

// Crossover of two independent binary symmetric channels in series:
// eps + del - 2*eps*del. Accepts the full [0, 1] range.
double cascade_crossover(double eps_b, double del_b);

// Maximum secret-key rate of the backward channel: [h(del_b) - h(eps_b)]^+.
double backward_key_capacity(const BscSystem& sys);

// Secrecy capacity of a forward pair without feedback: [h(del) - h(eps)]^+.
// Crossovers restricted to [0, 0.5].
double no_feedback_secrecy_capacity(double eps, double del);

// The three-part rate split for a fixed time share alpha in [0, 1].
RateBreakdown rate_breakdown(const BscSystem& sys, double alpha);

// Maximizes rate_breakdown(sys, alpha).total over alpha in [0, 1]. The total
// is piecewise-linear in alpha, so the maximizer is found exactly by
// evaluating the breakpoints of the min/clamp expressions plus the endpoints;
// ties break toward smaller alpha.
RateBreakdown optimize_alpha(const BscSystem& sys);

struct SurfacePoint {
  double eps;
  double del;
  double total_rate;
  double alpha_star;
  double improvement;  // total_rate - [h(del) - h(eps)]^+
};

// Optimized rate over a grid of forward crossover pairs. With symmetric set
// (the default), the backward channel mirrors each grid point
// (eps_b = eps, del_b = del); otherwise the backward channel is held fixed at
// (fixed_eps_b, fixed_del_b) while the grid sweeps the forward channel.
// Grids must be non-empty with values in [0, 0.5].
std::vector<SurfacePoint> rate_surface(const std::vector<double>& grid_eps,
                                       const std::vector<double>& grid_del,
                                       bool symmetric = true,
                                       double fixed_eps_b = 0.0,
                                       double fixed_del_b = 0.0);

struct MaurerResult {
  double eps_b;
  double del_b;
  std::uint64_t n;
  std::uint64_t seed;
  double bob_ber;        // empirical error rate of Bob's reconstruction vs v
  double eve_ber;        // empirical error rate of Eve's reconstruction vs v
  double expected_bob;   // eps_b
  double expected_eve;   // cascade_crossover(eps_b, del_b)
};

// Bit-level simulation of the modulo-add feedback step: Bob broadcasts n
// random bits, Alice re-encodes her message bits v with her noisy copy over
// an idealized noiseless forward link, and Bob/Eve reconstruct v with their
// respective copies. Deterministic for a fixed seed (rng::kAlgorithmId).
MaurerResult simulate_maurer(const BscSystem& sys, std::uint64_t n,
                             std::uint64_t seed);

// Bitwise XOR of equal-length bit vectors (entries 0/1).
std::vector<std::uint8_t> one_time_pad(const std::vector<std::uint8_t>& message_bits,
                                       const std::vector<std::uint8_t>& key_bits);

}  // namespace secrecy::bsc_feedback

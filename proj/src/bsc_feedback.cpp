#include "secrecy/bsc_feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "secrecy/info_theory.hpp"
#include "secrecy/rng.hpp"

namespace secrecy::bsc_feedback {

using info_theory::binary_entropy;

namespace {

double checked_crossover(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(p) +
                            " outside [0, 1]");
  }
  if (p > 0.5) {
    throw std::invalid_argument(
        std::string(name) + " = " + std::to_string(p) +
        " above 0.5; relabel the bit alphabet (p -> 1-p) before calling");
  }
  return p;
}

struct SchemeConstants {
  double r1;   // fixed wiretap-code rate
  double cap;  // forward capacity left for the padded/modulo parts
  double csb;  // backward secret-key capacity
  double adv;  // h(cascade) - h(eps_b), the modulo-add secrecy advantage
};

SchemeConstants scheme_constants(const BscSystem& sys) {
  SchemeConstants c;
  c.csb = std::max(0.0, binary_entropy(sys.del_b) - binary_entropy(sys.eps_b));
  c.adv = binary_entropy(cascade_crossover(sys.eps_b, sys.del_b)) -
          binary_entropy(sys.eps_b);
  if (sys.eps_f < sys.del_f) {
    c.r1 = binary_entropy(sys.del_f) - binary_entropy(sys.eps_f);
    c.cap = 1.0 - binary_entropy(sys.del_f);
  } else {
    // No secret communication without feedback; the boundary eps_f == del_f
    // lands here (r1 = 0 under either branch).
    c.r1 = 0.0;
    c.cap = 1.0 - binary_entropy(sys.eps_f);
  }
  return c;
}

RateBreakdown breakdown_from(const SchemeConstants& c, double alpha) {
  RateBreakdown b;
  b.alpha = alpha;
  b.r1 = c.r1;
  b.r2 = std::min(c.cap, alpha * c.csb);
  b.r3 = std::min(std::max(c.cap - alpha * c.csb, 0.0), 1.0 - alpha) * c.adv;
  b.total = b.r1 + b.r2 + b.r3;
  return b;
}

}  // namespace

BscSystem::BscSystem(double eps_f, double del_f, double eps_b, double del_b)
    : eps_f(checked_crossover(eps_f, "eps_f")),
      del_f(checked_crossover(del_f, "del_f")),
      eps_b(checked_crossover(eps_b, "eps_b")),
      del_b(checked_crossover(del_b, "del_b")) {}

double cascade_crossover(double eps_b, double del_b) {
  if (!(eps_b >= 0.0 && eps_b <= 1.0) || !(del_b >= 0.0 && del_b <= 1.0)) {
    throw std::domain_error("cascade_crossover: probabilities outside [0, 1]");
  }
  return eps_b + del_b - 2.0 * eps_b * del_b;
}

double backward_key_capacity(const BscSystem& sys) {
  return std::max(0.0, binary_entropy(sys.del_b) - binary_entropy(sys.eps_b));
}

double no_feedback_secrecy_capacity(double eps, double del) {
  checked_crossover(eps, "eps");
  checked_crossover(del, "del");
  return std::max(0.0, binary_entropy(del) - binary_entropy(eps));
}

RateBreakdown rate_breakdown(const BscSystem& sys, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("rate_breakdown: alpha = " + std::to_string(alpha) +
                            " outside [0, 1]");
  }
  return breakdown_from(scheme_constants(sys), alpha);
}

RateBreakdown optimize_alpha(const BscSystem& sys) {
  const SchemeConstants c = scheme_constants(sys);

  // total(alpha) is piecewise-linear; its kinks are where alpha*csb crosses
  // cap (r2 saturates and the [.]^+ clamp engages) and where the remaining
  // forward room crosses the remaining backward time.
  std::vector<double> candidates = {0.0, 1.0};
  if (c.csb > 0.0) candidates.push_back(c.cap / c.csb);
  if (c.csb < 1.0) candidates.push_back((1.0 - c.cap) / (1.0 - c.csb));

  std::sort(candidates.begin(), candidates.end());
  RateBreakdown best{};
  bool have_best = false;
  for (double a : candidates) {
    if (a < 0.0 || a > 1.0) continue;
    const RateBreakdown b = breakdown_from(c, a);
    if (!have_best || b.total > best.total) {  // ties keep the smaller alpha
      best = b;
      have_best = true;
    }
  }
  return best;
}

std::vector<SurfacePoint> rate_surface(const std::vector<double>& grid_eps,
                                       const std::vector<double>& grid_del,
                                       bool symmetric, double fixed_eps_b,
                                       double fixed_del_b) {
  if (grid_eps.empty() || grid_del.empty()) {
    throw std::invalid_argument("rate_surface: empty grid");
  }
  for (double e : grid_eps) checked_crossover(e, "grid_eps value");
  for (double d : grid_del) checked_crossover(d, "grid_del value");
  if (!symmetric) {
    checked_crossover(fixed_eps_b, "fixed_eps_b");
    checked_crossover(fixed_del_b, "fixed_del_b");
  }

  std::vector<SurfacePoint> out;
  out.reserve(grid_eps.size() * grid_del.size());
  for (double eps : grid_eps) {
    for (double del : grid_del) {
      const BscSystem sys(eps, del, symmetric ? eps : fixed_eps_b,
                          symmetric ? del : fixed_del_b);
      const RateBreakdown best = optimize_alpha(sys);
      out.push_back({eps, del, best.total, best.alpha,
                     best.total - no_feedback_secrecy_capacity(eps, del)});
    }
  }
  return out;
}

MaurerResult simulate_maurer(const BscSystem& sys, std::uint64_t n,
                             std::uint64_t seed) {
  if (n == 0) {
    throw std::domain_error("simulate_maurer: n must be >= 1");
  }
  rng::Sampler rnd(seed);
  std::uint64_t bob_errors = 0;
  std::uint64_t eve_errors = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const int v = rnd.bit();                      // Alice's message bit
    const int xb = rnd.bit();                     // Bob's random broadcast bit
    const int yb = xb ^ (rnd.bernoulli(sys.eps_b) ? 1 : 0);  // at Alice
    const int zb = xb ^ (rnd.bernoulli(sys.del_b) ? 1 : 0);  // at Eve
    const int xf = v ^ yb;             // sent over the idealized forward link
    const int bob_hat = xf ^ xb;
    const int eve_hat = xf ^ zb;
    bob_errors += static_cast<std::uint64_t>(bob_hat != v);
    eve_errors += static_cast<std::uint64_t>(eve_hat != v);
  }
  MaurerResult r;
  r.eps_b = sys.eps_b;
  r.del_b = sys.del_b;
  r.n = n;
  r.seed = seed;
  r.bob_ber = static_cast<double>(bob_errors) / static_cast<double>(n);
  r.eve_ber = static_cast<double>(eve_errors) / static_cast<double>(n);
  r.expected_bob = sys.eps_b;
  r.expected_eve = cascade_crossover(sys.eps_b, sys.del_b);
  return r;
}

std::vector<std::uint8_t> one_time_pad(const std::vector<std::uint8_t>& message_bits,
                                       const std::vector<std::uint8_t>& key_bits) {
  if (message_bits.size() != key_bits.size()) {
    throw std::invalid_argument("one_time_pad: message and key lengths differ");
  }
  std::vector<std::uint8_t> out(message_bits.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((message_bits[i] ^ key_bits[i]) & 1u);
  }
  return out;
}

}  // namespace secrecy::bsc_feedback

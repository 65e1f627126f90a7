#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "secrecy/bsc_feedback.hpp"
#include "secrecy/info_theory.hpp"

using namespace secrecy::bsc_feedback;
using secrecy::info_theory::binary_entropy;
using secrecy::info_theory::binary_entropy_inverse;

namespace {

// Independent transcription of the three-part rate formulas, kept separate
// from the library so the two can disagree.
double oracle_total(double ef, double df, double eb, double db, double a) {
  auto h = [](double p) {
    return (p <= 0.0 || p >= 1.0) ? 0.0
                                  : -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
  };
  const double csb = std::max(0.0, h(db) - h(eb));
  const double adv = h(eb + db - 2 * eb * db) - h(eb);
  const double r1 = (ef < df) ? h(df) - h(ef) : 0.0;
  const double cap = (ef < df) ? 1.0 - h(df) : 1.0 - h(ef);
  const double r2 = std::min(cap, a * csb);
  const double r3 = std::min(std::max(cap - a * csb, 0.0), 1.0 - a) * adv;
  return r1 + r2 + r3;
}

// Dense grid search, step 1e-4, followed by local grid refinement around the
// running argmax (window of +/-2 previous steps, 401 points per pass) down to
// a 1e-10 step. Returns the refined max; coarse_max receives the single-pass
// value.
template <typename F>
double refined_grid_max(F&& f, double* coarse_max = nullptr) {
  double best = -1.0, best_a = 0.0;
  double step = 1e-4;
  for (int i = 0; i <= 10000; ++i) {
    const double a = static_cast<double>(i) * 1e-4;
    const double v = f(a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  if (coarse_max != nullptr) *coarse_max = best;
  for (int pass = 0; pass < 3; ++pass) {
    const double lo = std::max(0.0, best_a - 2.0 * step);
    const double hi = std::min(1.0, best_a + 2.0 * step);
    step = (hi - lo) / 400.0;
    for (int i = 0; i <= 400; ++i) {
      const double a = lo + static_cast<double>(i) * step;
      const double v = f(a);
      if (v > best) {
        best = v;
        best_a = a;
      }
    }
  }
  return best;
}

BscSystem random_system(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unif(0.0, 0.5);
  return BscSystem(unif(gen), unif(gen), unif(gen), unif(gen));
}

const double kDeltaStar = binary_entropy_inverse(0.5);

}  // namespace

TEST_CASE("cascade_crossover") {
  CHECK(cascade_crossover(0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(cascade_crossover(0.5, 0.3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cascade_crossover(0.11, 0.11) == doctest::Approx(0.1958).epsilon(1e-14));
  CHECK_THROWS_AS(cascade_crossover(-0.1, 0.2), std::domain_error);
  CHECK_THROWS_AS(cascade_crossover(0.1, 1.2), std::domain_error);
}

TEST_CASE("BscSystem rejects out-of-range crossovers") {
  CHECK_NOTHROW(BscSystem(0.0, 0.5, 0.25, 0.1));
  CHECK_THROWS_AS(BscSystem(-0.1, 0.1, 0.1, 0.1), std::domain_error);
  CHECK_THROWS_AS(BscSystem(1.1, 0.1, 0.1, 0.1), std::domain_error);
  // above 0.5 needs a caller-side relabel first
  CHECK_THROWS_AS(BscSystem(0.6, 0.1, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("backward_key_capacity") {
  CHECK(backward_key_capacity(BscSystem(0, 0, 0.2, 0.2)) == 0.0);
  CHECK(backward_key_capacity(BscSystem(0, 0, 0.0, kDeltaStar)) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(backward_key_capacity(BscSystem(0, 0, 0.3, 0.1)) == 0.0);
}

TEST_CASE("no_feedback_secrecy_capacity") {
  CHECK(no_feedback_secrecy_capacity(0.0, 0.11) ==
        doctest::Approx(binary_entropy(0.11)).epsilon(1e-12));
  CHECK(std::abs(no_feedback_secrecy_capacity(0.0, 0.11) - 0.5) < 1e-4);
  CHECK(no_feedback_secrecy_capacity(0.3, 0.3) == 0.0);
  CHECK(no_feedback_secrecy_capacity(0.2, 0.1) == 0.0);
  CHECK_THROWS_AS(no_feedback_secrecy_capacity(0.7, 0.2), std::invalid_argument);
}

TEST_CASE("rate_breakdown at the peak-gain system") {
  const BscSystem sys(0.0, kDeltaStar, 0.0, kDeltaStar);

  const RateBreakdown full = rate_breakdown(sys, 1.0);
  CHECK(full.r1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(full.r2 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(full.r3 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(full.total == doctest::Approx(1.0).epsilon(1e-9));

  const RateBreakdown none = rate_breakdown(sys, 0.0);
  CHECK(none.r1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(none.r2 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(none.r3 == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(none.total == doctest::Approx(0.75).epsilon(1e-9));

  CHECK_THROWS_AS(rate_breakdown(sys, -0.01), std::domain_error);
  CHECK_THROWS_AS(rate_breakdown(sys, 1.01), std::domain_error);
}

TEST_CASE("rate_breakdown components stay consistent on random systems") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const BscSystem sys = random_system(gen);
    const double a = ua(gen);
    const RateBreakdown b = rate_breakdown(sys, a);
    CHECK(b.total == doctest::Approx(b.r1 + b.r2 + b.r3).epsilon(1e-15));
    CHECK(b.r1 >= 0.0);
    CHECK(b.r2 >= 0.0);
    CHECK(b.r3 >= 0.0);
    CHECK(b.alpha == a);
    CHECK(b.total ==
          doctest::Approx(oracle_total(sys.eps_f, sys.del_f, sys.eps_b,
                                       sys.del_b, a))
              .epsilon(1e-12));
  }
}

TEST_CASE("the eps_f == del_f boundary is branch-independent") {
  // at the boundary r1 = 0 and both branch caps coincide, so evaluating the
  // eps_f < del_f formulas with del_f = eps_f must give the same totals
  auto first_branch_total = [](const BscSystem& sys, double a) {
    const double csb =
        std::max(0.0, binary_entropy(sys.del_b) - binary_entropy(sys.eps_b));
    const double adv =
        binary_entropy(cascade_crossover(sys.eps_b, sys.del_b)) -
        binary_entropy(sys.eps_b);
    const double r1 = binary_entropy(sys.del_f) - binary_entropy(sys.eps_f);
    const double cap = 1.0 - binary_entropy(sys.del_f);
    return r1 + std::min(cap, a * csb) +
           std::min(std::max(cap - a * csb, 0.0), 1.0 - a) * adv;
  };
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> unif(0.0, 0.5);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double e = unif(gen);
    const BscSystem sys(e, e, unif(gen), unif(gen));
    const double a = ua(gen);
    CHECK(rate_breakdown(sys, a).total ==
          doctest::Approx(first_branch_total(sys, a)).epsilon(1e-12));
  }
}

TEST_CASE("optimize_alpha: peak-gain anchor") {
  const RateBreakdown best = optimize_alpha(BscSystem(0.0, kDeltaStar, 0.0, kDeltaStar));
  CHECK(best.alpha == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(best.total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimize_alpha dominates random time shares") {
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const BscSystem sys = random_system(gen);
    const double best = optimize_alpha(sys).total;
    for (int k = 0; k < 1000; ++k) {
      CHECK(best >= rate_breakdown(sys, ua(gen)).total - 1e-12);
    }
  }
}

TEST_CASE("optimize_alpha equals refined dense grid search to 1e-9") {
  std::mt19937_64 gen(44);
  for (int rep = 0; rep < 300; ++rep) {
    const BscSystem sys = random_system(gen);
    const RateBreakdown best = optimize_alpha(sys);
    double coarse = 0.0;
    const double grid = refined_grid_max(
        [&](double a) { return rate_breakdown(sys, a).total; }, &coarse);
    CHECK(best.total == doctest::Approx(grid).epsilon(1e-9));
    CHECK(best.total >= coarse - 1e-12);  // never below any single grid value
  }
}

TEST_CASE("optimize_alpha with a dead backward key channel") {
  // eps_b >= del_b kills the key rate; the optimum uses the feedback purely
  // for random bits, so the total is r1 + cap * adv at alpha = 0.
  const BscSystem sys(0.1, 0.3, 0.25, 0.2);
  const RateBreakdown best = optimize_alpha(sys);
  CHECK(backward_key_capacity(sys) == 0.0);
  CHECK(best.alpha == doctest::Approx(0.0));
  CHECK(best.total ==
        doctest::Approx(rate_breakdown(sys, 0.0).total).epsilon(1e-12));
  const double grid =
      refined_grid_max([&](double a) { return rate_breakdown(sys, a).total; });
  CHECK(best.total == doctest::Approx(grid).epsilon(1e-9));
}

TEST_CASE("combined scheme is positive where eps_f == del_f") {
  // no secrecy without feedback, but the modulo-add part still pays
  const RateBreakdown best = optimize_alpha(BscSystem(0.11, 0.11, 0.11, 0.11));
  CHECK(no_feedback_secrecy_capacity(0.11, 0.11) == 0.0);
  // = (1 - h(0.11)) * (h(0.1958) - h(0.11)), frozen from exact arithmetic
  CHECK(best.total == doctest::Approx(0.106784038549263).epsilon(1e-12));
}

TEST_CASE("rate_surface anchors and properties") {
  const std::vector<double> eps_grid = {0.0, 0.11, 0.2};
  const std::vector<double> del_grid = {0.0, 0.11, 0.2};
  const auto surface = rate_surface(eps_grid, del_grid);
  REQUIRE(surface.size() == 9);

  for (const auto& p : surface) {
    CHECK(p.total_rate >= 0.0);
    CHECK(p.improvement >= -1e-12);
    if (p.del == 0.0) {
      CHECK(p.total_rate == doctest::Approx(0.0).epsilon(1e-12));  // del = 0 row
    }
    if (p.eps == 0.0 && p.del == 0.11) {
      CHECK(p.total_rate == doctest::Approx(0.999831916329056).epsilon(1e-10));
      CHECK(std::abs(p.total_rate - 1.0) < 1e-3);
      CHECK(std::abs(p.improvement - 0.5) < 1e-3);
    }
    if (p.eps == 0.2 && p.del == 0.2) {
      // positive rate where the no-feedback capacity vanishes
      CHECK(p.improvement == doctest::Approx(p.total_rate).epsilon(1e-12));
      CHECK(p.total_rate == doctest::Approx(0.0507351541983285).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(rate_surface({}, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(rate_surface({0.1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(rate_surface({0.6}, {0.1}), std::invalid_argument);
}

TEST_CASE("rate_surface with a fixed backward channel") {
  const auto surface = rate_surface({0.3}, {0.1}, /*symmetric=*/false, 0.0, 0.25);
  REQUIRE(surface.size() == 1);
  // cap = 1 - h(0.3) reached by saturating the one-time pad
  CHECK(surface[0].total_rate ==
        doctest::Approx(1.0 - binary_entropy(0.3)).epsilon(1e-12));
  CHECK(no_feedback_secrecy_capacity(0.3, 0.1) == 0.0);
  CHECK(surface[0].total_rate > 0.01);
}

TEST_CASE("simulate_maurer: noiseless and fully noisy endpoints") {
  const auto clean = simulate_maurer(BscSystem(0, 0, 0.0, 0.0), 10000, 1);
  CHECK(clean.bob_ber == 0.0);
  CHECK(clean.eve_ber == 0.0);

  const auto noisy = simulate_maurer(BscSystem(0, 0, 0.5, 0.1), 200000, 2);
  CHECK(std::abs(noisy.bob_ber - 0.5) < 3.0 * std::sqrt(0.25 / 200000.0));

  CHECK_THROWS_AS(simulate_maurer(BscSystem(0, 0, 0.1, 0.1), 0, 3),
                  std::domain_error);
}

TEST_CASE("simulate_maurer converges to the cascade closed forms") {
  const std::uint64_t n = 1000000;
  const auto r = simulate_maurer(BscSystem(0, 0, 0.11, 0.11), n, 20250809);
  CHECK(r.expected_bob == doctest::Approx(0.11));
  CHECK(r.expected_eve == doctest::Approx(0.1958));
  const double bob_band = 3.0 * std::sqrt(0.11 * 0.89 / static_cast<double>(n));
  const double eve_band = 3.0 * std::sqrt(0.1958 * 0.8042 / static_cast<double>(n));
  CHECK(std::abs(r.bob_ber - 0.11) < bob_band);
  CHECK(std::abs(r.eve_ber - 0.1958) < eve_band);
}

TEST_CASE("simulate_maurer is deterministic per seed") {
  const BscSystem sys(0, 0, 0.2, 0.3);
  const auto a = simulate_maurer(sys, 50000, 7);
  const auto b = simulate_maurer(sys, 50000, 7);
  CHECK(a.bob_ber == b.bob_ber);
  CHECK(a.eve_ber == b.eve_ber);
  const auto c = simulate_maurer(sys, 50000, 8);
  CHECK((c.bob_ber != a.bob_ber || c.eve_ber != a.eve_ber));
}

TEST_CASE("one_time_pad basics") {
  const std::vector<std::uint8_t> m = {1, 0, 1, 1, 0};
  const std::vector<std::uint8_t> zeros(5, 0);
  CHECK(one_time_pad(m, zeros) == m);
  CHECK(one_time_pad(m, m) == zeros);
  CHECK_THROWS_AS(one_time_pad(m, {1, 0}), std::invalid_argument);
}

TEST_CASE("one_time_pad hides a biased message bit from the ciphertext") {
  std::mt19937_64 gen(45);
  std::bernoulli_distribution message_bit(0.3);
  std::bernoulli_distribution key_bit(0.5);
  const std::size_t trials = 100000;
  std::vector<std::uint8_t> m(trials), k(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    m[i] = message_bit(gen) ? 1 : 0;
    k[i] = key_bit(gen) ? 1 : 0;
  }
  const auto c = one_time_pad(m, k);
  double counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < trials; ++i) counts[2 * m[i] + c[i]] += 1.0;
  std::vector<double> table(4);
  for (int i = 0; i < 4; ++i) table[i] = counts[i] / trials;
  const double mi = oracles::brute_mi_2d(table, 2, 2);
  CHECK(mi < 1e-3);
}

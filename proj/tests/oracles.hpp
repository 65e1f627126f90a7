#pragma once

// Independent test oracles: brute-force summations, Gaussian tail helpers and
// random table generators. Everything here is deliberately written against
// the definitions rather than through the library code paths it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "secrecy/info_theory.hpp"

namespace oracles {

// I(A;B) by direct summation over a dense |A| x |B| table (row-major).
inline double brute_mi_2d(const std::vector<double>& joint, std::size_t na,
                          std::size_t nb) {
  std::vector<double> pa(na, 0.0), pb(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      pa[a] += joint[a * nb + b];
      pb[b] += joint[a * nb + b];
    }
  }
  double mi = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      const double p = joint[a * nb + b];
      if (p > 0.0) mi += p * std::log2(p / (pa[a] * pb[b]));
    }
  }
  return mi;
}

// I(A;B|C) by direct summation over a dense |A| x |B| x |C| table:
// sum p(a,b,c) log2( p(a,b,c) p(c) / (p(a,c) p(b,c)) ).
inline double brute_cmi_3d(const std::vector<double>& joint, std::size_t na,
                           std::size_t nb, std::size_t nc) {
  std::vector<double> pac(na * nc, 0.0), pbc(nb * nc, 0.0), pc(nc, 0.0);
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
    return joint[(a * nb + b) * nc + c];
  };
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c) {
        pac[a * nc + c] += at(a, b, c);
        pbc[b * nc + c] += at(a, b, c);
        pc[c] += at(a, b, c);
      }
  double cmi = 0.0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c) {
        const double p = at(a, b, c);
        if (p > 0.0) {
          cmi += p * std::log2(p * pc[c] / (pac[a * nc + c] * pbc[b * nc + c]));
        }
      }
  return cmi;
}

// Gaussian upper-tail probability Q(x) = P(Z > x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Exact decoding-error probability of the iterative scheme for a uniform
// message: final error is N(0, sigma^2); interior midpoints err on both
// sides, the two edge midpoints on one side (the decoder clamps), giving
// 2 Q(1/(2 M sigma)) (M-1)/M.
inline double sk_error_prediction(std::uint64_t m, double sigma) {
  const double q = q_function(1.0 / (2.0 * static_cast<double>(m) * sigma));
  return 2.0 * q * static_cast<double>(m - 1) / static_cast<double>(m);
}

// Random probability table summing to 1 within the library tolerance.
inline std::vector<double> random_table(std::mt19937_64& gen, std::size_t size,
                                        bool allow_zeros = false) {
  std::exponential_distribution<double> exp_dist(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> v(size);
  double sum = 0.0;
  for (double& x : v) {
    x = exp_dist(gen);
    if (allow_zeros && unif(gen) < 0.25) x = 0.0;
    sum += x;
  }
  if (sum == 0.0) v[0] = sum = 1.0;
  for (double& x : v) x /= sum;
  // One more normalization pass keeps the compensated total within 1e-12.
  double sum2 = 0.0;
  for (double x : v) sum2 += x;
  for (double& x : v) x /= sum2;
  return v;
}

inline secrecy::info_theory::Channel random_channel(
    std::mt19937_64& gen, std::size_t input_size,
    std::vector<std::size_t> output_dims) {
  std::size_t out = 1;
  for (std::size_t d : output_dims) out *= d;
  std::vector<std::vector<double>> rows;
  rows.reserve(input_size);
  for (std::size_t i = 0; i < input_size; ++i) {
    rows.push_back(random_table(gen, out));
  }
  return secrecy::info_theory::Channel(std::move(output_dims), std::move(rows));
}

// p(y,z|x) for a pair of independent binary symmetric channels: x -> y with
// crossover eps, x -> z with crossover del.
inline secrecy::info_theory::Channel bsc_pair_channel(double eps, double del) {
  auto row = [&](int x) {
    std::vector<double> r(4);
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        const double py = (y == x) ? 1.0 - eps : eps;
        const double pz = (z == x) ? 1.0 - del : del;
        r[2 * y + z] = py * pz;
      }
    }
    return r;
  };
  return secrecy::info_theory::Channel({2, 2}, {row(0), row(1)});
}

// Single-output channel from a dense row-major transition table.
inline secrecy::info_theory::Channel single_output_channel(
    std::vector<std::vector<double>> rows) {
  const std::size_t out = rows.at(0).size();
  return secrecy::info_theory::Channel({out}, std::move(rows));
}

}  // namespace oracles

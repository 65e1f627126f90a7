#pragma once

#include <cstddef>
#include <vector>

// Exact entropy / mutual-information computations over finite probability
// tables. All logarithms are base 2; every rate in this project is in bits.
// Probability tables are validated on construction and never renormalized.

namespace secrecy::info_theory {

// Tolerance for |sum - 1| when validating probability tables.
inline constexpr double kNormalizationTol = 1e-12;

// Dense tables only; joint tables beyond this many entries are rejected.
inline constexpr std::size_t kMaxJointEntries = 1'000'000;

// A probability mass function over a finite alphabet.
// Invariants: every entry >= 0 and the entries sum to 1 within kNormalizationTol.
class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// A dense joint distribution over several finite variables, stored row-major
// (last axis fastest). Same invariants as Pmf, plus the entry-count cap.
class JointPmf {
 public:
  JointPmf(std::vector<std::size_t> dims, std::vector<double> probs);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

  // Marginal distribution over the given axes, in the given order.
  // Axes must be distinct, non-empty and in range.
  JointPmf marginal(const std::vector<std::size_t>& axes) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
};

// A memoryless channel p(outputs | input). Outputs may be a tuple of
// variables (e.g. the pair seen by receiver and eavesdropper); each row is a
// joint pmf over the output product alphabet, flattened row-major.
class Channel {
 public:
  Channel(std::vector<std::size_t> output_dims,
          std::vector<std::vector<double>> rows);

  std::size_t input_size() const { return rows_.size(); }
  const std::vector<std::size_t>& output_dims() const { return output_dims_; }
  std::size_t output_size() const;
  const std::vector<double>& row(std::size_t input) const;
  double prob(std::size_t input, std::size_t output_flat) const;

 private:
  std::vector<std::size_t> output_dims_;
  std::vector<std::vector<double>> rows_;
};

// h(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 == 0. Domain [0, 1].
double binary_entropy(double p);

// The unique p in [0, 0.5] with binary_entropy(p) == h, by bisection.
// Domain [0, 1].
double binary_entropy_inverse(double h);

// Shannon entropy in bits.
double entropy(const Pmf& p);
double entropy(const JointPmf& j);

// I(A;B) = H(A) + H(B) - H(A,B) from exact marginals. Axis sets must be
// disjoint, non-empty and in range.
double mutual_information(const JointPmf& j,
                          const std::vector<std::size_t>& axes_a,
                          const std::vector<std::size_t>& axes_b);

// I(A;B|C) = sum_c p(c) I(A;B | C=c) over the exact conditional slices.
double conditional_mutual_information(const JointPmf& j,
                                      const std::vector<std::size_t>& axes_a,
                                      const std::vector<std::size_t>& axes_b,
                                      const std::vector<std::size_t>& axes_c);

}  // namespace secrecy::info_theory

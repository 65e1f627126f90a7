#include "secrecy/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace secrecy::info_theory {

namespace {

// Neumaier-compensated sum so that validation of large tables is not
// polluted by naive accumulation error.
double compensated_sum(const std::vector<double>& v) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

void validate_table(const std::vector<double>& probs, const char* what) {
  if (probs.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty probability table");
  }
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument(std::string(what) +
                                  ": negative or non-finite entry " +
                                  std::to_string(p));
    }
  }
  const double sum = compensated_sum(probs);
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                std::to_string(sum) + ", expected 1 within 1e-12");
  }
}

double entropy_of_table(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) {  // 0 log 0 == 0 by explicit skip
      h -= p * std::log2(p);
    }
  }
  return h;
}

void validate_axes(const JointPmf& j, const std::vector<std::size_t>& axes,
                   const char* what) {
  if (axes.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty axis set");
  }
  for (std::size_t a : axes) {
    if (a >= j.rank()) {
      throw std::invalid_argument(std::string(what) + ": axis " +
                                  std::to_string(a) + " out of range for rank " +
                                  std::to_string(j.rank()));
    }
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t k = i + 1; k < axes.size(); ++k) {
      if (axes[i] == axes[k]) {
        throw std::invalid_argument(std::string(what) + ": duplicate axis " +
                                    std::to_string(axes[i]));
      }
    }
  }
}

void validate_disjoint(const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b, const char* what) {
  for (std::size_t x : a) {
    for (std::size_t y : b) {
      if (x == y) {
        throw std::invalid_argument(std::string(what) +
                                    ": axis sets overlap at axis " +
                                    std::to_string(x));
      }
    }
  }
}

std::vector<std::size_t> concat(const std::vector<std::size_t>& a,
                                const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Raw marginal table over `axes` (order preserved), without re-validation of
// the output; used internally where the caller immediately takes an entropy.
std::vector<double> marginal_table(const JointPmf& j,
                                   const std::vector<std::size_t>& axes) {
  const auto& dims = j.dims();
  const auto& probs = j.probs();

  std::size_t out_size = 1;
  for (std::size_t a : axes) out_size *= dims[a];

  // Stride of each kept axis in the output index.
  std::vector<std::size_t> out_stride(axes.size());
  {
    std::size_t s = 1;
    for (std::size_t i = axes.size(); i-- > 0;) {
      out_stride[i] = s;
      s *= dims[axes[i]];
    }
  }

  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < probs.size(); ++flat) {
    std::size_t key = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      key += idx[axes[i]] * out_stride[i];
    }
    out[key] += probs[flat];
    for (std::size_t ax = dims.size(); ax-- > 0;) {  // odometer increment
      if (++idx[ax] < dims[ax]) break;
      idx[ax] = 0;
    }
  }
  return out;
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  validate_table(probs_, "Pmf");
}

JointPmf::JointPmf(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  if (dims_.empty()) {
    throw std::invalid_argument("JointPmf: no axes");
  }
  std::size_t expected = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw std::invalid_argument("JointPmf: zero-sized axis");
    if (expected > kMaxJointEntries / d) {
      throw std::invalid_argument(
          "JointPmf: joint table exceeds the 10^6 entry cap");
    }
    expected *= d;
  }
  if (expected != probs_.size()) {
    throw std::invalid_argument(
        "JointPmf: table has " + std::to_string(probs_.size()) +
        " entries, dims require " + std::to_string(expected));
  }
  validate_table(probs_, "JointPmf");
}

JointPmf JointPmf::marginal(const std::vector<std::size_t>& axes) const {
  validate_axes(*this, axes, "JointPmf::marginal");
  std::vector<std::size_t> out_dims(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) out_dims[i] = dims_[axes[i]];
  return JointPmf(std::move(out_dims), marginal_table(*this, axes));
}

Channel::Channel(std::vector<std::size_t> output_dims,
                 std::vector<std::vector<double>> rows)
    : output_dims_(std::move(output_dims)), rows_(std::move(rows)) {
  if (output_dims_.empty()) {
    throw std::invalid_argument("Channel: no output axes");
  }
  if (rows_.empty()) {
    throw std::invalid_argument("Channel: no input rows");
  }
  std::size_t out = 1;
  for (std::size_t d : output_dims_) {
    if (d == 0) throw std::invalid_argument("Channel: zero-sized output axis");
    out *= d;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != out) {
      throw std::invalid_argument("Channel: row " + std::to_string(i) +
                                  " has " + std::to_string(rows_[i].size()) +
                                  " entries, expected " + std::to_string(out));
    }
    validate_table(rows_[i], "Channel row");
  }
}

std::size_t Channel::output_size() const {
  std::size_t out = 1;
  for (std::size_t d : output_dims_) out *= d;
  return out;
}

const std::vector<double>& Channel::row(std::size_t input) const {
  if (input >= rows_.size()) {
    throw std::invalid_argument("Channel::row: input symbol out of range");
  }
  return rows_[input];
}

double Channel::prob(std::size_t input, std::size_t output_flat) const {
  const auto& r = row(input);
  if (output_flat >= r.size()) {
    throw std::invalid_argument("Channel::prob: output symbol out of range");
  }
  return r[output_flat];
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary_entropy: p = " + std::to_string(p) +
                            " outside [0, 1]");
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double binary_entropy_inverse(double h) {
  if (!(h >= 0.0 && h <= 1.0)) {
    throw std::domain_error("binary_entropy_inverse: h = " +
                            std::to_string(h) + " outside [0, 1]");
  }
  if (h == 0.0) return 0.0;
  if (h == 1.0) return 0.5;
  // binary_entropy is strictly increasing on [0, 0.5].
  double lo = 0.0;
  double hi = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double entropy(const Pmf& p) { return entropy_of_table(p.probs()); }

double entropy(const JointPmf& j) { return entropy_of_table(j.probs()); }

double mutual_information(const JointPmf& j,
                          const std::vector<std::size_t>& axes_a,
                          const std::vector<std::size_t>& axes_b) {
  validate_axes(j, axes_a, "mutual_information(axes_a)");
  validate_axes(j, axes_b, "mutual_information(axes_b)");
  validate_disjoint(axes_a, axes_b, "mutual_information");
  const double ha = entropy_of_table(marginal_table(j, axes_a));
  const double hb = entropy_of_table(marginal_table(j, axes_b));
  const double hab = entropy_of_table(marginal_table(j, concat(axes_a, axes_b)));
  return ha + hb - hab;
}

double conditional_mutual_information(const JointPmf& j,
                                      const std::vector<std::size_t>& axes_a,
                                      const std::vector<std::size_t>& axes_b,
                                      const std::vector<std::size_t>& axes_c) {
  validate_axes(j, axes_a, "conditional_mutual_information(axes_a)");
  validate_axes(j, axes_b, "conditional_mutual_information(axes_b)");
  validate_axes(j, axes_c, "conditional_mutual_information(axes_c)");
  validate_disjoint(axes_a, axes_b, "conditional_mutual_information(a,b)");
  validate_disjoint(axes_a, axes_c, "conditional_mutual_information(a,c)");
  validate_disjoint(axes_b, axes_c, "conditional_mutual_information(b,c)");

  // Collapse to a (A, B, C) composite table, C fastest, then average the
  // per-slice mutual information weighted by p(c).
  const auto& dims = j.dims();
  std::size_t na = 1, nb = 1, nc = 1;
  for (std::size_t a : axes_a) na *= dims[a];
  for (std::size_t b : axes_b) nb *= dims[b];
  for (std::size_t c : axes_c) nc *= dims[c];

  std::vector<std::size_t> order = concat(concat(axes_a, axes_b), axes_c);
  const std::vector<double> abc = marginal_table(j, order);  // index (a*nb + b)*nc + c

  double cmi = 0.0;
  std::vector<double> slice(na * nb);
  std::vector<double> pa(na), pb(nb);
  for (std::size_t c = 0; c < nc; ++c) {
    double pc = 0.0;
    for (std::size_t ab = 0; ab < na * nb; ++ab) {
      slice[ab] = abc[ab * nc + c];
      pc += slice[ab];
    }
    if (pc <= 0.0) continue;
    std::fill(pa.begin(), pa.end(), 0.0);
    std::fill(pb.begin(), pb.end(), 0.0);
    double hab = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < nb; ++b) {
        const double q = slice[a * nb + b] / pc;
        pa[a] += q;
        pb[b] += q;
        if (q > 0.0) hab -= q * std::log2(q);
      }
    }
    cmi += pc * (entropy_of_table(pa) + entropy_of_table(pb) - hab);
  }
  return cmi;
}

}  // namespace secrecy::info_theory

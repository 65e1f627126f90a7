#pragma once

#include <string>

#include "secrecy/info_theory.hpp"

// Exact evaluation of the achievable secrecy-rate region for a wiretap
// channel with an orthogonal backward (feedback) channel, for user-supplied
// small-alphabet distributions. No optimization over auxiliary variables is
// attempted; each call evaluates one fixed specification.

namespace secrecy::region_eval {

// The chained distributions
//   p(v_b) p(x_b|v_b) p(y_b,z_b|x_b) p(u_f) p(v_f|u_f) p(x_f|v_f) p(y_f,z_f|x_f),
// i.e. the Markov chains U_f -> V_f -> X_f -> (Y_f, Z_f) and
// V_b -> X_b -> (Y_b, Z_b). The broadcast channels carry two output axes
// (legitimate receiver first, eavesdropper second); the auxiliary-to-input
// channels carry exactly one.
struct FeedbackSystemSpec {
  info_theory::Pmf p_vb;
  info_theory::Channel ch_xb_given_vb;
  info_theory::Channel ch_yz_b;
  info_theory::Pmf p_uf;
  info_theory::Channel ch_vf_given_uf;
  info_theory::Channel ch_xf_given_vf;
  info_theory::Channel ch_yz_f;

  // Checks alphabet chaining and output-axis counts; throws std::invalid_argument.
  void validate() const;
};

// Axis order of the full joint built from a FeedbackSystemSpec.
enum Axis : std::size_t {
  kVb = 0, kXb = 1, kYb = 2, kZb = 3,
  kUf = 4, kVf = 5, kXf = 6, kYf = 7, kZf = 8,
};

struct RegionResult {
  double rate;              // max(0, min(term_direct, term_secrecy_sum)) bits
  double term_direct;       // I(V_f;Y_f)
  double term_secrecy_sum;  // I(V_f;Y_f|U_f) - I(V_f;Z_f|U_f) + I(V_b;Y_b) - I(V_b;Z_b)
  bool constraint_ok;       // I(U_f;Z_f) >= I(U_f;Y_f) (reported, not enforced)
};

// Full 9-axis joint in Axis order. Throws on invalid specs or when the table
// would exceed the dense-table cap.
info_theory::JointPmf build_joint(const FeedbackSystemSpec& spec);

// Achievable-rate evaluation for a fixed auxiliary choice. Negative
// intermediate terms are preserved in the result for diagnostics; the rate
// itself is clamped at zero.
RegionResult achievable_rate(const FeedbackSystemSpec& spec);

// Specialization without auxiliaries:
// max(0, min{I(X_f;Y_f), I(X_f;Y_f) - I(X_f;Z_f) + I(X_b;Y_b) - I(X_b;Z_b)}).
double no_auxiliary_rate(const info_theory::Pmf& p_xf,
                       const info_theory::Channel& ch_yz_f,
                       const info_theory::Pmf& p_xb,
                       const info_theory::Channel& ch_yz_b);

// Secret-key rate generated over the backward channel:
// min{[I(V_b;Y_b) - I(V_b;Z_b)]^+, i_xf_zf}. Requires i_xf_zf >= 0.
double key_rate(const info_theory::Pmf& p_vb,
                const info_theory::Channel& ch_xb_given_vb,
                const info_theory::Channel& ch_yz_b, double i_xf_zf);

// Loads a spec from a JSON document mirroring the FeedbackSystemSpec field
// names, with probability tables as nested arrays. Channels are objects
// {"output_dims": [...], "rows": [[...], ...]}. Errors carry the offending
// field path.
FeedbackSystemSpec load_spec_json(const std::string& json_text);
FeedbackSystemSpec load_spec_file(const std::string& path);

}  // namespace secrecy::region_eval

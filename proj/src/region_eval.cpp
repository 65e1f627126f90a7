#include "secrecy/region_eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace secrecy::region_eval {

using info_theory::Channel;
using info_theory::JointPmf;
using info_theory::Pmf;

void FeedbackSystemSpec::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("FeedbackSystemSpec: " + msg);
  };
  require(ch_xb_given_vb.output_dims().size() == 1,
          "ch_xb_given_vb must have a single output variable");
  require(ch_vf_given_uf.output_dims().size() == 1,
          "ch_vf_given_uf must have a single output variable");
  require(ch_xf_given_vf.output_dims().size() == 1,
          "ch_xf_given_vf must have a single output variable");
  require(ch_yz_b.output_dims().size() == 2,
          "ch_yz_b must have two output variables (y_b, z_b)");
  require(ch_yz_f.output_dims().size() == 2,
          "ch_yz_f must have two output variables (y_f, z_f)");
  require(ch_xb_given_vb.input_size() == p_vb.size(),
          "ch_xb_given_vb input alphabet must match p_vb");
  require(ch_yz_b.input_size() == ch_xb_given_vb.output_dims()[0],
          "ch_yz_b input alphabet must match x_b");
  require(ch_vf_given_uf.input_size() == p_uf.size(),
          "ch_vf_given_uf input alphabet must match p_uf");
  require(ch_xf_given_vf.input_size() == ch_vf_given_uf.output_dims()[0],
          "ch_xf_given_vf input alphabet must match v_f");
  require(ch_yz_f.input_size() == ch_xf_given_vf.output_dims()[0],
          "ch_yz_f input alphabet must match x_f");
}

JointPmf build_joint(const FeedbackSystemSpec& spec) {
  spec.validate();

  const std::size_t n_vb = spec.p_vb.size();
  const std::size_t n_xb = spec.ch_xb_given_vb.output_dims()[0];
  const std::size_t n_yb = spec.ch_yz_b.output_dims()[0];
  const std::size_t n_zb = spec.ch_yz_b.output_dims()[1];
  const std::size_t n_uf = spec.p_uf.size();
  const std::size_t n_vf = spec.ch_vf_given_uf.output_dims()[0];
  const std::size_t n_xf = spec.ch_xf_given_vf.output_dims()[0];
  const std::size_t n_yf = spec.ch_yz_f.output_dims()[0];
  const std::size_t n_zf = spec.ch_yz_f.output_dims()[1];

  std::vector<std::size_t> dims = {n_vb, n_xb, n_yb, n_zb,
                                   n_uf, n_vf, n_xf, n_yf, n_zf};
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (total > info_theory::kMaxJointEntries / d) {
      throw std::invalid_argument(
          "build_joint: alphabet sizes overflow the dense-table cap");
    }
    total *= d;
  }

  std::vector<double> probs(total);
  std::size_t flat = 0;
  for (std::size_t vb = 0; vb < n_vb; ++vb) {
    const double p_vb = spec.p_vb[vb];
    for (std::size_t xb = 0; xb < n_xb; ++xb) {
      const double p_xb = p_vb * spec.ch_xb_given_vb.prob(vb, xb);
      for (std::size_t yb = 0; yb < n_yb; ++yb) {
        for (std::size_t zb = 0; zb < n_zb; ++zb) {
          const double p_b = p_xb * spec.ch_yz_b.prob(xb, yb * n_zb + zb);
          for (std::size_t uf = 0; uf < n_uf; ++uf) {
            const double p_uf = p_b * spec.p_uf[uf];
            for (std::size_t vf = 0; vf < n_vf; ++vf) {
              const double p_vf = p_uf * spec.ch_vf_given_uf.prob(uf, vf);
              for (std::size_t xf = 0; xf < n_xf; ++xf) {
                const double p_xf = p_vf * spec.ch_xf_given_vf.prob(vf, xf);
                for (std::size_t yf = 0; yf < n_yf; ++yf) {
                  for (std::size_t zf = 0; zf < n_zf; ++zf) {
                    probs[flat++] =
                        p_xf * spec.ch_yz_f.prob(xf, yf * n_zf + zf);
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return JointPmf(std::move(dims), std::move(probs));
}

RegionResult achievable_rate(const FeedbackSystemSpec& spec) {
  const JointPmf j = build_joint(spec);

  const double i_vf_yf = mutual_information(j, {kVf}, {kYf});
  const double i_vf_yf_uf = conditional_mutual_information(j, {kVf}, {kYf}, {kUf});
  const double i_vf_zf_uf = conditional_mutual_information(j, {kVf}, {kZf}, {kUf});
  const double i_vb_yb = mutual_information(j, {kVb}, {kYb});
  const double i_vb_zb = mutual_information(j, {kVb}, {kZb});
  const double i_uf_yf = mutual_information(j, {kUf}, {kYf});
  const double i_uf_zf = mutual_information(j, {kUf}, {kZf});

  RegionResult r;
  r.term_direct = i_vf_yf;
  r.term_secrecy_sum = i_vf_yf_uf - i_vf_zf_uf + i_vb_yb - i_vb_zb;
  r.rate = std::max(0.0, std::min(r.term_direct, r.term_secrecy_sum));
  r.constraint_ok = i_uf_zf >= i_uf_yf - 1e-12;
  return r;
}

double no_auxiliary_rate(const Pmf& p_xf, const Channel& ch_yz_f,
                       const Pmf& p_xb, const Channel& ch_yz_b) {
  auto pair_terms = [](const Pmf& p_x, const Channel& ch) {
    if (ch.output_dims().size() != 2) {
      throw std::invalid_argument(
          "no_auxiliary_rate: broadcast channel must have two output variables");
    }
    if (ch.input_size() != p_x.size()) {
      throw std::invalid_argument(
          "no_auxiliary_rate: input pmf does not match channel alphabet");
    }
    const std::size_t ny = ch.output_dims()[0];
    const std::size_t nz = ch.output_dims()[1];
    std::vector<double> probs;
    probs.reserve(p_x.size() * ny * nz);
    for (std::size_t x = 0; x < p_x.size(); ++x) {
      for (std::size_t o = 0; o < ny * nz; ++o) {
        probs.push_back(p_x[x] * ch.prob(x, o));
      }
    }
    const JointPmf j({p_x.size(), ny, nz}, std::move(probs));
    return std::pair<double, double>{mutual_information(j, {0}, {1}),
                                     mutual_information(j, {0}, {2})};
  };

  const auto [i_xf_yf, i_xf_zf] = pair_terms(p_xf, ch_yz_f);
  const auto [i_xb_yb, i_xb_zb] = pair_terms(p_xb, ch_yz_b);
  const double secrecy_sum = i_xf_yf - i_xf_zf + i_xb_yb - i_xb_zb;
  return std::max(0.0, std::min(i_xf_yf, secrecy_sum));
}

double key_rate(const Pmf& p_vb, const Channel& ch_xb_given_vb,
                const Channel& ch_yz_b, double i_xf_zf) {
  if (!(i_xf_zf >= 0.0)) {
    throw std::domain_error("key_rate: i_xf_zf must be >= 0");
  }
  if (ch_xb_given_vb.output_dims().size() != 1 ||
      ch_yz_b.output_dims().size() != 2 ||
      ch_xb_given_vb.input_size() != p_vb.size() ||
      ch_yz_b.input_size() != ch_xb_given_vb.output_dims()[0]) {
    throw std::invalid_argument("key_rate: inconsistent backward-chain alphabets");
  }
  const std::size_t n_vb = p_vb.size();
  const std::size_t n_xb = ch_xb_given_vb.output_dims()[0];
  const std::size_t n_yb = ch_yz_b.output_dims()[0];
  const std::size_t n_zb = ch_yz_b.output_dims()[1];
  std::vector<double> probs;
  probs.reserve(n_vb * n_xb * n_yb * n_zb);
  for (std::size_t vb = 0; vb < n_vb; ++vb) {
    for (std::size_t xb = 0; xb < n_xb; ++xb) {
      const double p = p_vb[vb] * ch_xb_given_vb.prob(vb, xb);
      for (std::size_t o = 0; o < n_yb * n_zb; ++o) {
        probs.push_back(p * ch_yz_b.prob(xb, o));
      }
    }
  }
  const JointPmf j({n_vb, n_xb, n_yb, n_zb}, std::move(probs));
  const double advantage =
      mutual_information(j, {0}, {2}) - mutual_information(j, {0}, {3});
  return std::min(std::max(advantage, 0.0), i_xf_zf);
}

namespace {

using nlohmann::json;

Pmf parse_pmf(const json& doc, const std::string& path) {
  if (!doc.is_array()) {
    throw std::invalid_argument(path + ": expected an array of probabilities");
  }
  std::vector<double> probs;
  probs.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number()) {
      throw std::invalid_argument(path + ": non-numeric probability entry");
    }
    probs.push_back(v.get<double>());
  }
  try {
    return Pmf(std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Channel parse_channel(const json& doc, const std::string& path) {
  if (!doc.is_object() || !doc.contains("output_dims") || !doc.contains("rows")) {
    throw std::invalid_argument(
        path + ": expected an object with \"output_dims\" and \"rows\"");
  }
  std::vector<std::size_t> output_dims;
  for (const auto& v : doc.at("output_dims")) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
      throw std::invalid_argument(path + ".output_dims: expected positive integers");
    }
    output_dims.push_back(v.get<std::size_t>());
  }
  const auto& rows_doc = doc.at("rows");
  if (!rows_doc.is_array() || rows_doc.empty()) {
    throw std::invalid_argument(path + ".rows: expected a non-empty array of rows");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(rows_doc.size());
  for (std::size_t i = 0; i < rows_doc.size(); ++i) {
    const auto& row_doc = rows_doc[i];
    if (!row_doc.is_array()) {
      throw std::invalid_argument(path + ".rows[" + std::to_string(i) +
                                  "]: expected an array");
    }
    std::vector<double> row;
    row.reserve(row_doc.size());
    for (const auto& v : row_doc) {
      if (!v.is_number()) {
        throw std::invalid_argument(path + ".rows[" + std::to_string(i) +
                                    "]: non-numeric probability entry");
      }
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return Channel(std::move(output_dims), std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

const json& field(const json& doc, const char* name) {
  if (!doc.contains(name)) {
    throw std::invalid_argument(std::string(name) + ": missing required field");
  }
  return doc.at(name);
}

}  // namespace

FeedbackSystemSpec load_spec_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("spec JSON: top level must be an object");
  }
  FeedbackSystemSpec spec{
      parse_pmf(field(doc, "p_vb"), "p_vb"),
      parse_channel(field(doc, "ch_xb_given_vb"), "ch_xb_given_vb"),
      parse_channel(field(doc, "ch_yz_b"), "ch_yz_b"),
      parse_pmf(field(doc, "p_uf"), "p_uf"),
      parse_channel(field(doc, "ch_vf_given_uf"), "ch_vf_given_uf"),
      parse_channel(field(doc, "ch_xf_given_vf"), "ch_xf_given_vf"),
      parse_channel(field(doc, "ch_yz_f"), "ch_yz_f"),
  };
  spec.validate();
  return spec;
}

FeedbackSystemSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open spec file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_spec_json(buf.str());
}

}  // namespace secrecy::region_eval

// Command-line front end for the secrecy-rate computations. Scalar results
// are JSON records (with the resolved configuration echoed); surfaces and
// transcripts are CSV. Exit codes: 0 success, 1 usage/validation error,
// 2 runtime/degeneracy error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "secrecy/bsc_feedback.hpp"
#include "secrecy/gaussian_sk.hpp"
#include "secrecy/info_theory.hpp"
#include "secrecy/region_eval.hpp"
#include "secrecy/rng.hpp"

namespace {

using nlohmann::json;
namespace bsc = secrecy::bsc_feedback;
namespace gsk = secrecy::gaussian_sk;
namespace reg = secrecy::region_eval;

std::string fmt_sig(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_text(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    throw std::invalid_argument("cannot open output path: " + out_path);
  }
  f << payload;
  f.flush();
  if (!f) {
    throw std::invalid_argument("failed writing output path: " + out_path);
  }
}

void emit_json(const json& doc, const std::string& out_path) {
  write_text(doc.dump(2) + "\n", out_path);
}

std::vector<double> linspace(double lo, double hi, unsigned steps) {
  if (steps == 0) throw std::invalid_argument("grid steps must be >= 1");
  if (steps == 1) return {lo};
  std::vector<double> v(steps);
  for (unsigned i = 0; i < steps; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
  return v;
}

void check_format(const std::string& format, const std::string& expected) {
  if (format != expected) {
    throw std::invalid_argument("this subcommand only supports --format " +
                                expected);
  }
}

struct SurfaceOpts {
  double eps_min = 0.0, eps_max = 0.5;
  double del_min = 0.0, del_max = 0.5;
  unsigned eps_steps = 101, del_steps = 101;
  bool symmetric = true;
  double eps_b = 0.0, del_b = 0.0;
  std::string out;
  std::string format = "csv";
};

int cmd_bsc_surface(const SurfaceOpts& o) {
  check_format(o.format, "csv");
  const auto grid_eps = linspace(o.eps_min, o.eps_max, o.eps_steps);
  const auto grid_del = linspace(o.del_min, o.del_max, o.del_steps);
  const auto surface =
      bsc::rate_surface(grid_eps, grid_del, o.symmetric, o.eps_b, o.del_b);

  std::string csv = "eps,delta,total_rate,alpha_star,improvement\n";
  for (const auto& p : surface) {
    csv += fmt_sig(p.eps, 9) + "," + fmt_sig(p.del, 9) + "," +
           fmt_sig(p.total_rate, 9) + "," + fmt_sig(p.alpha_star, 9) + "," +
           fmt_sig(p.improvement, 9) + "\n";
  }
  write_text(csv, o.out);

  json echo = {{"subcommand", "bsc-surface"},
               {"eps_min", o.eps_min},
               {"eps_max", o.eps_max},
               {"eps_steps", o.eps_steps},
               {"del_min", o.del_min},
               {"del_max", o.del_max},
               {"del_steps", o.del_steps},
               {"symmetric", o.symmetric},
               {"rows", surface.size()},
               {"out", o.out},
               {"format", o.format}};
  if (!o.symmetric) {
    echo["eps_b"] = o.eps_b;
    echo["del_b"] = o.del_b;
  }
  std::cout << echo.dump(2) << "\n";
  return 0;
}

struct RatesOpts {
  double eps_f = 0, del_f = 0, eps_b = 0, del_b = 0;
  double alpha = -1.0;  // < 0 means optimize
  bool alpha_given = false;
  std::string out;
  std::string format = "json";
};

int cmd_bsc_rates(const RatesOpts& o) {
  check_format(o.format, "json");
  const bsc::BscSystem sys(o.eps_f, o.del_f, o.eps_b, o.del_b);
  const bsc::RateBreakdown b =
      o.alpha_given ? bsc::rate_breakdown(sys, o.alpha) : bsc::optimize_alpha(sys);
  const double no_fb = bsc::no_feedback_secrecy_capacity(o.eps_f, o.del_f);

  json doc = {
      {"config",
       {{"subcommand", "bsc-rates"},
        {"eps_f", o.eps_f},
        {"del_f", o.del_f},
        {"eps_b", o.eps_b},
        {"del_b", o.del_b},
        {"alpha", o.alpha_given ? json(o.alpha) : json(nullptr)}}},
      {"result",
       {{"r1", b.r1},
        {"r2", b.r2},
        {"r3", b.r3},
        {"alpha", b.alpha},
        {"total", b.total},
        {"no_feedback_secrecy_capacity", no_fb},
        {"improvement", b.total - no_fb}}}};
  emit_json(doc, o.out);
  return 0;
}

struct MaurerOpts {
  double eps_b = 0, del_b = 0;
  std::uint64_t n = 1000000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

int cmd_maurer_sim(const MaurerOpts& o) {
  check_format(o.format, "json");
  const bsc::BscSystem sys(0.0, 0.0, o.eps_b, o.del_b);
  const bsc::MaurerResult r = bsc::simulate_maurer(sys, o.n, o.seed);
  json doc = {{"eps_b", r.eps_b},
              {"del_b", r.del_b},
              {"n", r.n},
              {"seed", r.seed},
              {"bob_ber", r.bob_ber},
              {"eve_ber", r.eve_ber},
              {"expected_bob", r.expected_bob},
              {"expected_eve", r.expected_eve},
              {"rng", secrecy::rng::kAlgorithmId}};
  emit_json(doc, o.out);
  return 0;
}

struct RegionOpts {
  std::string spec_path;
  std::string out;
  std::string format = "json";
};

int cmd_region_eval(const RegionOpts& o) {
  check_format(o.format, "json");
  std::ifstream in(o.spec_path);
  if (!in) {
    throw std::invalid_argument("cannot open spec file: " + o.spec_path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const reg::FeedbackSystemSpec spec = reg::load_spec_json(text);
  const reg::RegionResult r = reg::achievable_rate(spec);

  json doc = {{"config",
               {{"subcommand", "region-eval"},
                {"spec_path", o.spec_path},
                {"spec", json::parse(text)}}},
              {"result",
               {{"rate", r.rate},
                {"term_direct", r.term_direct},
                {"term_secrecy_sum", r.term_secrecy_sum},
                {"constraint_ok", r.constraint_ok}}}};
  emit_json(doc, o.out);
  return 0;
}

struct SkOpts {
  double power = 1, var_n = 1, var_m = 1, var_s = 1;
  double rho1 = 0, rho2 = 0, rho3 = 0;
  std::size_t n = 8;
  double rate_fraction = 0.5;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t message = 1;
  std::string transcript_out;
  std::string out;
  std::string format = "json";
};

int cmd_sk_simulate(const SkOpts& o) {
  check_format(o.format, "json");
  if (!(o.rate_fraction > 0.0 && o.rate_fraction <= 1.0)) {
    throw std::invalid_argument("--rate-fraction must lie in (0, 1]");
  }
  const gsk::GaussianWiretapParams params{o.power, o.var_n, o.var_m, o.var_s,
                                          o.rho1,  o.rho2,  o.rho3};
  const double c_f = gsk::capacity_forward(params);
  const double rate = o.rate_fraction * c_f;
  const double exponent = static_cast<double>(o.n) * rate;
  if (exponent > 40.0) {
    throw std::invalid_argument(
        "n * R = " + std::to_string(exponent) +
        " bits; message set larger than 2^40 is not supported");
  }
  auto num_messages = static_cast<std::uint64_t>(std::ceil(std::exp2(exponent)));
  if (num_messages < 2) num_messages = 2;

  const gsk::SkConfig config{params, o.n, num_messages, o.seed};
  const gsk::MonteCarloResult mc = gsk::monte_carlo_sk(config, o.trials);
  const gsk::SecrecySummary sec = gsk::secrecy_summary(params, o.n, rate);

  if (!o.transcript_out.empty()) {
    const gsk::SkTranscript t = gsk::run_sk(config, o.message);
    std::string csv = "i,x,y,z,ybar,theta_hat\n";
    for (std::size_t k = 0; k < config.n; ++k) {
      csv += std::to_string(k + 1) + "," + fmt_sig(t.x[k], 12) + "," +
             fmt_sig(t.y[k], 12) + "," + fmt_sig(t.z[k], 12) + "," +
             fmt_sig(t.ybar[k], 12) + "," + fmt_sig(t.theta_hat[k], 12) + "\n";
    }
    write_text(csv, o.transcript_out);
  }

  json doc = {
      {"config",
       {{"subcommand", "sk-simulate"},
        {"power", o.power},
        {"var_n", o.var_n},
        {"var_m", o.var_m},
        {"var_s", o.var_s},
        {"rho1", o.rho1},
        {"rho2", o.rho2},
        {"rho3", o.rho3},
        {"n", o.n},
        {"rate_fraction", o.rate_fraction},
        {"rate", rate},
        {"num_messages", num_messages},
        {"trials", o.trials},
        {"seed", o.seed},
        {"rng", secrecy::rng::kAlgorithmId},
        {"cov_factorization", gsk::kCovFactorizationId}}},
      {"monte_carlo",
       {{"trials", mc.trials},
        {"errors", mc.errors},
        {"error_rate", mc.error_rate},
        {"error_variance", mc.error_variance},
        {"ci_halfwidth_error_rate", mc.ci_halfwidth_error_rate},
        {"ci_halfwidth_error_variance", mc.ci_halfwidth_error_variance},
        {"theory_error_variance", gsk::error_variance_theory(config)},
        {"empirical_symbol_power", mc.empirical_symbol_power}}},
      {"secrecy",
       {{"c_f", sec.c_f},
        {"c_s_no_feedback", sec.c_s_no_feedback},
        {"c_sf", sec.c_sf},
        {"per_symbol_leakage_bound", sec.per_symbol_leakage_bound},
        {"equivocation_rate_lower_bound", sec.equivocation_rate_lower_bound},
        {"rate", sec.rate},
        {"n", sec.n}}}};
  emit_json(doc, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secrecy-lab: secrecy rates for wiretap channels with feedback"};
  app.require_subcommand(1);

  SurfaceOpts surf;
  auto* s1 = app.add_subcommand(
      "bsc-surface", "optimized-rate surface over a grid of (eps, delta)");
  s1->add_option("--eps-min", surf.eps_min)->check(CLI::Range(0.0, 0.5));
  s1->add_option("--eps-max", surf.eps_max)->check(CLI::Range(0.0, 0.5));
  s1->add_option("--eps-steps", surf.eps_steps);
  s1->add_option("--del-min", surf.del_min)->check(CLI::Range(0.0, 0.5));
  s1->add_option("--del-max", surf.del_max)->check(CLI::Range(0.0, 0.5));
  s1->add_option("--del-steps", surf.del_steps);
  s1->add_flag("--symmetric,!--asymmetric", surf.symmetric,
               "tie the backward channel to each grid point (default) or hold "
               "it fixed at --eps-b/--del-b");
  s1->add_option("--eps-b", surf.eps_b, "fixed backward eps (asymmetric mode)");
  s1->add_option("--del-b", surf.del_b, "fixed backward delta (asymmetric mode)");
  s1->add_option("--out", surf.out, "CSV output path")->required();
  s1->add_option("--format", surf.format)->check(CLI::IsMember({"csv", "json"}));

  RatesOpts rates;
  auto* s2 = app.add_subcommand("bsc-rates",
                                "rate breakdown for one crossover quadruple");
  s2->add_option("--eps-f", rates.eps_f)->required();
  s2->add_option("--del-f", rates.del_f)->required();
  s2->add_option("--eps-b", rates.eps_b)->required();
  s2->add_option("--del-b", rates.del_b)->required();
  auto* alpha_opt = s2->add_option(
      "--alpha", rates.alpha, "fixed time share; omit to optimize over [0,1]");
  s2->add_option("--out", rates.out);
  s2->add_option("--format", rates.format)->check(CLI::IsMember({"csv", "json"}));

  MaurerOpts maurer;
  auto* s3 = app.add_subcommand(
      "maurer-sim", "bit-level Monte Carlo of the modulo-add feedback step");
  s3->add_option("--eps-b", maurer.eps_b)->required();
  s3->add_option("--del-b", maurer.del_b)->required();
  s3->add_option("--n", maurer.n, "number of simulated bits");
  s3->add_option("--seed", maurer.seed);
  s3->add_option("--out", maurer.out);
  s3->add_option("--format", maurer.format)->check(CLI::IsMember({"csv", "json"}));

  RegionOpts region;
  auto* s4 = app.add_subcommand(
      "region-eval", "achievable-rate evaluation of a JSON system spec");
  s4->add_option("--spec", region.spec_path, "spec JSON file")->required();
  s4->add_option("--out", region.out);
  s4->add_option("--format", region.format)->check(CLI::IsMember({"csv", "json"}));

  SkOpts sk;
  auto* s5 = app.add_subcommand(
      "sk-simulate", "iterative feedback coding over the Gaussian wiretap channel");
  s5->add_option("--power", sk.power)->required();
  s5->add_option("--var-n", sk.var_n)->required();
  s5->add_option("--var-m", sk.var_m)->required();
  s5->add_option("--var-s", sk.var_s)->required();
  s5->add_option("--rho1", sk.rho1);
  s5->add_option("--rho2", sk.rho2);
  s5->add_option("--rho3", sk.rho3);
  s5->add_option("--n", sk.n, "iteration count")->required();
  s5->add_option("--rate-fraction", sk.rate_fraction,
                 "R as a fraction of the forward capacity, in (0, 1]");
  s5->add_option("--trials", sk.trials);
  s5->add_option("--seed", sk.seed);
  s5->add_option("--message", sk.message, "message index for --transcript-out");
  s5->add_option("--transcript-out", sk.transcript_out,
                 "also dump one run's transcript as CSV");
  s5->add_option("--out", sk.out);
  s5->add_option("--format", sk.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  rates.alpha_given = alpha_opt->count() > 0;

  try {
    if (s1->parsed()) return cmd_bsc_surface(surf);
    if (s2->parsed()) return cmd_bsc_rates(rates);
    if (s3->parsed()) return cmd_maurer_sim(maurer);
    if (s4->parsed()) return cmd_region_eval(region);
    if (s5->parsed()) return cmd_sk_simulate(sk);
  } catch (const gsk::DegenerateParamsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

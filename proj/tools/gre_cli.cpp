// Command-line workbench over the C API.
//
// Exit codes: 0 success, 1 property violation, 2 usage or input error,
// 3 I/O or internal failure.
#include <cstdio>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gre/gre.h"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CliError {
  int code;
};

void check(gre_status s) {
  if (s == GRE_OK) return;
  std::fprintf(stderr, "error: %s\n", gre_last_error());
  throw CliError{s == GRE_IO_ERROR || s == GRE_INTERNAL_ERROR ? kExitRuntime : kExitUsage};
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { gre_string_free(p); }
};

std::string read_stdin() {
  return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

gre_encoding* encoding_from_stdin() {
  const std::string text = read_stdin();
  gre_encoding* e = nullptr;
  check(gre_encoding_from_json(text.c_str(), &e));
  return e;
}

struct EncodeArgs {
  std::string scheme = "gre";
  double x = 0.0;
  std::size_t bits = 32;
  std::optional<double> alpha, nu1, nu2, beta, tau, noise_amp;
  unsigned L = 3;
  std::string resolver = "zero";
  std::uint64_t seed = 0;
  std::string trajectory;
};

int run_encode(const EncodeArgs& a) {
  gre_encode_params p;
  gre_encode_params_init(&p);
  p.scheme = a.scheme.c_str();
  p.n_bits = a.bits;
  if (a.alpha) p.alpha = *a.alpha;
  if (a.nu1 || a.nu2) {
    p.has_nu = 1;
    p.nu1 = a.nu1.value_or(a.nu2.value_or(1.0));
    p.nu2 = a.nu2.value_or(p.nu1);
  }
  if (a.tau) {
    p.has_tau = 1;
    p.tau = *a.tau;
  }
  if (a.beta) p.beta = *a.beta;
  if (a.noise_amp) p.noise_amp = *a.noise_amp;
  p.L = a.L;
  p.seed = a.seed;
  p.resolver = a.resolver == "one"      ? GRE_RESOLVER_ONE
               : a.resolver == "random" ? GRE_RESOLVER_RANDOM
                                        : GRE_RESOLVER_ZERO;
  gre_encoding* e = nullptr;
  check(gre_encode(&p, a.x, &e));
  LibString json;
  const gre_status s = gre_encoding_to_json(e, &json.p);
  if (s == GRE_OK && !a.trajectory.empty()) {
    LibString csv;
    check(gre_encoding_trajectory_csv(e, &csv.p));
    FILE* f = std::fopen(a.trajectory.c_str(), "w");
    if (!f) {
      gre_encoding_free(e);
      std::fprintf(stderr, "error: cannot write '%s'\n", a.trajectory.c_str());
      throw CliError{kExitRuntime};
    }
    std::fputs(csv.p, f);
    std::fclose(f);
  }
  gre_encoding_free(e);
  check(s);
  std::printf("%s\n", json.p);
  return 0;
}

int run_decode(std::optional<double> beta, bool bias_correct, bool as_json) {
  gre_encoding* e = encoding_from_stdin();
  double value = 0.0;
  int heuristic = 0;
  const gre_status s = gre_decode(e, beta.value_or(0.0), bias_correct ? 1 : 0, &value, &heuristic);
  const std::size_t n = gre_encoding_n_bits(e);
  gre_encoding_free(e);
  check(s);
  if (as_json) {
    std::printf("{\"value\": %.17g, \"n_bits\": %zu, \"bias_corrected\": %s, \"heuristic\": %s}\n",
                value, n, bias_correct ? "true" : "false", heuristic ? "true" : "false");
  } else {
    std::printf("%.17g\n", value);
  }
  if (heuristic) std::fprintf(stderr, "warning: bias correction is heuristic for this stream\n");
  return 0;
}

int run_requantize(int B) {
  gre_encoding* e = encoding_from_stdin();
  LibString out;
  const gre_status s = gre_requantize(e, B, &out.p, nullptr);
  gre_encoding_free(e);
  check(s);
  std::printf("%s\n", out.p);
  return 0;
}

int run_region(double mu, std::optional<double> alpha) {
  LibString out;
  check(gre_region_json(mu, alpha.has_value(), alpha.value_or(0.0), &out.p));
  std::printf("%s\n", out.p);
  return 0;
}

int run_invariance(double mu, double alpha, double nu1, double nu2, std::size_t grid) {
  LibString out;
  std::size_t violations = 0;
  check(gre_invariance_check(mu, alpha, nu1, nu2, grid, &violations, &out.p));
  std::printf("%s\n", out.p);
  return violations ? kExitViolation : 0;
}

int run_experiment(const gre_experiment_params& p, const std::string& out_path) {
  gre_table* t = nullptr;
  check(gre_experiment_run(&p, &t));
  gre_status s;
  if (out_path.empty()) {
    LibString csv;
    s = gre_table_to_csv(t, &csv.p);
    if (s == GRE_OK) std::fputs(csv.p, stdout);
  } else {
    s = gre_table_write(t, out_path.c_str());
  }
  gre_table_free(t);
  check(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Golden ratio encoder workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gre_version()));

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode x and print the BitStream JSON");
  encode->add_option("--scheme", enc.scheme)->check(CLI::IsMember({"gre", "pcm", "beta", "sd1", "poly"}));
  encode->add_option("--x", enc.x)->required();
  encode->add_option("--bits", enc.bits)->required()->check(CLI::PositiveNumber);
  encode->add_option("--alpha", enc.alpha);
  encode->add_option("--nu1", enc.nu1);
  encode->add_option("--nu2", enc.nu2);
  encode->add_option("--beta", enc.beta);
  encode->add_option("--tau", enc.tau);
  encode->add_option("--L", enc.L)->check(CLI::Range(2u, 64u));
  encode->add_option("--resolver", enc.resolver)->check(CLI::IsMember({"zero", "one", "random"}));
  encode->add_option("--seed", enc.seed);
  encode->add_option("--noise-amp", enc.noise_amp);
  encode->add_option("--trajectory", enc.trajectory, "Also write the state trajectory CSV here");

  std::optional<double> dec_beta;
  bool bias_correct = false;
  bool dec_json = false;
  auto* decode = app.add_subcommand("decode", "Decode a BitStream JSON read from stdin");
  decode->add_option("--beta", dec_beta, "Base (default: the stream's own scheme base)");
  decode->add_flag("--bias-correct", bias_correct);
  decode->add_flag("--json", dec_json);

  int B = 64;
  auto* requant = app.add_subcommand("requantize", "Integer requantization of a stdin BitStream to base 2");
  requant->add_option("--B", B)->required();

  double mu = 0.0;
  std::optional<double> reg_alpha;
  auto* region = app.add_subcommand("region", "Admissible parameter region G(mu)");
  region->add_option("--mu", mu)->required();
  region->add_option("--alpha", reg_alpha);

  double inv_mu = 0.0, inv_alpha = 1.0, inv_nu1 = 1.0, inv_nu2 = 1.0;
  std::size_t grid = 1000;
  auto* inv = app.add_subcommand("invariance-check", "Grid check of R(mu) invariance");
  inv->add_option("--mu", inv_mu)->required();
  inv->add_option("--alpha", inv_alpha)->required();
  inv->add_option("--nu1", inv_nu1)->required();
  inv->add_option("--nu2", inv_nu2)->required();
  inv->add_option("--grid", grid);

  gre_experiment_params ex;
  gre_experiment_params_init(&ex);
  std::string ex_name, out_path, alpha_grid = ex.alpha_grid, nu_grid = ex.nu_grid;
  std::size_t ex_n = 0;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
  experiment->add_option("name", ex_name)->required()->check(
      CLI::IsMember({"escape", "rmse", "variance", "bias", "sweep"}));
  experiment->add_option("--trials", ex.trials);
  experiment->add_option("--seed", ex.seed);
  experiment->add_option("--out", out_path, "Output path (.csv or .json); CSV to stdout if omitted");
  experiment->add_option("--workers", ex.workers);
  experiment->add_option("--delta", ex.delta);
  experiment->add_option("--nmax", ex.n_max);
  experiment->add_option("--alpha", ex.alpha);
  experiment->add_option("--nu1", ex.nu1);
  experiment->add_option("--nu2", ex.nu2);
  experiment->add_option("--noise-amp", ex.noise_amp);
  experiment->add_option("--sigma", ex.sigma);
  experiment->add_option("--N", ex_n);
  experiment->add_option("--mu", ex.mu);
  experiment->add_option("--alpha-grid", alpha_grid, "Comma-separated gains");
  experiment->add_option("--nu-grid", nu_grid, "Comma-separated lo:hi bands");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*encode) return run_encode(enc);
    if (*decode) return run_decode(dec_beta, bias_correct, dec_json);
    if (*requant) return run_requantize(B);
    if (*region) return run_region(mu, reg_alpha);
    if (*inv) return run_invariance(inv_mu, inv_alpha, inv_nu1, inv_nu2, grid);
    ex.name = ex_name.c_str();
    ex.n_bits = ex_n;
    ex.alpha_grid = alpha_grid.c_str();
    ex.nu_grid = nu_grid.c_str();
    return run_experiment(ex, out_path);
  } catch (const CliError& e) {
    return e.code;
  }
}

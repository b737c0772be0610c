#include "gre/gre.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/constants.hpp"
#include "core/decoders.hpp"
#include "core/encoder_run.hpp"
#include "core/invariant_set.hpp"
#include "core/serialization.hpp"
#include "core/workbench.hpp"

struct gre_encoding {
  gre::Encoding enc;
};

struct gre_table {
  gre::ExperimentTable table;
};

namespace {

thread_local std::string g_last_error;

gre_status fail(gre_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Maps C++ exceptions onto status codes at the ABI boundary.
template <class Fn>
gre_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GRE_OK;
  } catch (const gre::ParseError& e) {
    return fail(GRE_PARSE_ERROR, e.what());
  } catch (const std::out_of_range& e) {
    return fail(GRE_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GRE_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GRE_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(GRE_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(GRE_INTERNAL_ERROR, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

gre::Resolver make_resolver(gre_resolver r, std::uint64_t seed) {
  switch (r) {
    case GRE_RESOLVER_ZERO:
      return gre::AlwaysZero{};
    case GRE_RESOLVER_ONE:
      return gre::AlwaysOne{};
    case GRE_RESOLVER_RANDOM:
      return gre::RandomUniformThreshold{seed};
  }
  throw std::invalid_argument("unknown resolver");
}

std::vector<double> parse_list(const char* text) {
  std::vector<double> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::pair<double, double>> parse_bands(const char* text) {
  std::vector<std::pair<double, double>> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("band '" + item + "' is not lo:hi");
    const auto lo = parse_list(item.substr(0, colon).c_str());
    const auto hi = parse_list(item.substr(colon + 1).c_str());
    if (lo.size() != 1 || hi.size() != 1) throw std::invalid_argument("band '" + item + "' is not lo:hi");
    out.emplace_back(lo[0], hi[0]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* gre_last_error(void) { return g_last_error.c_str(); }

const char* gre_version(void) { return "0.1.0"; }

void gre_string_free(char* s) { std::free(s); }

void gre_encode_params_init(gre_encode_params* p) {
  if (!p) return;
  *p = gre_encode_params{};
  p->scheme = "gre";
  p->n_bits = 32;
  p->alpha = 1.0;
  p->nu1 = 1.0;
  p->nu2 = 1.0;
  p->beta = 2.0;
  p->tau = 1.0;
  p->L = 3;
  p->resolver = GRE_RESOLVER_ZERO;
}

gre_status gre_encode(const gre_encode_params* p, double x, gre_encoding** out) {
  return guarded([&] {
    require(p && out, "gre_encode: null argument");
    require(p->scheme != nullptr, "gre_encode: scheme not set");
    *out = nullptr;
    const auto scheme = gre::parse_scheme(p->scheme);
    require(scheme.has_value() && *scheme != gre::Scheme::SigmaDeltaK,
            "scheme must be one of gre, pcm, beta, sd1, poly");
    gre::EncoderRun run;
    run.scheme = *scheme;
    run.n_bits = p->n_bits;
    run.resolver = make_resolver(p->resolver, p->seed);
    switch (run.scheme) {
      case gre::Scheme::Gre:
        run.params = {{"alpha", p->alpha}, {"nu1", p->nu1}, {"nu2", p->nu2}};
        if (p->has_tau && !p->has_nu) {
          run.params.set("nu1", p->tau);
          run.params.set("nu2", p->tau);
        }
        run.noise = gre::NoiseModel::uniform(p->noise_amp, p->seed);
        break;
      case gre::Scheme::Pcm:
        run.params = {{"tau", p->tau}};
        break;
      case gre::Scheme::Beta:
        run.params = {{"beta", p->beta}, {"tau", p->tau}};
        if (p->has_nu) {
          run.params.set("nu1", p->nu1);
          run.params.set("nu2", p->nu2);
        }
        break;
      case gre::Scheme::Polynacci:
        run.params = {{"L", static_cast<double>(p->L)}};
        if (p->has_nu || p->has_tau) {
          // Telescoping weights with a caller-chosen threshold band.
          gre::PolynacciRule rule = gre::default_rule(p->L);
          const double nu1 = p->has_nu ? p->nu1 : p->tau;
          const double nu2 = p->has_nu ? p->nu2 : p->tau;
          rule.quantizer = gre::QuantizerSpec{1.0, nu1, nu2, run.resolver};
          run.poly_rule = rule;
        }
        break;
      default:
        break;
    }
    *out = new gre_encoding{gre::run_encoder(run, x)};
  });
}

gre_status gre_encoding_from_json(const char* json, gre_encoding** out) {
  return guarded([&] {
    require(json && out, "gre_encoding_from_json: null argument");
    *out = nullptr;
    gre::Encoding e;
    e.bits = gre::bitstream_from_string(json);
    *out = new gre_encoding{std::move(e)};
  });
}

void gre_encoding_free(gre_encoding* e) { delete e; }

size_t gre_encoding_n_bits(const gre_encoding* e) { return e ? e->enc.bits.size() : 0; }

int gre_encoding_bit(const gre_encoding* e, size_t n) {
  if (!e || n >= e->enc.bits.size()) return -1;
  return e->enc.bits[n];
}

size_t gre_encoding_state_count(const gre_encoding* e) {
  return e ? e->enc.trajectory.scalars().size() : 0;
}

double gre_encoding_state(const gre_encoding* e, size_t n) {
  if (!e || n >= e->enc.trajectory.scalars().size()) return NAN;
  return e->enc.trajectory.scalars()[n];
}

int gre_encoding_escaped(const gre_encoding* e) { return e && e->enc.trajectory.escaped(); }

gre_status gre_encoding_to_json(const gre_encoding* e, char** out) {
  return guarded([&] {
    require(e && out, "gre_encoding_to_json: null argument");
    *out = dup_string(gre::to_json(e->enc.bits).dump());
  });
}

gre_status gre_encoding_trajectory_csv(const gre_encoding* e, char** out) {
  return guarded([&] {
    require(e && out, "gre_encoding_trajectory_csv: null argument");
    *out = dup_string(gre::trajectory_csv(e->enc.trajectory));
  });
}

gre_status gre_decode(const gre_encoding* e, double beta, int bias_correct, double* value,
                      int* heuristic) {
  return guarded([&] {
    require(e && value, "gre_decode: null argument");
    const gre::BitStream& bits = e->enc.bits;
    if (heuristic) *heuristic = 0;
    if (bias_correct) {
      require(beta <= 0.0 || std::abs(beta - gre::kPhi) < 1e-12,
              "bias correction applies to golden-ratio decoding only");
      const gre::DecodeResult r = gre::decode_bias_corrected(bits);
      if (heuristic) *heuristic = r.heuristic;
      *value = r.value;
      return;
    }
    if (beta > 0.0) {
      *value = gre::decode_partial_sum(bits, beta);
      return;
    }
    switch (bits.scheme) {
      case gre::Scheme::Gre:
        *value = gre::decode_partial_sum(bits, gre::kPhi);
        return;
      case gre::Scheme::Pcm:
        *value = gre::decode_partial_sum(bits, 2.0);
        return;
      case gre::Scheme::Beta:
      case gre::Scheme::Polynacci:
        *value = gre::decode_partial_sum(bits, bits.params.get("beta"));
        return;
      case gre::Scheme::SigmaDelta1:
        *value = gre::sd1_decode(bits);
        return;
      case gre::Scheme::SigmaDeltaK:
        break;
    }
    throw std::invalid_argument("no default base for this scheme; pass beta");
  });
}

gre_status gre_requantize(const gre_encoding* e, int B, char** base2, double* value) {
  return guarded([&] {
    require(e != nullptr, "gre_requantize: null encoding");
    const gre::FixedPointValue v = gre::requantize(e->enc.bits, B);
    if (value) *value = v.to_double();
    if (base2) *base2 = dup_string(v.to_base2());
  });
}

gre_status gre_region_json(double mu, int has_alpha, double alpha, char** out) {
  return guarded([&] {
    require(out != nullptr, "gre_region_json: null argument");
    const gre::ParamRegion region(mu);
    std::optional<double> a;
    if (has_alpha) a = alpha;
    *out = dup_string(gre::region_json(region, a).dump(2));
  });
}

gre_status gre_invariance_check(double mu, double alpha, double nu1, double nu2, size_t grid,
                                size_t* violations, char** report_json) {
  return guarded([&] {
    const gre::InvariantRect rect = gre::invariant_rect(mu);
    const gre::QuantizerSpec spec{alpha, nu1, nu2, gre::AlwaysZero{}};
    const gre::InvarianceReport r = gre::verify_invariance(rect, spec, mu, grid);
    if (violations) *violations = r.violation_count;
    if (report_json) *report_json = dup_string(gre::to_json(r).dump(2));
  });
}

void gre_experiment_params_init(gre_experiment_params* p) {
  if (!p) return;
  *p = gre_experiment_params{};
  p->name = "escape";
  p->trials = 10000;
  p->seed = 1;
  p->delta = 0.05;
  p->n_max = 60;
  p->alpha = 1.5;
  p->nu1 = 1.2;
  p->nu2 = 1.3;
  p->noise_amp = 1.0 / 64.0;
  p->sigma = 1.0 / (64.0 * std::sqrt(3.0));
  p->n_bits = 0;
  p->mu = 0.0;
  p->alpha_grid = "1,1.5,2";
  p->nu_grid = "1:1,1.2:1.3,0.9:1.1";
}

gre_status gre_experiment_run(const gre_experiment_params* p, gre_table** out) {
  return guarded([&] {
    require(p && out && p->name, "gre_experiment_run: null argument");
    *out = nullptr;
    const gre::ExperimentOptions opt{p->trials, p->seed, p->workers};
    const std::string name = p->name;
    gre::ExperimentTable t;
    if (name == "escape") {
      t = gre::escape_fraction_experiment(p->delta, p->n_max, opt);
    } else if (name == "rmse") {
      const gre::QuantizerSpec spec{p->alpha, p->nu1, p->nu2, gre::RandomUniformThreshold{p->seed}};
      t = gre::rmse_vs_n_experiment(spec, p->noise_amp, p->n_max, opt);
    } else if (name == "variance") {
      t = gre::to_table(gre::noise_variance_check(p->sigma, p->n_bits ? p->n_bits : 40, opt));
    } else if (name == "bias") {
      t = gre::to_table(gre::bias_check(p->n_bits ? p->n_bits : 16, opt));
    } else if (name == "sweep") {
      gre::SweepOptions s{opt, p->n_bits ? p->n_bits : 48};
      t = gre::robustness_sweep(p->mu, parse_list(p->alpha_grid), parse_bands(p->nu_grid), s);
    } else {
      throw std::invalid_argument("unknown experiment '" + name + "'");
    }
    *out = new gre_table{std::move(t)};
  });
}

size_t gre_table_rows(const gre_table* t) { return t ? t->table.rows.size() : 0; }

gre_status gre_table_to_csv(const gre_table* t, char** out) {
  return guarded([&] {
    require(t && out, "gre_table_to_csv: null argument");
    *out = dup_string(gre::table_csv(t->table));
  });
}

gre_status gre_table_to_json(const gre_table* t, char** out) {
  return guarded([&] {
    require(t && out, "gre_table_to_json: null argument");
    *out = dup_string(gre::to_json(t->table).dump(2));
  });
}

gre_status gre_table_write(const gre_table* t, const char* path) {
  if (!t || !path) return fail(GRE_INVALID_ARGUMENT, "gre_table_write: null argument");
  const std::string p = path;
  const bool json = p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0;
  std::string text;
  const gre_status s = guarded([&] {
    text = json ? gre::to_json(t->table).dump(2) + "\n" : gre::table_csv(t->table);
  });
  if (s != GRE_OK) return s;
  std::ofstream f(p, std::ios::binary);
  if (!f) return fail(GRE_IO_ERROR, "cannot open '" + p + "' for writing");
  f << text;
  if (!f) return fail(GRE_IO_ERROR, "write to '" + p + "' failed");
  return GRE_OK;
}

void gre_table_free(gre_table* t) { delete t; }

}  // extern "C"

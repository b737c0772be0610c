#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gre/gre.h>

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

std::string take(char* s) {
  std::string out = s ? s : "";
  gre_string_free(s);
  return out;
}

gre_encoding* encode(const gre_encode_params& p, double x) {
  gre_encoding* e = nullptr;
  REQUIRE(gre_encode(&p, x, &e) == GRE_OK);
  REQUIRE(e != nullptr);
  return e;
}

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::string(gre_version()) == "0.1.0");
  gre_encode_params p;
  gre_encode_params_init(&p);
  CHECK(std::string(p.scheme) == "gre");
  CHECK(p.n_bits == 32);
  CHECK(p.alpha == 1.0);
  CHECK(p.L == 3);
  gre_encode_params_init(nullptr);
}

TEST_CASE("encode, inspect and decode") {
  gre_encode_params p;
  gre_encode_params_init(&p);
  p.n_bits = 9;
  gre_encoding* e = encode(p, 0.5);
  CHECK(gre_encoding_n_bits(e) == 9);
  std::string bits;
  for (size_t n = 0; n < 9; ++n) bits += char('0' + gre_encoding_bit(e, n));
  CHECK(bits == "001001001");
  CHECK(gre_encoding_bit(e, 9) == -1);
  CHECK(gre_encoding_state_count(e) == 11);
  CHECK(gre_encoding_state(e, 0) == 0.5);
  CHECK(gre_encoding_escaped(e) == 0);

  double v = 0;
  REQUIRE(gre_decode(e, 0.0, 0, &v, nullptr) == GRE_OK);
  double oracle = 0;
  for (int n : {2, 5, 8}) oracle += std::pow(kGolden, -n);
  CHECK(v == doctest::Approx(oracle).epsilon(1e-14));
  int heuristic = -1;
  REQUIRE(gre_decode(e, 0.0, 1, &v, &heuristic) == GRE_OK);
  CHECK(heuristic == 0);
  CHECK(v == doctest::Approx(oracle + 0.5 * std::pow(kGolden, -7.0)));
  CHECK(gre_decode(e, 2.0, 1, &v, nullptr) == GRE_INVALID_ARGUMENT);

  const std::string csv = take([&] {
    char* s = nullptr;
    REQUIRE(gre_encoding_trajectory_csv(e, &s) == GRE_OK);
    return s;
  }());
  CHECK(csv.rfind("n,u_n\n0,0.5\n", 0) == 0);

  char* json = nullptr;
  REQUIRE(gre_encoding_to_json(e, &json) == GRE_OK);
  gre_encoding* back = nullptr;
  REQUIRE(gre_encoding_from_json(json, &back) == GRE_OK);
  gre_string_free(json);
  CHECK(gre_encoding_n_bits(back) == 9);
  CHECK(gre_encoding_state_count(back) == 0);
  double v2 = 0;
  REQUIRE(gre_decode(back, 0.0, 0, &v2, nullptr) == GRE_OK);
  CHECK(v2 == doctest::Approx(oracle).epsilon(1e-14));

  char* base2 = nullptr;
  double rq = 0;
  REQUIRE(gre_requantize(back, 16, &base2, &rq) == GRE_OK);
  CHECK(std::abs(rq - oracle) <= std::ldexp(1.0, -15));
  CHECK(take(base2).rfind("0.", 0) == 0);
  gre_encoding_free(back);
  gre_encoding_free(e);
}

TEST_CASE("other schemes through the C API") {
  gre_encode_params p;
  gre_encode_params_init(&p);
  p.n_bits = 20;
  double v = 0;

  p.scheme = "pcm";
  gre_encoding* e = encode(p, 0.3);
  REQUIRE(gre_decode(e, 0.0, 0, &v, nullptr) == GRE_OK);
  CHECK(std::abs(v - 0.3) <= std::ldexp(1.0, -19));
  gre_encoding_free(e);

  p.scheme = "sd1";
  p.n_bits = 1000;
  e = encode(p, 0.3);
  REQUIRE(gre_decode(e, 0.0, 0, &v, nullptr) == GRE_OK);
  CHECK(std::abs(v - 0.3) <= 1e-3 + 1e-12);
  gre_encoding_free(e);

  p.scheme = "beta";
  p.beta = 1.8;
  p.n_bits = 40;
  e = encode(p, 0.7);
  REQUIRE(gre_decode(e, 0.0, 0, &v, nullptr) == GRE_OK);
  CHECK(v == doctest::Approx(0.7).epsilon(1e-8));
  gre_encoding_free(e);

  p.scheme = "poly";
  p.L = 3;
  p.n_bits = 50;
  e = encode(p, 0.4);
  int heuristic = 0;
  REQUIRE(gre_decode(e, 0.0, 0, &v, &heuristic) == GRE_OK);
  CHECK(v == doctest::Approx(0.4).epsilon(1e-11));
  REQUIRE(gre_decode(e, 0.0, 1, &v, &heuristic) == GRE_OK);
  CHECK(heuristic == 1);
  gre_encoding_free(e);
}

TEST_CASE("status codes and last error") {
  gre_encode_params p;
  gre_encode_params_init(&p);
  gre_encoding* e = nullptr;
  CHECK(gre_encode(&p, -0.5, &e) == GRE_OUT_OF_RANGE);
  CHECK(e == nullptr);
  CHECK(std::strlen(gre_last_error()) > 0);
  p.scheme = "nonsense";
  CHECK(gre_encode(&p, 0.5, &e) == GRE_INVALID_ARGUMENT);
  CHECK(gre_encode(nullptr, 0.5, &e) == GRE_INVALID_ARGUMENT);
  gre_encode_params_init(&p);
  p.nu1 = 1.3;
  p.nu2 = 1.2;
  p.has_nu = 1;
  CHECK(gre_encode(&p, 0.5, &e) == GRE_INVALID_ARGUMENT);

  CHECK(gre_encoding_from_json("{not json", &e) == GRE_PARSE_ERROR);
  CHECK(std::string(gre_last_error()).find("JSON") != std::string::npos);
  CHECK(gre_encoding_from_json(nullptr, &e) == GRE_INVALID_ARGUMENT);
  double v;
  CHECK(gre_decode(nullptr, 0.0, 0, &v, nullptr) == GRE_INVALID_ARGUMENT);

  gre_encode_params_init(&p);
  REQUIRE(gre_encode(&p, 0.5, &e) == GRE_OK);
  CHECK(std::string(gre_last_error()).empty());
  CHECK(gre_requantize(e, 2, nullptr, &v) != GRE_OK);
  gre_encoding_free(e);

  // Null-safe accessors.
  CHECK(gre_encoding_n_bits(nullptr) == 0);
  CHECK(gre_encoding_bit(nullptr, 0) == -1);
  CHECK(gre_table_rows(nullptr) == 0);
  gre_encoding_free(nullptr);
  gre_table_free(nullptr);
  gre_string_free(nullptr);
}

TEST_CASE("region and invariance check") {
  char* json = nullptr;
  REQUIRE(gre_region_json(0.01, 1, 1.5, &json) == GRE_OK);
  const std::string region = take(json);
  CHECK(region.find("\"nu_min\"") != std::string::npos);
  CHECK(region.find("\"margin\"") != std::string::npos);
  CHECK(gre_region_json(0.5, 0, 0.0, &json) == GRE_OUT_OF_RANGE);

  size_t violations = 99;
  REQUIRE(gre_invariance_check(0.0, 1.0, 1.0, 1.0, 200, &violations, nullptr) == GRE_OK);
  CHECK(violations == 0);
  REQUIRE(gre_invariance_check(0.0, 1.0, 0.95, 1.05, 200, &violations, &json) == GRE_OK);
  CHECK(violations > 0);
  CHECK(take(json).find("\"ok\": false") != std::string::npos);
}

TEST_CASE("experiments and table output") {
  gre_experiment_params p;
  gre_experiment_params_init(&p);
  p.trials = 200;
  p.n_max = 10;
  gre_table* t = nullptr;
  REQUIRE(gre_experiment_run(&p, &t) == GRE_OK);
  CHECK(gre_table_rows(t) == 10);
  char* csv = nullptr;
  REQUIRE(gre_table_to_csv(t, &csv) == GRE_OK);
  CHECK(take(csv).rfind("N,delta,fraction,escapes,trials,seed\n1,", 0) == 0);

  const auto dir = std::filesystem::temp_directory_path();
  const auto csv_path = dir / "gre_capi_table.csv";
  const auto json_path = dir / "gre_capi_table.json";
  REQUIRE(gre_table_write(t, csv_path.c_str()) == GRE_OK);
  REQUIRE(gre_table_write(t, json_path.c_str()) == GRE_OK);
  std::ifstream jf(json_path);
  std::stringstream js;
  js << jf.rdbuf();
  CHECK(js.str().find("\"experiment\": \"escape\"") != std::string::npos);
  std::ifstream cf(csv_path);
  std::string header;
  std::getline(cf, header);
  CHECK(header == "N,delta,fraction,escapes,trials,seed");
  std::filesystem::remove(csv_path);
  std::filesystem::remove(json_path);
  CHECK(gre_table_write(t, "/nonexistent-dir/x.csv") == GRE_IO_ERROR);
  gre_table_free(t);

  for (const char* name : {"bias", "variance", "sweep", "rmse"}) {
    CAPTURE(name);
    gre_experiment_params_init(&p);
    p.name = name;
    p.trials = 200;
    p.n_max = 10;
    p.n_bits = 12;
    REQUIRE(gre_experiment_run(&p, &t) == GRE_OK);
    CHECK(gre_table_rows(t) > 0);
    gre_table_free(t);
  }
  gre_experiment_params_init(&p);
  p.name = "bogus";
  CHECK(gre_experiment_run(&p, &t) == GRE_INVALID_ARGUMENT);
  p.name = "escape";
  p.trials = 10;
  CHECK(gre_experiment_run(&p, &t) == GRE_INVALID_ARGUMENT);
  p.name = "sweep";
  p.trials = 10;
  p.nu_grid = "1:";
  CHECK(gre_experiment_run(&p, &t) == GRE_INVALID_ARGUMENT);
}

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "bhd/bhd.h"
#include "oracles.hpp"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  bhd_string_free(s);
  return out;
}

struct BodyHandle {
  bhd_body* p = nullptr;
  ~BodyHandle() { bhd_body_free(p); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strlen(bhd_version()) > 0);
  CHECK(std::string(bhd_status_name(BHD_OK)) == "OK");
  CHECK(std::string(bhd_status_name(BHD_E_NOT_SIMPLE)) == "NotSimple");
  CHECK(std::string(bhd_status_name(BHD_E_CERTIFICATE_FAILED)) == "CertificateFailed");
}

TEST_CASE("builtin bodies and gauge") {
  BodyHandle c;
  REQUIRE(bhd_body_builtin("rotated-cross4", nullptr, &c.p) == BHD_OK);
  CHECK(bhd_body_dim(c.p) == 4);
  const double x[4] = {1, 0, 0, 0};
  double g = 0;
  CHECK(bhd_minkowski(c.p, x, 4, &g) == BHD_OK);
  CHECK(std::abs(g - (std::sqrt(2.0) / 2 + 1)) < 1e-15);
  CHECK(bhd_minkowski(c.p, x, 3, &g) == BHD_E_DIMENSION_MISMATCH);
  CHECK(std::strlen(bhd_last_error()) > 0);

  bhd_body* bad = nullptr;
  CHECK(bhd_body_builtin("nope", nullptr, &bad) == BHD_E_INVALID_ID);
  CHECK(bad == nullptr);
  CHECK(bhd_body_from_json("{oops", &bad) == BHD_E_PARSE);
  CHECK(bhd_body_builtin(nullptr, nullptr, &bad) == BHD_E_INVALID_ARGUMENT);

  bhd_builtin_params params;
  bhd_builtin_params_default(&params);
  params.n = 6;
  BodyHandle e;
  REQUIRE(bhd_body_builtin("euclid-n", &params, &e.p) == BHD_OK);
  CHECK(bhd_body_dim(e.p) == 6);
}

TEST_CASE("json body round trip") {
  BodyHandle c, back;
  REQUIRE(bhd_body_builtin("rotated-cross4", nullptr, &c.p) == BHD_OK);
  char* s = nullptr;
  REQUIRE(bhd_body_to_json(c.p, &s) == BHD_OK);
  const std::string text = take(s);
  REQUIRE(bhd_body_from_json(text.c_str(), &back.p) == BHD_OK);
  const double x[4] = {0.3, -1.2, 0.7, 2.0};
  double a = 0, b = 0;
  bhd_minkowski(c.p, x, 4, &a);
  bhd_minkowski(back.p, x, 4, &b);
  CHECK(a == b);
}

TEST_CASE("sections, density and gap") {
  BodyHandle c;
  REQUIRE(bhd_body_builtin("rotated-cross4", nullptr, &c.p) == BHD_OK);
  double u[4], v[4];
  REQUIRE(bhd_parse_plane("w0", 4, u, v) == BHD_OK);
  double area = 0;
  CHECK(bhd_section_area(c.p, u, v, &area) == BHD_OK);
  CHECK(std::abs(area - oracle::kW0Area) < 1e-12);
  char* s = nullptr;
  REQUIRE(bhd_section(c.p, u, v, 0, &s) == BHD_OK);
  const json sec = json::parse(take(s));
  CHECK(sec["method"] == "exact-halfplane");

  const double e12[6] = {1, 0, 0, 0, 0, 0};
  REQUIRE(bhd_density(c.p, 2, e12, 6, 0, 1, &s) == BHD_OK);
  const json d = json::parse(take(s));
  CHECK(std::abs(d["value"].get<double>() - M_PI / oracle::kW0Area) < 1e-12);
  CHECK(d["stderr"].is_null());
  const double ns[6] = {1, 0, 0, 0, 0, 1};
  CHECK(bhd_density(c.p, 2, ns, 6, 0, 1, &s) == BHD_E_NOT_SIMPLE);
  const double zero[6] = {0, 0, 0, 0, 0, 0};
  CHECK(bhd_density(c.p, 2, zero, 6, 0, 1, &s) == BHD_E_ZERO_BIVECTOR);

  REQUIRE(bhd_parse_plane("v9", 4, u, v) == BHD_OK);
  const double p0[4] = {0, 0, 0, 0};
  REQUIRE(bhd_contraction_gap(c.p, p0, u, v, &s) == BHD_OK);
  const json g = json::parse(take(s));
  CHECK(std::abs(g["gap"].get<double>() - oracle::kV9Gap) < 1e-12);
  CHECK(bhd_parse_plane("v1:zz", 4, u, v) == BHD_E_PARSE);
}

TEST_CASE("lemma csv") {
  BodyHandle c;
  REQUIRE(bhd_body_builtin("rotated-cross4", nullptr, &c.p) == BHD_OK);
  const double eps[4] = {0.002, 0.005, 0.01, 0.02};
  char* s = nullptr;
  REQUIRE(bhd_lemmas_csv(c.p, eps, 4, &s) == BHD_OK);
  const std::string csv = take(s);
  CHECK(csv.rfind("family,eps,lower_bound,exact_area,fitted_c\n", 0) == 0);
  int lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + 4 * 4);
  const double few[2] = {0.01, 0.02};
  CHECK(bhd_lemmas_csv(c.p, few, 2, &s) == BHD_E_INVALID_ARGUMENT);
}

TEST_CASE("certify and report") {
  BodyHandle e;
  REQUIRE(bhd_body_builtin("euclid-n", nullptr, &e.p) == BHD_OK);
  bhd_certify_config cfg;
  bhd_certify_config_default(&cfg);
  cfg.box_halfwidth = 2;
  cfg.grid_n = 21;
  cfg.eps_count = 1;
  cfg.eps[0] = 0.1;
  cfg.extra_planes = 2;
  char* s = nullptr;
  CHECK(bhd_certify(e.p, &cfg, 0, &s) == BHD_E_CERTIFICATE_FAILED);
  REQUIRE(s != nullptr);
  const std::string cert = take(s);
  CHECK(json::parse(cert)["success"] == false);

  REQUIRE(bhd_report("certify", nullptr, 1, 1, cert.c_str(), &s) == BHD_OK);
  const json r = json::parse(take(s));
  CHECK(r["command"] == "certify");
  CHECK(r["result"]["success"] == false);
  CHECK_FALSE(r.contains("timestamp"));
  CHECK(bhd_report("x", nullptr, 1, 1, "[", &s) == BHD_E_PARSE);
}

TEST_CASE("probe") {
  BodyHandle c;
  REQUIRE(bhd_body_builtin("rotated-cross4", nullptr, &c.p) == BHD_OK);
  char* s = nullptr;
  REQUIRE(bhd_probe(c.p, 50, 2, 0, &s) == BHD_OK);
  const json r = json::parse(take(s));
  CHECK(r["violations"] == 0);
  CHECK(r["trials"] == 50);
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bhd/error.hpp"
#include "bhd/io.hpp"
#include "oracles.hpp"

using namespace bhd;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("body json round trip") {
  for (const char* name : {"cross4", "rotated-cross4", "euclid-n", "complex-lp", "product-c-b"}) {
    const Body b = builtin_body(name);
    const Json j = body_to_json(b);
    const Body back = body_from_json(j);
    CHECK(back.dim() == b.dim());
    CHECK(back.label() == b.label());
    for (std::uint64_t s = 0; s < 10; ++s) {
      const VecN x = oracle::gaussian_vec(s, 0, b.dim());
      CHECK(back.minkowski(x) == b.minkowski(x));
    }
    CHECK(body_to_json(back).dump() == j.dump());
  }
  BuiltinParams p;
  p.n = 6;
  CHECK(builtin_body("euclid-n", p).dim() == 6);
  p.euclidean_dim = 2;
  CHECK(builtin_body("product-c-b", p).dim() == 6);
  CHECK(code_of([] { builtin_body("sphere"); }) == ErrorCode::InvalidId);
}

TEST_CASE("body json errors") {
  CHECK(code_of([] { body_from_json(Json::parse(R"({"kind":"cube"})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"functionals":[[1]]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"kind":"abs_sum","functionals":"x"})")); }) ==
        ErrorCode::Parse);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"kind":"abs_sum","functionals":[[1,0],[0]]})")); }) ==
        ErrorCode::Parse);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"kind":"euclidean","n":"four"})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { load_body_file("/nonexistent/body.json"); }) == ErrorCode::Parse);

  const std::string path = "test_io_body.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(code_of([&] { load_body_file(path); }) == ErrorCode::Parse);
  {
    std::ofstream f(path);
    f << R"({"kind": "abs_sum", "functionals": [[1, 0], [0, 1]]})";
  }
  const Body sq = load_body_file(path);
  CHECK(sq.dim() == 2);
  CHECK(sq.minkowski(make_vec(std::vector<double>{0.25, -0.5})) == 0.75);
  std::remove(path.c_str());
}

TEST_CASE("plane mini-language") {
  CHECK(grassmann_distance(parse_plane("w0", 4), w0_plane(4)) < 1e-15);
  CHECK(grassmann_distance(parse_plane("v9", 4), family_plane({9, 0})) < 1e-15);
  CHECK(grassmann_distance(parse_plane("v3:0.05", 4), family_plane({3, 0.05})) < 1e-15);
  CHECK(grassmann_distance(parse_plane("random:7", 4), random_plane(7, 4)) < 1e-15);
  const Plane2 raw = parse_plane("1,0,0,0, 1 1 0 0", 4);
  CHECK(grassmann_distance(raw, w0_plane(4)) < 1e-15);
  const Plane2 six = parse_plane("w0", 6);
  CHECK(six.dim() == 6);
  CHECK(code_of([] { parse_plane("v0:0.1", 4); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_plane("v1:abc", 4); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_plane("1,2,3", 4); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_plane("1,0,0,0,2,0,0,0", 4); }) == ErrorCode::DegenerateSpan);
  CHECK(code_of([] { parse_plane("v1:0.1", 3); }) == ErrorCode::Parse);
}

TEST_CASE("report serialization") {
  Json j;
  j["third"] = 1.0 / 3.0;
  j["int"] = 3;
  j["nan"] = std::nan("");
  j["inf"] = HUGE_VAL;
  j["list"] = {0.1, 2.5};
  const std::string s = dump_report(j);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"nan\": null") != std::string::npos);
  CHECK(s.find("\"inf\": null") != std::string::npos);
  CHECK(s.find("\"int\": 3") != std::string::npos);
  const Json back = Json::parse(s);
  CHECK(back["third"].get<double>() == 1.0 / 3.0);
  CHECK(back["list"][1].get<double>() == 2.5);
}

TEST_CASE("report envelope") {
  const Json echo = {{"grid", 33}};
  const Json det = report_envelope("certify", echo, 5, true);
  CHECK(det["command"] == "certify");
  CHECK(det["seed"] == 5);
  CHECK(det["config_echo"]["grid"] == 33);
  CHECK(det.contains("toolkit_version"));
  CHECK_FALSE(det.contains("timestamp"));
  const Json live = report_envelope("certify", echo, 5, false);
  REQUIRE(live.contains("timestamp"));
  CHECK(live["timestamp"].get<std::string>().back() == 'Z');
}

TEST_CASE("section and scan json") {
  const SectionReport r = cross_section(builtin_body("rotated-cross4"), w0_plane(4));
  const Json j = section_to_json(r);
  CHECK(std::abs(j["area"].get<double>() - oracle::kW0Area) < 1e-12);
  CHECK(j["method"] == "exact-halfplane");
  CHECK(j["vertices"].size() == 8);
  ScanConfig cfg;
  cfg.trials = 10;
  const Json s = scan_to_json(semi_ellipticity_scan(builtin_body("rotated-cross4"), cfg));
  CHECK(s["method"] == "exact");
  CHECK(s["trials"] == 10);
  CHECK(s.contains("worst_trial"));
}

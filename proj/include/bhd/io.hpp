#pragma once

#include <string>

#include <json.hpp>

#include "bhd/bodies.hpp"
#include "bhd/contraction.hpp"
#include "bhd/geom.hpp"
#include "bhd/probe.hpp"
#include "bhd/sections.hpp"

namespace bhd {

using Json = nlohmann::ordered_json;

// Body files:
//   {"kind": "abs_sum", "functionals": [[...], ...]}
//   {"kind": "euclidean", "n": 4}
//   {"kind": "complex_lp", "p": 3.0, "k": 2}
//   {"kind": "product", "left": <body>, "euclidean_dim": 2}
// Throws Parse on malformed input.
Body body_from_json(const Json& j);
Json body_to_json(const Body& body);
Body load_body_file(const std::string& path);

struct BuiltinParams {
  int n = 4;           // euclid-n
  double p = 3.0;      // complex-lp
  int k = 3;           // complex-lp
  int euclidean_dim = 1;  // product-c-b
};

// cross4, rotated-cross4, euclid-n, complex-lp, product-c-b. Throws InvalidId.
Body builtin_body(const std::string& name, const BuiltinParams& params = {});

// Plane spec in R^n: "w0", "v1:EPS" .. "v8:EPS", "v9", "random:SEED", or 2n
// comma/space separated numbers (two raw vectors, orthonormalized). Named
// planes live in the first four coordinates. Throws Parse.
Plane2 parse_plane(const std::string& spec, int n);

Json plane_to_json(const Plane2& plane);
Json section_to_json(const SectionReport& report);
Json certificate_to_json(const Certificate& cert, bool include_runtime);
Json trial_to_json(const DecompositionTrial& trial);
Json scan_to_json(const ScanReport& report);

// Report wrapper with toolkit_version, config_echo and seed; adds a UTC
// timestamp unless deterministic.
Json report_envelope(const std::string& command, const Json& config_echo, std::uint64_t seed, bool deterministic);

// Serializes with every floating-point number printed as %.17g; non-finite
// values become null.
std::string dump_report(const Json& j, int indent = 2);

}  // namespace bhd

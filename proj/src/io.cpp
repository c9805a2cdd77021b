#include "bhd/io.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "bhd/config.hpp"
#include "bhd/error.hpp"

namespace bhd {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) BHD_THROW(Parse, "missing field \"" << key << "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    BHD_THROW(Parse, "field \"" << key << "\": " << e.what());
  }
}

Json vec_to_json(const VecN& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json params_json(const std::array<double, 4>& p) { return Json::array({p[0], p[1], p[2], p[3]}); }

Json point_to_json(const EvaluatedPoint& ep, const Certificate& cert) {
  Json j;
  j["params"] = params_json(ep.params);
  j["family_gap"] = ep.family_gap;
  j["family_witness"] = cert.planes[static_cast<std::size_t>(ep.family_witness)].label;
  j["gap"] = ep.gap;
  j["witness"] = cert.planes[static_cast<std::size_t>(ep.witness)].label;
  j["ascended"] = ep.ascended;
  if (ep.ascended_plane) j["ascended_plane"] = plane_to_json(*ep.ascended_plane);
  return j;
}

void write_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::vector<double> parse_numbers(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream is(t);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double x;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      BHD_THROW(Parse, "not a number: \"" << tok << "\"");
    }
    if (used != tok.size()) BHD_THROW(Parse, "not a number: \"" << tok << "\"");
    out.push_back(x);
  }
  return out;
}

}  // namespace

Body body_from_json(const Json& j) {
  if (!j.is_object()) BHD_THROW(Parse, "body must be a JSON object");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "abs_sum") {
    const auto rows = field<std::vector<std::vector<double>>>(j, "functionals");
    if (rows.empty()) BHD_THROW(Parse, "abs-sum body needs at least one functional");
    std::vector<VecN> fs;
    for (const auto& r : rows) {
      if (r.size() != rows[0].size()) BHD_THROW(Parse, "functionals differ in length");
      if (r.empty() || r.size() > static_cast<std::size_t>(kMaxDim)) BHD_THROW(Parse, "functional length must be 1.." << kMaxDim);
      fs.push_back(make_vec(r));
    }
    return Body(AbsSumBody(std::move(fs)));
  }
  if (kind == "euclidean") return make_euclidean_ball(field<int>(j, "n"));
  if (kind == "complex_lp") return make_complex_lp(field<double>(j, "p"), field<int>(j, "k"));
  if (kind == "product") {
    if (!j.contains("left")) BHD_THROW(Parse, "missing field \"left\"");
    return make_product(body_from_json(j.at("left")), field<int>(j, "euclidean_dim"));
  }
  BHD_THROW(Parse, "unknown body kind \"" << kind << "\"");
}

Json body_to_json(const Body& body) {
  Json j;
  if (const auto* a = body.abs_sum()) {
    j["kind"] = "abs_sum";
    Json rows = Json::array();
    for (const VecN& f : a->functionals()) rows.push_back(vec_to_json(f));
    j["functionals"] = rows;
    return j;
  }
  const auto& kind = body.smooth()->kind();
  if (const auto* e = std::get_if<EuclideanBall>(&kind)) {
    j["kind"] = "euclidean";
    j["n"] = e->n;
  } else if (const auto* c = std::get_if<ComplexLpBall>(&kind)) {
    j["kind"] = "complex_lp";
    j["p"] = c->p;
    j["k"] = c->k;
  } else {
    const auto& p = std::get<ProductBall>(kind);
    j["kind"] = "product";
    j["left"] = body_to_json(*p.left);
    j["euclidean_dim"] = p.euclidean_dim;
  }
  return j;
}

Body load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) BHD_THROW(Parse, "cannot open body file " << path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    BHD_THROW(Parse, path << ": " << e.what());
  }
  return body_from_json(j);
}

Body builtin_body(const std::string& name, const BuiltinParams& params) {
  if (name == "cross4") return Body(make_cross_polytope(4));
  if (name == "rotated-cross4") return Body(make_rotated_cross_polytope());
  if (name == "euclid-n") return make_euclidean_ball(params.n);
  if (name == "complex-lp") return make_complex_lp(params.p, params.k);
  if (name == "product-c-b") return make_product(Body(make_rotated_cross_polytope()), params.euclidean_dim);
  BHD_THROW(InvalidId, "unknown builtin body \"" << name
                                                 << "\" (valid: cross4, rotated-cross4, euclid-n, complex-lp, product-c-b)");
}

Plane2 parse_plane(const std::string& spec, int n) {
  if (n < 2 || n > kMaxDim) BHD_THROW(UnsupportedDimension, "plane dimension " << n);
  std::string s;
  for (char c : spec) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto named = [&](const Plane2& p) {
    if (n < 4) BHD_THROW(Parse, "named plane \"" << spec << "\" needs n >= 4");
    return p.embedded(n);
  };
  if (s == "w0") return w0_plane(n);
  if (s == "v9") return named(family_plane({9, 0.0}));
  if (s.size() > 3 && s[0] == 'v' && s[2] == ':' && s[1] >= '1' && s[1] <= '8') {
    const auto eps = parse_numbers(s.substr(3));
    if (eps.size() != 1) BHD_THROW(Parse, "plane \"" << spec << "\" needs one epsilon");
    return named(family_plane({s[1] - '0', eps[0]}));
  }
  if (s.rfind("random:", 0) == 0) {
    const std::string seed = s.substr(7);
    if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos) {
      BHD_THROW(Parse, "random plane seed must be a nonnegative integer");
    }
    return random_plane(std::stoull(seed), n);
  }
  const auto xs = parse_numbers(s);
  if (xs.size() != static_cast<std::size_t>(2 * n)) {
    BHD_THROW(Parse, "plane \"" << spec << "\": expected w0, v1:EPS..v8:EPS, v9, random:SEED or " << 2 * n
                                << " numbers");
  }
  return gram_schmidt(make_vec(std::span(xs).first(static_cast<std::size_t>(n))),
                      make_vec(std::span(xs).last(static_cast<std::size_t>(n))));
}

Json plane_to_json(const Plane2& plane) {
  Json j;
  j["u"] = vec_to_json(plane.u());
  j["v"] = vec_to_json(plane.v());
  return j;
}

Json section_to_json(const SectionReport& report) {
  Json j;
  j["area"] = report.euclidean_area;
  j["method"] = report.method_name();
  Json verts = Json::array();
  for (const Point2& p : report.polygon.vertices) verts.push_back(Json::array({p.x, p.y}));
  j["vertices"] = verts;
  return j;
}

Json certificate_to_json(const Certificate& cert, bool include_runtime) {
  Json j;
  j["body"] = cert.body_label;
  j["success"] = cert.success;
  Json cfg;
  cfg["box_halfwidth"] = cert.config.box_halfwidth;
  cfg["grid_n"] = cert.config.grid_n;
  cfg["eps_set"] = cert.config.eps_set;
  cfg["extra_planes"] = cert.config.extra_planes;
  cfg["seed"] = cert.config.seed;
  cfg["gap_threshold"] = cert.config.gap_threshold;
  cfg["refine_fraction"] = cert.config.refine_fraction;
  cfg["ascent_iterations"] = cert.config.ascent_iterations;
  cfg["ascent_starts"] = cert.config.ascent_starts;
  cfg["exterior_radii"] = cert.config.exterior_radii;
  cfg["exterior_factor"] = cert.config.exterior_factor;
  j["config"] = cfg;
  j["w0_area"] = cert.w0_area;
  Json planes = Json::array();
  for (std::size_t i = 0; i < cert.planes.size(); ++i) {
    Json p;
    p["label"] = cert.planes[i].label;
    p["u"] = vec_to_json(cert.planes[i].plane.u());
    p["v"] = vec_to_json(cert.planes[i].plane.v());
    p["section_area"] = cert.planes[i].section_area;
    p["grid_witness_cells"] = cert.witness_histogram[i];
    planes.push_back(p);
  }
  j["planes"] = planes;
  j["grid_cells"] = cert.grid_cells;
  j["refined_points"] = cert.refined_points;
  j["positive_cells"] = cert.positive_cells;
  j["global_min"] = point_to_json(cert.global_min, cert);
  Json asc = Json::array();
  for (const auto& ep : cert.ascended) asc.push_back(point_to_json(ep, cert));
  j["ascended"] = asc;
  Json ext;
  ext["rays"] = cert.exterior.rays;
  ext["radii"] = cert.exterior.radii;
  ext["non_monotone_rays"] = cert.exterior.non_monotone_rays;
  ext["min_gap_at_box"] = cert.exterior.min_gap_at_box;
  ext["ok"] = cert.exterior.ok;
  j["exterior"] = ext;
  if (include_runtime) j["runtime_seconds"] = cert.runtime_seconds;
  return j;
}

Json trial_to_json(const DecompositionTrial& t) {
  Json j;
  j["index"] = t.index;
  j["w"] = t.triple.w.coords();
  j["w1"] = t.triple.w1.coords();
  j["w2"] = t.triple.w2.coords();
  j["phi"] = t.phi;
  j["phi1"] = t.phi1;
  j["phi2"] = t.phi2;
  j["slack"] = t.slack;
  j["tolerance"] = t.tolerance;
  if (t.standard_error) j["standard_error"] = *t.standard_error;
  return j;
}

Json scan_to_json(const ScanReport& r) {
  Json j;
  j["body"] = r.body_label;
  j["dim"] = r.dim;
  j["method"] = r.method;
  j["trials"] = r.trials;
  j["min_slack"] = r.min_slack;
  j["worst_trial"] = trial_to_json(r.worst_trial);
  j["violations"] = r.violations;
  return j;
}

Json report_envelope(const std::string& command, const Json& config_echo, std::uint64_t seed, bool deterministic) {
  Json j;
  j["toolkit_version"] = kToolkitVersion;
  j["command"] = command;
  j["config_echo"] = config_echo;
  j["seed"] = seed;
  if (!deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp"] = buf;
  }
  return j;
}

std::string dump_report(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

}  // namespace bhd

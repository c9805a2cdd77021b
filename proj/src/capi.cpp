#include "bhd/bhd.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "bhd/config.hpp"
#include "bhd/contraction.hpp"
#include "bhd/density.hpp"
#include "bhd/error.hpp"
#include "bhd/io.hpp"
#include "bhd/probe.hpp"
#include "bhd/sections.hpp"

struct bhd_body {
  bhd::Body body;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
bhd_status guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const bhd::Error& e) {
    g_last_error = e.what();
    return static_cast<bhd_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return BHD_E_INTERNAL;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) BHD_THROW(InvalidArgument, what << " is null");
}

bhd::VecN vec(const double* x, int n) {
  bhd::VecN v(n);
  for (int i = 0; i < n; ++i) v[i] = x[i];
  return v;
}

bhd::Plane2 plane_arg(const bhd_body* body, const double* u, const double* v) {
  require(u, "u");
  require(v, "v");
  const int n = body->body.dim();
  return bhd::gram_schmidt(vec(u, n), vec(v, n));
}

}  // namespace

extern "C" {

const char* bhd_version(void) { return bhd::kToolkitVersion; }

const char* bhd_last_error(void) { return g_last_error.c_str(); }

const char* bhd_status_name(bhd_status status) {
  if (status == BHD_OK) return "OK";
  if (status == BHD_E_INTERNAL) return "Internal";
  return bhd::error_code_name(static_cast<bhd::ErrorCode>(static_cast<int>(status)));
}

void bhd_string_free(char* s) { std::free(s); }

void bhd_set_threads(unsigned n) { bhd::set_thread_count(n); }

void bhd_builtin_params_default(bhd_builtin_params* params) {
  if (!params) return;
  const bhd::BuiltinParams d;
  *params = {d.n, d.p, d.k, d.euclidean_dim};
}

bhd_status bhd_body_builtin(const char* name, const bhd_builtin_params* params, bhd_body** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    bhd::BuiltinParams bp;
    if (params) bp = {params->n, params->p, params->k, params->euclidean_dim};
    *out = new bhd_body{bhd::builtin_body(name, bp)};
    return BHD_OK;
  });
}

bhd_status bhd_body_from_json(const char* json, bhd_body** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    bhd::Json j;
    try {
      j = bhd::Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      BHD_THROW(Parse, e.what());
    }
    *out = new bhd_body{bhd::body_from_json(j)};
    return BHD_OK;
  });
}

bhd_status bhd_body_from_file(const char* path, bhd_body** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new bhd_body{bhd::load_body_file(path)};
    return BHD_OK;
  });
}

bhd_status bhd_body_to_json(const bhd_body* body, char** out) {
  return guard([&] {
    require(body, "body");
    require(out, "out");
    *out = copy_string(bhd::dump_report(bhd::body_to_json(body->body)));
    return BHD_OK;
  });
}

void bhd_body_free(bhd_body* body) { delete body; }

int bhd_body_dim(const bhd_body* body) { return body ? body->body.dim() : 0; }

bhd_status bhd_minkowski(const bhd_body* body, const double* x, size_t n, double* out) {
  return guard([&] {
    require(body, "body");
    require(x, "x");
    require(out, "out");
    if (n != static_cast<size_t>(body->body.dim())) {
      BHD_THROW(DimensionMismatch, "point in R^" << n << " for body in R^" << body->body.dim());
    }
    *out = body->body.minkowski(vec(x, static_cast<int>(n)));
    return BHD_OK;
  });
}

bhd_status bhd_parse_plane(const char* spec, int n, double* u, double* v) {
  return guard([&] {
    require(spec, "spec");
    require(u, "u");
    require(v, "v");
    const bhd::Plane2 p = bhd::parse_plane(spec, n);
    for (int i = 0; i < n; ++i) {
      u[i] = p.u()[i];
      v[i] = p.v()[i];
    }
    return BHD_OK;
  });
}

bhd_status bhd_section(const bhd_body* body, const double* u, const double* v, size_t radial_samples,
                       char** out_json) {
  return guard([&] {
    require(body, "body");
    require(out_json, "out_json");
    const bhd::SectionReport r = bhd::cross_section(body->body, plane_arg(body, u, v), radial_samples);
    *out_json = copy_string(bhd::dump_report(bhd::section_to_json(r)));
    return BHD_OK;
  });
}

bhd_status bhd_section_area(const bhd_body* body, const double* u, const double* v, double* out) {
  return guard([&] {
    require(body, "body");
    require(out, "out");
    *out = bhd::section_area(body->body, plane_arg(body, u, v));
    return BHD_OK;
  });
}

bhd_status bhd_density(const bhd_body* body, int degree, const double* coords, size_t len, uint64_t mc_samples,
                       uint64_t seed, char** out_json) {
  return guard([&] {
    require(body, "body");
    require(coords, "coords");
    require(out_json, "out_json");
    const int n = body->body.dim();
    if (degree < 1 || degree > n) BHD_THROW(InvalidArgument, "degree " << degree << " outside 1.." << n);
    if (len != bhd::subset_count(n, degree)) {
      BHD_THROW(DimensionMismatch, "expected " << bhd::subset_count(n, degree) << " coordinates, got " << len);
    }
    const bhd::KVector w(n, degree, std::vector<double>(coords, coords + len));
    bhd::DensityValue d;
    bhd::Json j;
    if (degree == 2 && !(n == 4 && mc_samples > 0)) {
      d = bhd::bh_density_2(body->body, w);
      j["method"] = "section";
    } else if (degree == n - 2) {
      d = bhd::bh_density_codim2(body->body, w, mc_samples, seed);
      j["method"] = "monte-carlo";
      j["mc_samples"] = mc_samples;
    } else {
      BHD_THROW(UnsupportedDimension, "density of degree " << degree << " in R^" << n << " is not supported");
    }
    j["value"] = d.value;
    j["stderr"] = d.standard_error ? bhd::Json(*d.standard_error) : bhd::Json(nullptr);
    j["body"] = d.body_label;
    j["norm"] = d.bivector_norm;
    *out_json = copy_string(bhd::dump_report(j));
    return BHD_OK;
  });
}

bhd_status bhd_contraction_gap(const bhd_body* body, const double params[4], const double* u, const double* v,
                               char** out_json) {
  return guard([&] {
    require(body, "body");
    require(params, "params");
    require(out_json, "out_json");
    const bhd::ProjectionW0 p{params[0], params[1], params[2], params[3]};
    const bhd::Plane2 plane = plane_arg(body, u, v);
    bhd::Json j;
    j["gap"] = bhd::contraction_gap(body->body, p, plane);
    j["area_factor"] = bhd::area_factor(p, plane);
    j["section_area"] = bhd::section_area(body->body, plane);
    j["w0_area"] = bhd::section_area(body->body, bhd::w0_plane(body->body.dim()));
    j["plane"] = bhd::plane_to_json(plane);
    *out_json = copy_string(bhd::dump_report(j));
    return BHD_OK;
  });
}

void bhd_certify_config_default(bhd_certify_config* config) {
  if (!config) return;
  const bhd::CertificateConfig d;
  *config = {};
  config->box_halfwidth = d.box_halfwidth;
  config->grid_n = d.grid_n;
  config->eps_count = d.eps_set.size();
  for (size_t i = 0; i < d.eps_set.size(); ++i) config->eps[i] = d.eps_set[i];
  config->extra_planes = d.extra_planes;
  config->seed = d.seed;
  config->gap_threshold = d.gap_threshold;
}

bhd_status bhd_certify(const bhd_body* body, const bhd_certify_config* config, int include_runtime, char** out_json) {
  return guard([&] {
    require(body, "body");
    require(out_json, "out_json");
    bhd::CertificateConfig cfg;
    if (config) {
      if (config->eps_count > BHD_MAX_EPS) BHD_THROW(InvalidArgument, "at most " << BHD_MAX_EPS << " epsilons");
      cfg.box_halfwidth = config->box_halfwidth;
      cfg.grid_n = config->grid_n;
      cfg.eps_set.assign(config->eps, config->eps + config->eps_count);
      cfg.extra_planes = config->extra_planes;
      cfg.seed = config->seed;
      cfg.gap_threshold = config->gap_threshold;
    }
    const bhd::Certificate cert = bhd::certify_no_contraction(body->body, cfg);
    *out_json = copy_string(bhd::dump_report(bhd::certificate_to_json(cert, include_runtime != 0)));
    if (!cert.success) {
      try {
        bhd::require_success(cert);
      } catch (const bhd::Error& e) {
        g_last_error = e.what();
      }
      return BHD_E_CERTIFICATE_FAILED;
    }
    return BHD_OK;
  });
}

bhd_status bhd_lemmas_csv(const bhd_body* body, const double* eps, size_t count, char** out_csv) {
  return guard([&] {
    require(body, "body");
    require(eps, "eps");
    require(out_csv, "out_csv");
    const std::vector<double> grid(eps, eps + count);
    struct Family {
      const char* name;
      int plane;
      bool has_bound;
      bhd::LemmaFamily lemma;
    };
    const Family families[] = {{"V1V2", 1, true, bhd::LemmaFamily::V1V2},
                               {"V3V4", 3, true, bhd::LemmaFamily::V3V4},
                               {"V5V6", 5, false, bhd::LemmaFamily::V1V2},
                               {"V7V8", 7, false, bhd::LemmaFamily::V1V2}};
    const int n = body->body.dim();
    const auto num = [](double x) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      return std::string(buf);
    };
    std::ostringstream os;
    os << "family,eps,lower_bound,exact_area,fitted_c\n";
    for (const Family& f : families) {
      const auto area = [&](double e) {
        return bhd::section_area(body->body, bhd::family_plane({f.plane, e}).embedded(n));
      };
      const bhd::TaylorFit fit = bhd::taylor_fit(area, grid);
      for (double e : grid) {
        os << f.name << ',' << num(e) << ',' << (f.has_bound ? num(bhd::lemma_lower_bound(f.lemma, e)) : "") << ','
           << num(area(e)) << ',' << num(fit.quadratic) << '\n';
      }
    }
    *out_csv = copy_string(os.str());
    return BHD_OK;
  });
}

bhd_status bhd_probe(const bhd_body* body, uint64_t trials, uint64_t seed, uint64_t mc_samples, char** out_json) {
  return guard([&] {
    require(body, "body");
    require(out_json, "out_json");
    bhd::ScanConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.mc_samples = mc_samples;
    *out_json = copy_string(bhd::dump_report(bhd::scan_to_json(bhd::semi_ellipticity_scan(body->body, cfg))));
    return BHD_OK;
  });
}

bhd_status bhd_report(const char* command, const char* config_echo_json, uint64_t seed, int deterministic,
                      const char* result_json, char** out_json) {
  return guard([&] {
    require(command, "command");
    require(result_json, "result_json");
    require(out_json, "out_json");
    bhd::Json echo = bhd::Json::object();
    bhd::Json result;
    try {
      if (config_echo_json) echo = bhd::Json::parse(config_echo_json);
      result = bhd::Json::parse(result_json);
    } catch (const nlohmann::json::exception& e) {
      BHD_THROW(Parse, e.what());
    }
    bhd::Json j = bhd::report_envelope(command, echo, seed, deterministic != 0);
    j["result"] = std::move(result);
    *out_json = copy_string(bhd::dump_report(j) + "\n");
    return BHD_OK;
  });
}

}  // extern "C"

// bhd: command-line front end over the C interface.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhd/bhd.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCertificate = 2;

struct ApiError {
  bhd_status status;
  std::string message;
};

void check(bhd_status s) {
  if (s != BHD_OK) throw ApiError{s, bhd_last_error()};
}

struct BodyDeleter {
  void operator()(bhd_body* b) const { bhd_body_free(b); }
};
using BodyPtr = std::unique_ptr<bhd_body, BodyDeleter>;

struct StringDeleter {
  void operator()(char* s) const { bhd_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct Common {
  std::string body = "rotated-cross4";
  int n = 4;
  double p = 3.0;
  int k = 3;
  int euclid_dim = 1;
  unsigned threads = 0;
  bool deterministic = false;
  std::string out;
  std::uint64_t seed = 1;
};

BodyPtr load_body(const Common& c) {
  bhd_body* raw = nullptr;
  const bool is_file = c.body.size() > 5 && c.body.substr(c.body.size() - 5) == ".json";
  if (is_file || std::filesystem::is_regular_file(c.body)) {
    check(bhd_body_from_file(c.body.c_str(), &raw));
  } else {
    bhd_builtin_params bp{c.n, c.p, c.k, c.euclid_dim};
    check(bhd_body_builtin(c.body.c_str(), &bp, &raw));
  }
  return BodyPtr(raw);
}

struct PlaneBasis {
  std::vector<double> u, v;
};

PlaneBasis plane_for(const bhd_body* body, const std::string& spec) {
  const int n = bhd_body_dim(body);
  PlaneBasis p{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  check(bhd_parse_plane(spec.c_str(), n, p.u.data(), p.v.data()));
  return p;
}

Json body_echo(const Common& c) {
  Json j;
  j["body"] = c.body;
  if (c.body == "euclid-n") j["n"] = c.n;
  if (c.body == "complex-lp") {
    j["p"] = c.p;
    j["k"] = c.k;
  }
  if (c.body == "product-c-b") j["euclid_dim"] = c.euclid_dim;
  return j;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ApiError{BHD_E_INVALID_ARGUMENT, "cannot write " + c.out};
  f << text;
}

void emit_report(const Common& c, const std::string& command, const Json& echo, const char* result) {
  char* out = nullptr;
  check(bhd_report(command.c_str(), echo.dump().c_str(), c.seed, c.deterministic ? 1 : 0, result, &out));
  CString hold(out);
  emit(c, out);
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--body", c.body, "builtin body (cross4, rotated-cross4, euclid-n, complex-lp, product-c-b) or JSON file")
      ->capture_default_str();
  sub->add_option("--n", c.n, "dimension for euclid-n")->check(CLI::Range(2, 8))->capture_default_str();
  sub->add_option("--p", c.p, "exponent for complex-lp")->check(CLI::Range(1.0, 1e6))->capture_default_str();
  sub->add_option("--k", c.k, "complex dimension for complex-lp")->check(CLI::Range(1, 4))->capture_default_str();
  sub->add_option("--euclid-dim", c.euclid_dim, "Euclidean factor dimension for product-c-b")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_flag("--deterministic", c.deterministic, "omit timestamp and runtime fields");
  if (with_seed) sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

std::vector<double> default_lemma_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(0.002 * i);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Busemann-Hausdorff area toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bhd_version());

  unsigned threads = 0;
  if (const char* env = std::getenv("BHD_THREADS")) {
    try {
      threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: BHD_THREADS must be a nonnegative integer, got \"" << env << "\"\n";
      return kExitUsage;
    }
  }
  app.add_option("--threads", threads, "worker threads (0 = machine parallelism; env BHD_THREADS)")
      ->check(CLI::Range(0u, 1024u));

  Common c;

  auto* section = app.add_subcommand("section", "central section of a body by a plane");
  add_common(section, c, false);
  std::string plane = "w0";
  std::size_t radial = 0;
  section->add_option("--plane", plane, "w0, v1:EPS..v8:EPS, v9, random:SEED or 2n numbers")->capture_default_str();
  section->add_option("--radial-samples", radial, "angles for radial sampling (0 = default)")
      ->check(CLI::Range(std::size_t{0}, std::size_t{1} << 24));

  auto* density = app.add_subcommand("density", "Busemann-Hausdorff density of a simple multivector");
  add_common(density, c, true);
  std::string dplane;
  std::vector<double> coords;
  int degree = 2;
  std::uint64_t mc_samples = 0;
  auto* dplane_opt = density->add_option("--plane", dplane, "plane spec; density of its unit bivector");
  density->add_option("--coords", coords, "lexicographic multivector coordinates")->delimiter(',')->excludes(dplane_opt);
  density->add_option("--degree", degree, "degree of --coords")->check(CLI::Range(1, 8))->capture_default_str();
  density->add_option("--mc-samples", mc_samples, "Monte Carlo samples for codimension-two densities")
      ->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1} << 40));

  auto* gap = app.add_subcommand("gap", "contraction gap of a projection onto W0 at a plane");
  add_common(gap, c, false);
  std::vector<double> proj{0.0, 0.0, 0.0, 0.0};
  std::string gplane = "v9";
  gap->add_option("--proj", proj, "a,b,c,d")->delimiter(',')->expected(4)->capture_default_str();
  gap->add_option("--plane", gplane, "plane spec")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "numeric no-contraction certificate");
  add_common(certify, c, true);
  bhd_certify_config cc;
  bhd_certify_config_default(&cc);
  std::vector<double> eps(cc.eps, cc.eps + cc.eps_count);
  certify->add_option("--box", cc.box_halfwidth, "parameter box half-width R (>= 2)")
      ->check(CLI::Range(2.0, 1e6))
      ->capture_default_str();
  certify->add_option("--grid", cc.grid_n, "grid points per axis")->check(CLI::Range(21, 129))->capture_default_str();
  certify->add_option("--eps", eps, "perturbation epsilons in (0, 0.2]")
      ->delimiter(',')
      ->check(CLI::Range(1e-12, 0.2))
      ->capture_default_str();
  certify->add_option("--extra-planes", cc.extra_planes, "seeded random planes")
      ->check(CLI::Range(0, 100000))
      ->capture_default_str();
  certify->add_option("--threshold", cc.gap_threshold, "gap threshold")->check(CLI::PositiveNumber)->capture_default_str();

  auto* lemmas = app.add_subcommand("lemmas", "section areas of the perturbation planes as CSV");
  add_common(lemmas, c, false);
  std::vector<double> lemma_eps = default_lemma_grid();
  lemmas->add_option("--eps", lemma_eps, "epsilons in (0, 0.05], at least 4 spanning a decade")
      ->delimiter(',')
      ->check(CLI::Range(1e-12, 0.05));

  auto* probe = app.add_subcommand("probe", "triangle-inequality scan over simple decompositions");
  add_common(probe, c, true);
  std::uint64_t trials = 1000;
  std::uint64_t probe_mc = 1000000;
  probe->add_option("--trials", trials, "number of trials")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
      ->capture_default_str();
  probe->add_option("--mc-samples", probe_mc, "Monte Carlo samples per density (R^6 bodies)")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  bhd_set_threads(threads);

  try {
    if (section->parsed()) {
      BodyPtr body = load_body(c);
      const PlaneBasis pb = plane_for(body.get(), plane);
      char* out = nullptr;
      check(bhd_section(body.get(), pb.u.data(), pb.v.data(), radial, &out));
      CString hold(out);
      Json echo = body_echo(c);
      echo["plane"] = plane;
      if (radial) echo["radial_samples"] = radial;
      emit_report(c, "section", echo, out);
    } else if (density->parsed()) {
      BodyPtr body = load_body(c);
      const int n = bhd_body_dim(body.get());
      Json echo = body_echo(c);
      char* out = nullptr;
      if (!coords.empty()) {
        echo["coords"] = coords;
        echo["degree"] = degree;
        check(bhd_density(body.get(), degree, coords.data(), coords.size(), mc_samples, c.seed, &out));
      } else {
        const std::string spec = dplane.empty() ? "w0" : dplane;
        echo["plane"] = spec;
        const PlaneBasis pb = plane_for(body.get(), spec);
        // Unit bivector u ^ v in lexicographic order.
        std::vector<double> w;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) w.push_back(pb.u[i] * pb.v[j] - pb.u[j] * pb.v[i]);
        check(bhd_density(body.get(), 2, w.data(), w.size(), mc_samples, c.seed, &out));
      }
      if (mc_samples) echo["mc_samples"] = mc_samples;
      CString hold(out);
      emit_report(c, "density", echo, out);
    } else if (gap->parsed()) {
      BodyPtr body = load_body(c);
      const PlaneBasis pb = plane_for(body.get(), gplane);
      char* out = nullptr;
      check(bhd_contraction_gap(body.get(), proj.data(), pb.u.data(), pb.v.data(), &out));
      CString hold(out);
      Json echo = body_echo(c);
      echo["proj"] = proj;
      echo["plane"] = gplane;
      emit_report(c, "gap", echo, out);
    } else if (certify->parsed()) {
      BodyPtr body = load_body(c);
      if (eps.empty() || eps.size() > BHD_MAX_EPS) {
        std::cerr << "error: --eps needs 1.." << BHD_MAX_EPS << " values\n";
        return kExitUsage;
      }
      cc.eps_count = eps.size();
      for (std::size_t i = 0; i < eps.size(); ++i) cc.eps[i] = eps[i];
      cc.seed = c.seed;
      char* out = nullptr;
      const bhd_status s = bhd_certify(body.get(), &cc, c.deterministic ? 0 : 1, &out);
      if (s != BHD_OK && s != BHD_E_CERTIFICATE_FAILED) check(s);
      CString hold(out);
      const std::string message = bhd_last_error();
      Json echo = body_echo(c);
      echo["box"] = cc.box_halfwidth;
      echo["grid"] = cc.grid_n;
      echo["eps"] = eps;
      echo["extra_planes"] = cc.extra_planes;
      echo["threshold"] = cc.gap_threshold;
      emit_report(c, "certify", echo, out);
      if (s == BHD_E_CERTIFICATE_FAILED) {
        std::cerr << "certificate failed: " << message << "\n";
        return kExitCertificate;
      }
    } else if (lemmas->parsed()) {
      BodyPtr body = load_body(c);
      char* out = nullptr;
      check(bhd_lemmas_csv(body.get(), lemma_eps.data(), lemma_eps.size(), &out));
      CString hold(out);
      emit(c, out);
    } else if (probe->parsed()) {
      BodyPtr body = load_body(c);
      char* out = nullptr;
      check(bhd_probe(body.get(), trials, c.seed, probe_mc, &out));
      CString hold(out);
      Json echo = body_echo(c);
      echo["trials"] = trials;
      if (bhd_body_dim(body.get()) == 6) echo["mc_samples"] = probe_mc;
      emit_report(c, "probe", echo, out);
    }
  } catch (const ApiError& e) {
    std::cerr << "error: " << bhd_status_name(e.status) << ": " << e.message << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

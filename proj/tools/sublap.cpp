#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "sublap/cheeger.hpp"
#include "sublap/io.hpp"
#include "sublap/polytope.hpp"
#include "sublap/sdp.hpp"
#include "sublap/spectral.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sublap;

constexpr const char* kVersion = "1.0.0";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBLAP_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

ordered_json instance_summary(const Instance& instance) {
  const auto& t = *instance.transformation;
  ordered_json summary;
  summary["path"] = instance.path;
  summary["format"] = format_name(instance.format);
  summary["n"] = t.n();
  summary["m"] = t.m();
  summary["degrees"] = t.degrees();
  summary["symmetric"] = t.is_symmetric();
  return summary;
}

ordered_json report_shell(const std::string& command, const Instance& instance,
                          std::uint64_t seed) {
  ordered_json report;
  report["tool"] = "sublap";
  report["version"] = kVersion;
  report["command"] = command;
  report["instance"] = instance_summary(instance);
  report["seed"] = seed;
  return report;
}

std::vector<int> to_vertex_list(Subset s, int n) {
  std::vector<int> vertices;
  for (int v = 0; v < n; ++v)
    if (s >> v & 1) vertices.push_back(v + 1);
  return vertices;
}

ordered_json cut_report_json(const CutReport& report, int n) {
  ordered_json out;
  out["set"] = to_vertex_list(report.s, n);
  out["cut"] = report.cut_s;
  out["cut_complement"] = report.cut_complement;
  out["volume"] = report.vol_s;
  out["volume_complement"] = report.vol_complement;
  out["phi"] = report.phi;
  return out;
}

struct Options {
  std::string input;
  std::uint64_t seed = default_seed();
  int threads = 1;
  bool timings = false;
  // spectral
  std::string mode = "diffusion";
  double eps = 0.0;
  int restarts = 4;
  bool emit_vector = false;
  // conductance
  std::string set_spec;
  bool brute = false;
  // cover / minnorm
  int function_index = 0;
  std::string cover_out;
  double tol = 1e-4;
};

Subset parse_set_spec(const std::string& spec, int n) {
  Subset s = 0;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const int v = std::stoi(item);
    if (v < 1 || v > n) throw InputError("--set: vertex index out of range");
    s |= Subset{1} << (v - 1);
  }
  if (s == 0) throw InputError("--set: empty set");
  return s;
}

std::chrono::steady_clock::time_point g_start;

int emit(ordered_json report, const Options& options) {
  if (options.timings) {
    const auto elapsed = std::chrono::steady_clock::now() - g_start;
    report["timings"]["total_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int run_spectral(const Options& options) {
  const Instance instance = load_instance(options.input);
  const auto& t = *instance.transformation;
  ordered_json report = report_shell("spectral", instance, options.seed);
  ordered_json& results = report["results"];
  results["mode"] = options.mode;

  if (t.m() == 0) {
    results["lambda"] = 0.0;
    return emit(report, options);
  }

  if (options.mode == "diffusion") {
    const LaplacianOperator op(t, LaplacianMode::normalized);
    const auto [lambda, eigen] = reference_lambda(op, options.restarts, options.seed);
    results["lambda"] = lambda;
    results["residual"] = eigen.residual;
    results["iterations"] = eigen.iterations;
    results["converged"] = eigen.converged;
    results["restarts"] = options.restarts;
    if (options.emit_vector) results["vector"] = std::vector<double>(
        eigen.z.data(), eigen.z.data() + eigen.z.size());
  } else if (options.mode == "sdp-sym" || options.mode == "sdp-gen") {
    if (options.mode == "sdp-sym" && !t.is_symmetric())
      throw InputError("--mode sdp-sym requires a symmetric instance");
    const SdpMode mode = options.mode == "sdp-sym" ? SdpMode::symmetric : SdpMode::general;
    const ApproxEigenResult approx = approx_eigenvalue(t, mode, options.eps, options.seed);
    results["lambda"] = approx.lambda_hat;
    results["sdp_value"] = approx.sdp_value;
    results["b_squared"] = approx.b_squared;
    results["scale_factor"] = approx.scale_factor;
    results["vertex_mode"] = approx.instance.vertex_mode;
    if (options.emit_vector) results["vector"] = std::vector<double>(
        approx.z.data(), approx.z.data() + approx.z.size());
  } else {
    throw InputError("unknown --mode: " + options.mode);
  }
  return emit(report, options);
}

int run_conductance(const Options& options) {
  const Instance instance = load_instance(options.input);
  const auto& t = *instance.transformation;
  ordered_json report = report_shell("conductance", instance, options.seed);
  ordered_json& results = report["results"];

  if (options.brute) {
    const auto [phi, argmin] = brute_force_phi(t);
    results["phi"] = phi;
    results["report"] = cut_report_json(conductance_of_set(t, argmin), t.n());
  } else if (!options.set_spec.empty()) {
    const Subset s = parse_set_spec(options.set_spec, t.n());
    results["report"] = cut_report_json(conductance_of_set(t, s), t.n());
  } else {
    throw InputError("conductance needs --set or --brute");
  }
  return emit(report, options);
}

int run_certify(const Options& options) {
  const Instance instance = load_instance(options.input);
  CertifyOptions certify_options;
  certify_options.restarts = options.restarts;
  certify_options.seed = options.seed;
  const CheegerCertificate cert = certify(*instance.transformation, certify_options);

  ordered_json report = report_shell("certify", instance, options.seed);
  ordered_json& results = report["results"];
  const int n = instance.transformation->n();
  results["phi"] = cert.phi;
  results["phi_argmin"] = to_vertex_list(cert.phi_argmin, n);
  results["lambda_tilde"] = cert.lambda_tilde;
  results["rayleigh_left"] = cert.rayleigh_left;
  results["sweep"] = cut_report_json(cert.sweep, n);
  results["left_holds"] = cert.left_holds;
  results["right_holds"] = cert.right_holds;
  results["sandwich_holds"] = cert.sandwich_holds;
  emit(report, options);
  return cert.sandwich_holds ? 0 : 1;
}

int run_cover(const Options& options) {
  const Instance instance = load_instance(options.input);
  const auto& t = *instance.transformation;
  if (options.function_index < 0 || options.function_index >= t.m())
    throw InputError("--function-index out of range");
  const SubmodularOracle& oracle = t.function(options.function_index);

  const CoverSet cover = cover_base_polytope(oracle, options.eps > 0 ? options.eps : 0.5);
  if (!options.cover_out.empty()) write_cover_file(options.cover_out, cover);

  ordered_json report = report_shell("cover", instance, options.seed);
  ordered_json& results = report["results"];
  results["function_index"] = options.function_index;
  results["eps"] = options.eps > 0 ? options.eps : 0.5;
  results["certified_radius"] = cover.radius;
  results["size"] = cover.points.size();
  results["skipped"] = cover.skipped;
  if (!options.cover_out.empty()) results["file"] = options.cover_out;
  return emit(report, options);
}

int run_minnorm(const Options& options) {
  const Instance instance = load_instance(options.input);
  const auto& t = *instance.transformation;
  if (options.function_index < 0 || options.function_index >= t.m())
    throw InputError("--function-index out of range");

  const PolytopeHandle handle(t.function(options.function_index));
  const WolfeResult wolfe = wolfe_min_norm(handle, options.tol);

  ordered_json report = report_shell("minnorm", instance, options.seed);
  ordered_json& results = report["results"];
  results["function_index"] = options.function_index;
  results["tolerance"] = options.tol;
  results["squared_norm"] = wolfe.squared_norm;
  results["point"] = std::vector<double>(wolfe.w.data(), wolfe.w.data() + wolfe.w.size());
  results["iterations"] = wolfe.iterations;
  return emit(report, options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for submodular transformations"};
  app.require_subcommand(1);
  Options options;

  auto add_common = [&options](CLI::App* cmd) {
    cmd->add_option("input", options.input, "instance file")->required();
    cmd->add_option("--seed", options.seed, "rng seed (default: SUBLAP_SEED or 0)");
    cmd->add_option("--threads", options.threads, "worker cap");
    cmd->add_flag("--timings", options.timings, "include wall-clock timings in the report");
  };

  CLI::App* spectral = app.add_subcommand("spectral", "eigenvalue estimation");
  add_common(spectral);
  spectral->add_option("--mode", options.mode, "diffusion | sdp-sym | sdp-gen");
  spectral->add_option("--eps", options.eps, "cover accuracy (0 = explicit vertices)");
  spectral->add_option("--restarts", options.restarts, "diffusion restarts");
  spectral->add_flag("--emit-vector", options.emit_vector, "include the vector in the report");

  CLI::App* conductance = app.add_subcommand("conductance", "conductance of a set or optimum");
  add_common(conductance);
  conductance->add_option("--set", options.set_spec, "comma-separated 1-indexed vertex list");
  conductance->add_flag("--brute", options.brute, "exhaustive minimum over all sets");

  CLI::App* certify = app.add_subcommand("certify", "two-sided Cheeger certification");
  add_common(certify);
  certify->add_option("--restarts", options.restarts, "diffusion restarts");

  CLI::App* cover = app.add_subcommand("cover", "base polytope cover");
  add_common(cover);
  cover->add_option("--function-index", options.function_index, "0-based function index");
  cover->add_option("--eps", options.eps, "relative cover accuracy");
  cover->add_option("--out", options.cover_out, "cover output file");

  CLI::App* minnorm = app.add_subcommand("minnorm", "minimum-norm point of a base polytope");
  add_common(minnorm);
  minnorm->add_option("--function-index", options.function_index, "0-based function index");
  minnorm->add_option("--tol", options.tol, "additive tolerance");

  g_start = std::chrono::steady_clock::now();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectral->parsed()) return run_spectral(options);
    if (conductance->parsed()) return run_conductance(options);
    if (certify->parsed()) return run_certify(options);
    if (cover->parsed()) return run_cover(options);
    if (minnorm->parsed()) return run_minnorm(options);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

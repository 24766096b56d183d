// pfrkit command-line front end.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pfrkit/commands.hpp"
#include "pfrkit/error.hpp"
#include "pfrkit/extract.hpp"
#include "pfrkit/generators.hpp"
#include "pfrkit/setfile.hpp"
#include "pfrkit/structured.hpp"
#include "pfrkit/version.hpp"

namespace {

using pfrkit::Json;

struct LoadedSet {
  pfrkit::F2Set set;
  Json info;
};

LoadedSet load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pfrkit::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  pfrkit::F2Set set(1);
  try {
    set = pfrkit::parse_set_text(text);
  } catch (const pfrkit::ParseError& e) {
    throw pfrkit::Error(path + ": " + e.what());
  }
  Json info = Json::object();
  info["path"] = path;
  info["digest"] = pfrkit::fnv1a64_digest(text);
  info["dim"] = set.dim();
  info["size"] = set.size();
  return {std::move(set), std::move(info)};
}

class Run {
 public:
  Run(std::string name, unsigned threads, bool report_to_stdout = true)
      : threads_(threads), report_to_stdout_(report_to_stdout) {
    report_["tool"] = "pfrkit";
    report_["version"] = pfrkit::kVersion;
    report_["command"] = {{"name", std::move(name)}, {"args", Json::object()}};
    report_["input"] = nullptr;
  }

  Json& args() { return report_["command"]["args"]; }
  void set_input(Json info) { report_["input"] = std::move(info); }

  int finish(Json result, const std::string& status, int exit_code, const Json& timings,
             const std::string& out_path) {
    report_["result"] = std::move(result);
    report_["status"] = status;
    report_["exit_code"] = exit_code;
    report_["runtime"] = {{"threads", threads_}, {"timings_ms", timings}};
    write(out_path);
    return exit_code;
  }

  int fail(const std::string& message, const std::string& out_path) {
    std::cerr << "pfrkit: error: " << message << "\n";
    return finish({{"error", message}}, "error", pfrkit::kExitError, Json::object(), out_path);
  }

 private:
  void write(const std::string& out_path) const {
    const std::string text = report_.dump(2) + "\n";
    if (out_path.empty()) {
      if (report_to_stdout_) std::cout << text;
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw pfrkit::Error("cannot write '" + out_path + "'");
    out << text;
  }

  unsigned threads_;
  bool report_to_stdout_;
  Json report_ = Json::object();
};

std::string status_of(pfrkit::PipelineStatus s) { return std::string(pfrkit::to_string(s)); }

int exit_code_of(pfrkit::PipelineStatus s) {
  switch (s) {
    case pfrkit::PipelineStatus::ok: return pfrkit::kExitOk;
    case pfrkit::PipelineStatus::gate_failed: return pfrkit::kExitGate;
    case pfrkit::PipelineStatus::check_failed: return pfrkit::kExitCheck;
  }
  return pfrkit::kExitError;
}

template <class Body>
int guarded(Run& run, const std::string& out_path, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    try {
      return run.fail(e.what(), out_path);
    } catch (const std::exception& inner) {
      std::cerr << "pfrkit: error: " << inner.what() << "\n";
      return pfrkit::kExitError;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact additive-combinatorics toolkit over F_2^n"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pfrkit::kVersion));

  unsigned threads = 1;
  std::string input;
  std::string out_path;
  std::string L_text;
  std::string eps_text;
  std::string astar_text;
  bool force = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads (results do not depend on it)")
        ->check(CLI::Range(1U, 1024U));
    cmd->add_option("--out", out_path, "Report path (stdout when omitted)");
  };

  // analyze
  std::string method_text = "naive";
  auto* analyze = app.add_subcommand("analyze", "Profile, doubling, span and fiber histogram");
  analyze->add_option("--input", input, "Set file")->required();
  analyze->add_option("--method", method_text, "Profile kernel")
      ->check(CLI::IsMember({"naive", "wht"}));
  add_common(analyze);

  // verify
  std::vector<std::string> checks;
  std::vector<std::string> delta_texts;
  auto* verify = app.add_subcommand("verify", "Check identities and lemma inequalities exactly");
  verify->add_option("--input", input, "Set file")->required();
  verify->add_option("--checks", checks, "Comma-separated subset of " +
                                             std::string("mass,lemma6,lemma7,lemma8,eq6,fr,containments"))
      ->delimiter(',');
  verify->add_option("--L", L_text, "Heavy-fiber parameter L (default 2)");
  verify->add_option("--eps", eps_text, "Structured-case eps, needed for containments");
  verify->add_option("--astar", astar_text, "a* as a binary string (scanned when omitted)");
  verify->add_option("--delta", delta_texts, "Extra delta for S(d)+S(d) containment")
      ->delimiter(',');
  add_common(verify);

  // extract
  auto* extract = app.add_subcommand("extract", "Run an extraction pipeline");
  extract->require_subcommand(1);
  std::string energy_floor_text;
  auto* unstructured = extract->add_subcommand("unstructured", "Typical set, BSG, components");
  unstructured->add_option("--input", input, "Set file")->required();
  unstructured->add_option("--L", L_text, "Heavy-fiber parameter L")->required();
  unstructured->add_option("--energy-floor", energy_floor_text, "Pair-energy gate (default 1/L^6)");
  unstructured->add_flag("--force", force, "Continue past failed hypothesis gates");
  add_common(unstructured);

  bool scan = false;
  auto* structured = extract->add_subcommand("structured", "Near-full fibers and the level chain");
  structured->add_option("--input", input, "Set file")->required();
  auto* astar_opt = structured->add_option("--astar", astar_text, "a* as a binary string");
  auto* scan_opt = structured->add_flag("--scan-astar", scan, "Choose a* by the averaging scan");
  astar_opt->excludes(scan_opt);
  structured->add_option("--eps", eps_text, "eps")->required();
  structured->add_option("--L", L_text, "L")->required();
  structured->add_flag("--force", force, "Continue past failed hypothesis gates");
  add_common(structured);

  // generate
  pfrkit::GeneratorSpec spec;
  std::string density_text = "1";
  std::uint64_t seed = 0;
  std::string report_path;
  auto* generate = app.add_subcommand("generate", "Write a seeded instance as a set file");
  generate->add_option("family", spec.family, "Generator family")
      ->required()
      ->check(CLI::IsMember({"weight-one-prefix", "subspace", "dense-subspace-sample",
                             "subspace-plus-points", "random"}));
  generate->add_option("--n", spec.n, "Dimension")->required();
  generate->add_option("--t", spec.t, "Prefix length (weight-one-prefix)");
  generate->add_option("--d", spec.d, "Subspace dimension");
  generate->add_option("--density", density_text, "Sample density (dense-subspace-sample)");
  generate->add_option("--k", spec.k, "Extra points (subspace-plus-points)");
  generate->add_flag("--same-coset", spec.same_coset, "Put all extra points in one coset");
  generate->add_option("--m", spec.m, "Set size (random)");
  auto* seed_opt = generate->add_option("--seed", seed, "Seed for seeded families");
  generate->add_option("--out", out_path, "Set file path (stdout when omitted)");
  generate->add_option("--report", report_path, "Optional run report path");

  // bench
  pfrkit::BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Naive versus Walsh-Hadamard profile kernels");
  bench->add_option("--n-min", bench_opts.n_min, "Smallest dimension");
  bench->add_option("--n-max", bench_opts.n_max, "Largest dimension");
  bench->add_option("--seed", bench_opts.seed, "Seed")->required();
  bench->add_option("--density", density_text, "Set density per dimension (default 1/2)");
  bench->add_option("--samples", bench_opts.samples, "Sampled fibers above the naive cap");
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pfrkit::kExitError;
  }

  if (analyze->parsed()) {
    Run run("analyze", threads);
    return guarded(run, out_path, [&] {
      run.args()["input"] = input;
      run.args()["method"] = method_text;
      LoadedSet loaded = load_input(input);
      run.set_input(loaded.info);
      auto outcome = pfrkit::analyze_command(loaded.set, pfrkit::parse_profile_method(method_text),
                                             threads);
      return run.finish(std::move(outcome.result), outcome.status, outcome.exit_code,
                        outcome.timings, out_path);
    });
  }

  if (verify->parsed()) {
    Run run("verify", threads);
    return guarded(run, out_path, [&] {
      pfrkit::VerifyOptions opts;
      opts.threads = threads;
      if (!L_text.empty()) opts.L = pfrkit::parse_rational(L_text);
      if (!eps_text.empty()) opts.eps = pfrkit::parse_rational(eps_text);
      if (!checks.empty()) {
        opts.checks = checks;
      } else if (!opts.eps) {
        opts.checks.erase(std::remove(opts.checks.begin(), opts.checks.end(), "containments"),
                          opts.checks.end());
      }
      for (const auto& d : delta_texts) opts.deltas.push_back(pfrkit::parse_rational(d));
      if (!astar_text.empty()) opts.a_star = pfrkit::F2Vector::from_binary(astar_text);
      Json list = Json::array();
      for (const auto& c : opts.checks) list.push_back(c);
      run.args()["input"] = input;
      run.args()["checks"] = std::move(list);
      run.args()["L"] = pfrkit::to_string(opts.L);
      run.args()["eps"] = opts.eps ? Json(pfrkit::to_string(*opts.eps)) : Json(nullptr);
      run.args()["astar"] = astar_text.empty() ? Json(nullptr) : Json(astar_text);
      Json deltas = Json::array();
      for (const auto& d : opts.deltas) deltas.push_back(pfrkit::to_string(d));
      run.args()["deltas"] = std::move(deltas);
      LoadedSet loaded = load_input(input);
      run.set_input(loaded.info);
      auto outcome = pfrkit::verify_command(loaded.set, opts);
      return run.finish(std::move(outcome.result), outcome.status, outcome.exit_code,
                        outcome.timings, out_path);
    });
  }

  if (unstructured->parsed()) {
    Run run("extract unstructured", threads);
    return guarded(run, out_path, [&] {
      pfrkit::UnstructuredOptions opts;
      opts.force = force;
      opts.threads = threads;
      const pfrkit::Rational L = pfrkit::parse_rational(L_text);
      if (!energy_floor_text.empty()) opts.energy_floor = pfrkit::parse_rational(energy_floor_text);
      run.args()["input"] = input;
      run.args()["L"] = pfrkit::to_string(L);
      run.args()["force"] = force;
      run.args()["energy_floor"] =
          opts.energy_floor ? Json(pfrkit::to_string(*opts.energy_floor)) : Json(nullptr);
      LoadedSet loaded = load_input(input);
      run.set_input(loaded.info);
      const auto start = std::chrono::steady_clock::now();
      const pfrkit::ExtractionReport report = pfrkit::unstructured_pipeline(loaded.set, L, opts);
      const Json timings = {
          {"pipeline", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                           .count()}};
      return run.finish(pfrkit::to_json(report), status_of(report.status()),
                        exit_code_of(report.status()), timings, out_path);
    });
  }

  if (structured->parsed()) {
    Run run("extract structured", threads);
    return guarded(run, out_path, [&] {
      if (astar_text.empty() && !scan) throw pfrkit::Error("one of --astar or --scan-astar is required");
      pfrkit::StructuredOptions opts;
      opts.force = force;
      opts.threads = threads;
      const pfrkit::Rational eps = pfrkit::parse_rational(eps_text);
      const pfrkit::Rational L = pfrkit::parse_rational(L_text);
      run.args()["input"] = input;
      run.args()["astar"] = astar_text.empty() ? Json(nullptr) : Json(astar_text);
      run.args()["scan_astar"] = scan;
      run.args()["eps"] = pfrkit::to_string(eps);
      run.args()["L"] = pfrkit::to_string(L);
      run.args()["force"] = force;
      LoadedSet loaded = load_input(input);
      run.set_input(loaded.info);
      const auto start = std::chrono::steady_clock::now();
      Json scan_json = nullptr;
      pfrkit::F2Vector a_star = pfrkit::F2Vector::zero(loaded.set.dim());
      if (scan) {
        if (loaded.set.empty()) throw pfrkit::EmptyInput("empty set");
        const auto profile = pfrkit::symmetry_profile(loaded.set, pfrkit::ProfileMethod::naive, threads);
        const auto found = pfrkit::scan_astar(profile, L);
        scan_json = pfrkit::to_json(found, loaded.set.dim());
        a_star = pfrkit::F2Vector(found.a_star, loaded.set.dim());
      } else {
        a_star = pfrkit::F2Vector::from_binary(astar_text);
      }
      pfrkit::ExtractionReport report = pfrkit::structured_pipeline(loaded.set, a_star, eps, L, opts);
      if (scan) report.witnesses["astar_scan"] = std::move(scan_json);
      const Json timings = {
          {"pipeline", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                           .count()}};
      return run.finish(pfrkit::to_json(report), status_of(report.status()),
                        exit_code_of(report.status()), timings, out_path);
    });
  }

  if (generate->parsed()) {
    Run run("generate", 1, false);
    return guarded(run, report_path, [&] {
      spec.density = pfrkit::parse_rational(density_text);
      if (seed_opt->count() > 0) spec.seed = seed;
      const auto start = std::chrono::steady_clock::now();
      const pfrkit::F2Set set = pfrkit::generate(spec);
      const std::string text = pfrkit::format_set_text(set);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw pfrkit::Error("cannot write '" + out_path + "'");
        out << text;
      }
      if (report_path.empty()) return pfrkit::kExitOk;
      run.args() = pfrkit::to_json(spec);
      run.args()["out"] = out_path.empty() ? Json(nullptr) : Json(out_path);
      Json result = {{"size", set.size()}, {"dim", set.dim()},
                     {"digest", pfrkit::fnv1a64_digest(text)}};
      const Json timings = {
          {"generate", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                           .count()}};
      return run.finish(std::move(result), "ok", pfrkit::kExitOk, timings, report_path);
    });
  }

  if (bench->parsed()) {
    Run run("bench", threads);
    return guarded(run, out_path, [&] {
      bench_opts.threads = threads;
      if (bench->get_option("--density")->count() > 0) {
        bench_opts.density = pfrkit::parse_rational(density_text);
      }
      run.args()["n_min"] = bench_opts.n_min;
      run.args()["n_max"] = bench_opts.n_max;
      run.args()["seed"] = bench_opts.seed;
      run.args()["density"] = pfrkit::to_string(bench_opts.density);
      run.args()["samples"] = bench_opts.samples;
      auto outcome = pfrkit::bench_command(bench_opts);
      return run.finish(std::move(outcome.result), outcome.status, outcome.exit_code,
                        outcome.timings, out_path);
    });
  }
  return pfrkit::kExitError;
}

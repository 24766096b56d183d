// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "pfrkit/check.hpp"
#include "pfrkit/error.hpp"
#include "pfrkit/extract.hpp"
#include "pfrkit/generators.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/profile.hpp"
#include "pfrkit/stats.hpp"
#include "pfrkit/structured.hpp"

using namespace pfrkit;

namespace {

// Wall-clock limits in seconds.
constexpr double kMassLimit = 10;
constexpr double kBijectionLimit = 30;
constexpr double kMomentLimit = 120;
constexpr double kUnstructuredPerInstanceLimit = 60;
constexpr double kWht20Limit = 5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << "s";
  return out.str();
}

F2Set family_instance(int family, std::uint64_t seed) {
  const int n = 4 + static_cast<int>(seed % 13);  // 4..16
  switch (family) {
    case 0: return gen_weight_one_prefix(n, 1 + static_cast<int>(seed % n));
    case 1: return gen_subspace(n, static_cast<int>(seed % std::min(n, 10)));
    case 2: return gen_dense_subspace_sample(n, std::min(n, 9), Rational(1 + seed % 4, 4), seed);
    case 3: return gen_subspace_plus_points(n, std::min(n - 1, 8), 1 + seed % 8, seed, seed % 2 == 0);
    default: return gen_random(n, 1 + (seed * 13) % 400 % (std::uint64_t{1} << std::min(n, 8)), seed);
  }
}

/// 50 sets with |A| <= 24 for the moment criteria.
std::vector<F2Set> moment_sets() {
  std::vector<F2Set> out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const std::uint64_t m = 1 + (seed * 7) % std::min<std::uint64_t>(24, std::uint64_t{1} << n);
    switch (seed % 3) {
      case 0: out.push_back(gen_random(n, m, seed)); break;
      case 1: out.push_back(gen_subspace_plus_points(n, std::min(n - 1, 3), 1 + seed % 4, seed)); break;
      default: out.push_back(gen_weight_one_prefix(n, 1 + static_cast<int>(seed % n))); break;
    }
  }
  return out;
}

Outcome criterion1() {
  Timer t;
  int count = 0;
  for (int family = 0; family < 5; ++family) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto p = symmetry_profile(family_instance(family, seed));
      ++count;
      if (p.total_mass() != BigInt(p.set_size()) * p.set_size()) return {false, "mass identity broken"};
      if (p.mean_fiber() != Rational(p.set_size()) / p.doubling()) return {false, "mean identity broken"};
    }
  }
  const double s = t.seconds();
  return {s < kMassLimit, std::to_string(count) + " instances in " + fmt_seconds(s)};
}

Outcome criterion2() {
  Timer t;
  std::uint64_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 5 + static_cast<int>(seed % 4);
    const F2Set a = gen_random(n, 5 + seed % 16, seed);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        ++pairs;
        if (!lemma4_bijection_check(a, a.at(i), a.at(j)).passed()) return {false, "bijection failed"};
      }
    }
  }
  const double s = t.seconds();
  return {s < kBijectionLimit, std::to_string(pairs) + " pairs in " + fmt_seconds(s)};
}

Outcome criterion3() {
  Timer t;
  for (const F2Set& a : moment_sets()) {
    const auto p = symmetry_profile(a);
    if (expectation_y2(p, MomentMethod::closed_form) != expectation_y2(p, MomentMethod::brute))
      return {false, "E[Y^2] routes differ"};
    if (expectation_z(p, MomentMethod::closed_form) != expectation_z(p, MomentMethod::brute))
      return {false, "E[Z] routes differ"};
  }
  const double s = t.seconds();
  return {s < kMomentLimit, "50 sets in " + fmt_seconds(s)};
}

Outcome criterion4() {
  int count = 0;
  for (const F2Set& a : moment_sets()) {
    const auto p = symmetry_profile(a);
    const Rational k = p.doubling();
    if (expectation_z(p) * 16 * k * k < Rational(p.set_size())) return {false, "lower bound violated"};
    ++count;
  }
  return {true, std::to_string(count) + " instances"};
}

Outcome criterion5() {
  int applicable = 0;
  int total = 0;
  auto consider = [&](const F2Set& a) {
    const auto p = symmetry_profile(a);
    for (const Rational L : {Rational(2), Rational(4), Rational(8)}) {
      ++total;
      if (!heavy_fiber_hypothesis(p, L)) continue;
      ++applicable;
      const Rational k = p.doubling();
      const Rational m = p.set_size();
      if (expectation_y2(p) * pow(k, 4) > 6 * pow(L, 4) * m * m) return false;
    }
    return true;
  };
  for (const F2Set& a : moment_sets())
    if (!consider(a)) return {false, "bound violated"};
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    if (!consider(gen_random(10 + static_cast<int>(seed % 3), 20 + 6 * seed, seed))) return {false, "bound violated"};
  return {applicable > 0, std::to_string(applicable) + " of " + std::to_string(total) +
                              " (set, L) pairs satisfy the hypothesis"};
}

Outcome criterion6() {
  int count = 0;
  for (const F2Set& a : moment_sets()) {
    const auto r = pr_z_positive(symmetry_profile(a));
    if (!r.chain_holds) return {false, "chain violated"};
    if (r.expectation_y2 > 0 && r.pr_z_positive * r.expectation_y2 < r.expectation_z * r.expectation_z)
      return {false, "second-moment bound violated"};
    ++count;
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = pr_z_positive(symmetry_profile(gen_random(9, 40 + 10 * seed, seed)));
    if (!r.chain_holds) return {false, "chain violated"};
    ++count;
  }
  return {true, std::to_string(count) + " instances"};
}

Outcome criterion7() {
  int checks = 0;
  int flagged = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int d = 4 + static_cast<int>(seed % 9);  // 4..12
    const F2Set a = gen_subspace_plus_points(d + 2, d, 1 + seed % 3, seed, seed % 2 == 1);
    const auto p = symmetry_profile(a);
    for (const Rational eps : {Rational(1), Rational(3, 2), Rational(3)}) {
      const auto b = structured_B(p, F2Vector(0, a.dim()), eps);
      for (const auto& c : containment_checks(p, b.set, eps)) {
        ++checks;
        if (c.failed()) return {false, c.name + " failed"};
        if (c.status == CheckStatus::flagged) ++flagged;
      }
    }
  }
  return {true, std::to_string(checks) + " containments, " + std::to_string(flagged) + " flagged"};
}

Outcome criterion8() {
  int applicable = 0;
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const F2Set a = gen_subspace_plus_points(11, 8, 1 + seed % 6, seed, seed % 2 == 0);
    const auto p = symmetry_profile(a);
    for (const Rational eps : {Rational(2), Rational(3), Rational(4)}) {
      for (const Rational L : {Rational(1), Rational(2)}) {
        ChainReport chain;
        try {
          chain = chain_select(p, eps, L);
        } catch (const HypothesisError&) {
          continue;
        }
        ++runs;
        for (const auto& c : chain.checks) {
          if (c.name == "chain_pigeonhole" && c.passed()) ++applicable;
          if (c.failed()) return {false, c.name + " failed"};
        }
      }
    }
  }
  return {applicable > 0, std::to_string(applicable) + " of " + std::to_string(runs) +
                              " chains meet the endpoint hypotheses"};
}

Outcome criterion9() {
  int gated = 0;
  int ran = 0;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 12 + static_cast<int>(seed % 3);
    const F2Set a = gen_dense_subspace_sample(n, 10, Rational(5 + seed % 3, 8), seed);
    Timer t;
    const auto report = unstructured_pipeline(a, 2);
    worst = std::max(worst, t.seconds());
    if (report.status() == PipelineStatus::gate_failed) {
      ++gated;
      continue;
    }
    ++ran;
    if (!report.completed()) return {false, "pipeline stopped without a gate failure"};
    for (const auto& c : report.checks)
      if (c.failed()) return {false, c.name + " failed"};
    const F2Set& b = *report.extracted;
    SpanBasis cp(a.dim());
    for (const auto& w : report.witnesses.at("bsg").at("elements"))
      cp.insert(F2Vector::from_binary(w.get<std::string>()));
    for (auto x : b)
      for (auto y : b)
        if (!cp.contains(x ^ y)) return {false, "2B not inside span(C')"};
    if (span_basis(b).span_size() > 2 * sumset_span_basis(b).span_size())
      return {false, "affine span step violated"};
  }
  return {ran > 0 && worst < kUnstructuredPerInstanceLimit,
          std::to_string(ran) + " pipelines, " + std::to_string(gated) + " gated, slowest " +
              fmt_seconds(worst)};
}

Outcome criterion10() {
  for (int t = 2; t <= 16; ++t) {
    const F2Set a = gen_weight_one_prefix(t, t);
    if (sumset(a, a).size() != static_cast<std::size_t>(1 + t * (t - 1) / 2)) return {false, "sumset size"};
    if (span_basis(a).span_size() != pow2(static_cast<unsigned>(t))) return {false, "span size"};
    const auto fr = freiman_ruzsa_check(a);
    if (!fr.passed() || fr.details.at("ceil_holds") != true) return {false, "Freiman-Ruzsa check"};
  }
  return {true, "t = 2..16"};
}

Outcome criterion11() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 13);  // 2..14
    const std::uint64_t cap = std::uint64_t{1} << n;
    const F2Set a = gen_random(n, 1 + (seed * 97) % std::min<std::uint64_t>(cap, 3000), seed);
    if (!(symmetry_profile(a, ProfileMethod::naive) == symmetry_profile(a, ProfileMethod::wht)))
      return {false, "kernels differ"};
  }
  const F2Set big = gen_random(20, std::uint64_t{1} << 19, 1);
  Timer t;
  const auto p = symmetry_profile(big, ProfileMethod::wht);
  const double s = t.seconds();
  return {s < kWht20Limit && p.total_mass() == BigInt(big.size()) * big.size(),
          "100 sets equal; n = 20, |A| = 2^19 in " + fmt_seconds(s)};
}

int shell(const std::string& cmd, std::string* out) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out->append(buf, got);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion12() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("pfrkit_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = std::string("'") + PFRKIT_CLI_PATH + "'";
  const std::string d = (dir / "d.txt").string();
  const std::string p = (dir / "p.txt").string();
  std::string ignored;
  shell(cli + " generate dense-subspace-sample --n 11 --d 9 --density 3/4 --seed 5 --out '" + d + "'", &ignored);
  shell(cli + " generate subspace-plus-points --n 12 --d 9 --k 3 --seed 5 --out '" + p + "'", &ignored);
  const std::vector<std::string> commands = {
      "analyze --input '" + d + "'",
      "analyze --method wht --input '" + d + "'",
      "verify --input '" + d + "' --eps 2",
      "extract unstructured --input '" + d + "' --L 2",
      "extract structured --input '" + p + "' --scan-astar --eps 4 --L 1 --force",
      "bench --n-min 6 --n-max 9 --seed 3",
  };
  int compared = 0;
  Outcome outcome;
  for (const auto& c : commands) {
    std::string reference;
    int ref_code = shell(cli + " " + c + " --threads 1", &reference);
    for (const char* threads : {"1", "3", "8"}) {
      std::string out;
      const int code = shell(cli + " " + c + " --threads " + threads, &out);
      try {
        Json a = Json::parse(reference);
        Json b = Json::parse(out);
        a.erase("runtime");
        b.erase("runtime");
        if (code != ref_code || a.dump() != b.dump()) {
          outcome = {false, "differs: " + c + " --threads " + threads};
        }
      } catch (const std::exception&) {
        outcome = {false, "unparseable report: " + c};
      }
      ++compared;
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (outcome.pass) outcome.detail = std::to_string(compared) + " runs identical modulo runtime";
  return outcome;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"mass identity", criterion1},
      {"pair-count bijection", criterion2},
      {"cross-method moments", criterion3},
      {"E[Z] lower bound", criterion4},
      {"conditional E[Y^2] bound", criterion5},
      {"second-moment bound", criterion6},
      {"structured containments", criterion7},
      {"chain pigeonhole", criterion8},
      {"unstructured end to end", criterion9},
      {"tightness family", criterion10},
      {"kernel equivalence", criterion11},
      {"determinism", criterion12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}

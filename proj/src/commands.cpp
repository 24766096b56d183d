#include "pfrkit/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "pfrkit/error.hpp"
#include "pfrkit/generators.hpp"
#include "pfrkit/span.hpp"
#include "pfrkit/stats.hpp"
#include "pfrkit/structured.hpp"

namespace pfrkit {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void tally(Json& summary, const CheckResult& check) {
  const std::string key(to_string(check.status));
  summary[key] = summary.value(key, 0) + 1;
}

CheckResult bijection_sweep(const F2Set& a) {
  const std::uint64_t m = a.size();
  const std::uint64_t all = m * m;
  const std::uint64_t affordable = std::max<std::uint64_t>(1, kBijectionWorkBudget / std::max<std::uint64_t>(1, all));
  const std::uint64_t pairs = std::min(all, affordable);
  std::uint64_t failures = 0;
  Json first_failure = nullptr;
  for (std::uint64_t k = 0; k < pairs; ++k) {
    const std::uint64_t idx = pairs == all ? k : k * all / pairs;
    const F2Vector a1 = a.at(idx / m);
    const F2Vector a2 = a.at(idx % m);
    const CheckResult c = lemma4_bijection_check(a, a1, a2);
    if (c.failed()) {
      if (failures == 0) first_failure = c.details;
      ++failures;
    }
  }
  CheckResult out = make_check("lemma8_bijection", failures == 0);
  out.details["pairs_checked"] = pairs;
  out.details["exhaustive"] = pairs == all;
  out.details["failures"] = failures;
  if (failures > 0) out.details["first_failure"] = first_failure;
  return out;
}

}  // namespace

std::string fnv1a64_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

CommandOutcome analyze_command(const F2Set& a, ProfileMethod method, unsigned threads) {
  CommandOutcome out;
  Stopwatch sw;
  const SymmetryProfile p = symmetry_profile(a, method, threads);
  out.timings["profile"] = sw.elapsed_ms();
  Stopwatch sw_span;
  const SpanBasis basis = span_basis(a);
  out.timings["span"] = sw_span.elapsed_ms();

  Json& r = out.result;
  r["dim"] = a.dim();
  r["size"] = a.size();
  r["sumset_size"] = p.sumset_size();
  r["doubling"] = rational_json(p.doubling());
  r["span"] = {{"rank", basis.rank()}, {"size", bigint_json(basis.span_size())}};
  r["profile_method"] = std::string(to_string(method));
  r["mean_fiber"] = rational_json(p.mean_fiber());
  const auto hist = p.histogram();
  Json h = Json::array();
  for (const auto& [size, count] : hist) h.push_back({{"fiber_size", size}, {"count", count}});
  r["fiber_histogram"] = std::move(h);
  r["min_fiber"] = hist.front().first;
  r["max_fiber"] = hist.back().first;
  r["all_fibers_equal"] = hist.size() == 1;
  const CheckResult mass = mass_identity_check(p);
  r["mass_identity"] = to_json(mass);
  if (mass.failed()) {
    out.status = "check_failed";
    out.exit_code = kExitCheck;
  }
  return out;
}

CommandOutcome verify_command(const F2Set& a, const VerifyOptions& options) {
  for (const auto& name : options.checks) {
    if (std::find(kVerifyChecks.begin(), kVerifyChecks.end(), name) == kVerifyChecks.end()) {
      throw OutOfRange("unknown check '" + name + "'");
    }
  }
  auto wanted = [&](std::string_view name) {
    return std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end();
  };
  if (wanted("containments") && !options.eps) throw OutOfRange("containments requires --eps");

  CommandOutcome out;
  Stopwatch sw;
  const SymmetryProfile p = symmetry_profile(a, ProfileMethod::naive, options.threads);
  out.timings["profile"] = sw.elapsed_ms();

  Json params = Json::object();
  params["L"] = rational_json(options.L);
  params["eps"] = options.eps ? rational_json(*options.eps) : Json(nullptr);
  std::vector<CheckResult> checks;
  auto timed = [&](const char* name, auto&& body) {
    Stopwatch t;
    body();
    out.timings[name] = t.elapsed_ms();
  };

  if (wanted("mass")) timed("mass", [&] { checks.push_back(mass_identity_check(p)); });
  if (wanted("lemma6")) {
    timed("lemma6", [&] {
      checks.push_back(small_fiber_check(p));
      checks.push_back(lemma6_check(p, options.threads));
    });
  }
  if (wanted("lemma7")) {
    timed("lemma7", [&] {
      checks.push_back(lemma7_check(p, options.L, options.threads));
      checks.push_back(fiber_conversion_check(p, options.L));
    });
  }
  if (wanted("lemma8")) timed("lemma8", [&] { checks.push_back(bijection_sweep(a)); });
  if (wanted("eq6")) {
    timed("eq6", [&] {
      const MomentReport moments = pr_z_positive(p, options.L, options.threads);
      out.result["moments"] = to_json(moments);
      checks.push_back(eq6_check(moments));
    });
  }
  if (wanted("fr")) timed("fr", [&] { checks.push_back(freiman_ruzsa_check(a)); });
  if (wanted("containments")) {
    timed("containments", [&] {
      F2Vector a_star = options.a_star.value_or(F2Vector::zero(a.dim()));
      if (!options.a_star) {
        const AStarScan scan = scan_astar(p, options.L);
        out.result["astar_scan"] = to_json(scan, a.dim());
        a_star = F2Vector(scan.a_star, a.dim());
      }
      params["a_star"] = a_star.to_binary();
      const StructuredB b = structured_B(p, a_star, *options.eps);
      out.result["B_size"] = b.set.size();
      auto found = containment_checks(p, b.set, *options.eps, options.deltas);
      checks.insert(checks.end(), found.begin(), found.end());
    });
  }

  Json list = Json::array();
  Json summary = Json::object();
  bool failed = false;
  for (const auto& c : checks) {
    list.push_back(to_json(c));
    tally(summary, c);
    failed = failed || c.failed();
  }
  out.result["parameters"] = std::move(params);
  out.result["checks"] = std::move(list);
  out.result["summary"] = std::move(summary);
  if (failed) {
    out.status = "check_failed";
    out.exit_code = kExitCheck;
  }
  return out;
}

CommandOutcome bench_command(const BenchOptions& options) {
  CommandOutcome out;
  Json runs = Json::array();
  bool mismatch = false;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    if (n < 1 || n > 24) throw OutOfRange("bench needs 1 <= n <= 24");
    const BigInt wanted = ceil(options.density * pow2(static_cast<unsigned>(n)));
    const auto m = std::max<std::uint64_t>(1, wanted.convert_to<std::uint64_t>());
    const F2Set a = gen_random(n, m, options.seed + static_cast<std::uint64_t>(n));
    const std::string tag = "n" + std::to_string(n);

    Stopwatch sw;
    const SymmetryProfile fast = symmetry_profile(a, ProfileMethod::wht);
    out.timings["wht_" + tag] = sw.elapsed_ms();

    Json run = Json::object();
    run["n"] = n;
    run["size"] = a.size();
    run["sumset_size"] = fast.sumset_size();
    bool equal = true;
    if (a.size() <= options.full_naive_cap) {
      Stopwatch sn;
      const SymmetryProfile slow = symmetry_profile(a, ProfileMethod::naive, options.threads);
      out.timings["naive_" + tag] = sn.elapsed_ms();
      equal = slow == fast;
      run["comparison"] = "full";
      run["fibers_compared"] = fast.sumset_size();
    } else {
      Rng rng(options.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
      Stopwatch sn;
      for (std::size_t i = 0; i < options.samples; ++i) {
        // Half the probes are sums of two members, half are arbitrary vectors.
        const std::uint64_t s = i % 2 == 0
                                    ? a.elements()[rng.below(a.size())] ^ a.elements()[rng.below(a.size())]
                                    : rng.below(std::uint64_t{1} << n);
        std::uint64_t direct = 0;
        for (std::uint64_t x : a) direct += a.contains(x ^ s) ? 1 : 0;
        equal = equal && direct == fast.fiber_size(s);
      }
      out.timings["naive_" + tag] = sn.elapsed_ms();
      run["comparison"] = "sampled";
      run["fibers_compared"] = options.samples;
    }
    run["equal"] = equal;
    mismatch = mismatch || !equal;
    runs.push_back(std::move(run));
  }
  out.result["runs"] = std::move(runs);
  if (mismatch) {
    out.status = "check_failed";
    out.exit_code = kExitCheck;
  }
  return out;
}

}  // namespace pfrkit

#include "pfrkit/structured.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pfrkit/error.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/span.hpp"
#include "pfrkit/stats.hpp"

namespace pfrkit {
namespace {

// x <= base^exp, exact when the powers stay under the cap. Otherwise x is
// compared with a lower bound of base^exp, so a true answer is always sound.
bool at_most_power(const Rational& x, const Rational& base, const Rational& exp, bool& approx) {
  if (x <= 0) return true;
  try {
    return compare_powers(x, 1, base, exp) <= 0;
  } catch (const CapExceeded&) {
    approx = true;
    return x <= 1 / pow_upper_bound(base, -exp);
  }
}

// Members of 2A whose fiber exceeds |A|(1 - 2^j K^-eps), decided once per
// distinct fiber size.
F2Set level_members(const SymmetryProfile& p, const DecayScale& scale, int j) {
  std::map<std::uint64_t, bool> memo;
  std::vector<std::uint64_t> members;
  const Rational m = p.set_size();
  for (const auto& f : p.fibers()) {
    auto it = memo.find(f.count);
    if (it == memo.end()) {
      it = memo.emplace(f.count, scale.compare(j, 1 - Rational(f.count) / m) > 0).first;
    }
    if (it->second) members.push_back(f.sum);
  }
  return F2Set(p.dim(), std::move(members));
}

std::optional<std::uint64_t> first_outside(const F2Set& sums, const F2Set& target) {
  for (std::uint64_t s : sums) {
    if (!target.contains(s)) return s;
  }
  return std::nullopt;
}

CheckResult containment(std::string name, const F2Set& source, const F2Set& target,
                        bool beyond_range) {
  CheckResult check;
  check.name = std::move(name);
  if (source.empty()) {
    check.status = CheckStatus::not_applicable;
    check.message = "empty set";
    return check;
  }
  const F2Set sums = sumset(source, source);
  const auto witness = first_outside(sums, target);
  check.details["source_size"] = source.size();
  check.details["sumset_size"] = sums.size();
  check.details["target_size"] = target.size();
  if (!witness) {
    check.status = CheckStatus::passed;
    return check;
  }
  check.details["witness"] = to_binary(*witness, source.dim());
  if (beyond_range) {
    check.status = CheckStatus::flagged;
    check.message = "containment fails with 2*delta > 1: the witness is not in 2A";
  } else {
    check.status = CheckStatus::failed;
  }
  return check;
}

}  // namespace

DecayScale::DecayScale(Rational base, Rational exponent)
    : base_(std::move(base)), exponent_(std::move(exponent)) {
  if (base_ < 1) throw OutOfRange("decay base must be at least 1");
  upper_ = pow_upper_bound(base_, -exponent_);
}

int DecayScale::compare(int j, const Rational& x) const {
  if (x <= 0) return 1;
  const Rational scaled = x / pow2(static_cast<unsigned>(j));
  try {
    return compare_powers(base_, -exponent_, scaled, 1);
  } catch (const CapExceeded&) {
    approximate_ = true;
    return upper_ > scaled ? 1 : (upper_ == scaled ? 0 : -1);
  }
}

LevelSet level_set(const SymmetryProfile& p, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw OutOfRange("level_set needs 0 < delta <= 1");
  const Rational cut = p.set_size() * (1 - delta);
  std::vector<std::uint64_t> members;
  for (const auto& f : p.fibers()) {
    if (Rational(f.count) > cut) members.push_back(f.sum);
  }
  return {delta, F2Set(p.dim(), std::move(members))};
}

F2Set chain_level_set(const SymmetryProfile& p, const DecayScale& scale, int j) {
  return level_members(p, scale, j);
}

StructuredB structured_B(const SymmetryProfile& p, const F2Vector& a_star, const Rational& eps) {
  require_same_dim(p.dim(), a_star.dim(), "structured_B");
  if (eps <= 0) throw OutOfRange("eps must be positive");
  const DecayScale scale(p.doubling(), eps);
  const Rational m = p.set_size();
  std::map<std::uint64_t, bool> memo;
  std::vector<std::uint64_t> members;
  for (std::uint64_t b : p.base()) {
    const std::uint64_t f = p.fiber_size(a_star.bits() ^ b);
    if (f == 0) continue;
    auto it = memo.find(f);
    if (it == memo.end()) it = memo.emplace(f, scale.compare(0, 1 - Rational(f) / m) > 0).first;
    if (it->second) members.push_back(b);
  }
  StructuredB out{F2Set(p.dim(), std::move(members)), 0, std::nullopt, scale.approximate()};
  out.fraction = Rational(out.set.size(), p.set_size());
  if (!out.set.empty()) {
    Rational reach = out.set.size();
    for (std::uint64_t L = 0; L <= static_cast<std::uint64_t>(kMaxChainLength); ++L) {
      if (reach >= m) {
        out.smallest_L = L;
        break;
      }
      if (p.doubling() == 1) break;
      reach *= p.doubling();
    }
  }
  return out;
}

int chain_length(const DecayScale& scale) {
  for (int r = 0; r <= kMaxChainLength; ++r) {
    if (scale.compare(r, Rational(1, 2)) > 0) return r;
  }
  throw CapExceeded("chain length exceeds " + std::to_string(kMaxChainLength));
}

std::vector<CheckResult> containment_checks(const SymmetryProfile& p, const F2Set& b,
                                            const Rational& eps,
                                            const std::vector<Rational>& extra_deltas) {
  require_same_dim(p.dim(), b.dim(), "containment_checks");
  const DecayScale scale(p.doubling(), eps);
  const int r = chain_length(scale);
  std::vector<CheckResult> checks;
  F2Set level = chain_level_set(p, scale, 1);
  checks.push_back(containment("b_sumset_in_level", b, level, false));
  F2Set current = chain_level_set(p, scale, 0);
  for (int j = 0; j < r; ++j) {
    F2Set next = j + 1 == 1 ? level : chain_level_set(p, scale, j + 1);
    CheckResult c = containment("level_sumset_" + std::to_string(j), current, next, false);
    c.details["j"] = j;
    checks.push_back(std::move(c));
    current = std::move(next);
  }
  for (const Rational& d : extra_deltas) {
    const LevelSet source = level_set(p, d);
    const Rational doubled = std::min(Rational(2 * d), Rational(1));
    const LevelSet target = level_set(p, doubled);
    CheckResult c = containment("level_sumset_delta", source.set, target.set, 2 * d > 1);
    c.details["delta"] = rational_json(d);
    c.details["target_delta"] = rational_json(doubled);
    checks.push_back(std::move(c));
  }
  if (scale.approximate()) {
    for (auto& c : checks) c.details["approximate_scale"] = true;
  }
  return checks;
}

ChainReport chain_select(const SymmetryProfile& p, const Rational& eps, const Rational& L) {
  if (eps <= 0) throw OutOfRange("eps must be positive");
  if (L < 0) throw OutOfRange("L must be non-negative");
  const Rational k = p.doubling();
  if (k == 1) throw HypothesisError("chain_select needs K > 1");
  const DecayScale scale(k, eps);
  ChainReport chain;
  chain.eps = eps;
  chain.L = L;
  chain.doubling = k;
  chain.r = chain_length(scale);
  if (chain.r < 2) {
    throw HypothesisError("chain length r = " + std::to_string(chain.r) +
                          " < 2; eps is too small for this K");
  }
  std::vector<F2Set> levels;
  for (int j = 0; j <= chain.r; ++j) {
    levels.push_back(chain_level_set(p, scale, j));
    chain.sizes.push_back(levels.back().size());
  }
  bool approx = scale.approximate();
  const Rational step_exp = (L + 1) / (chain.r - 1);
  std::optional<int> best;
  Rational best_ratio;
  for (int j = 1; j < chain.r; ++j) {
    const Rational ratio(chain.sizes[j + 1], chain.sizes[j]);
    if (at_most_power(ratio, k, step_exp, approx)) {
      chain.chosen = j;
      chain.chosen_ratio = ratio;
      chain.chosen_meets_bound = true;
      break;
    }
    if (!best || ratio < best_ratio) {
      best = j;
      best_ratio = ratio;
    }
  }
  if (!chain.chosen_meets_bound) {
    chain.chosen = *best;
    chain.chosen_ratio = best_ratio;
  }

  CheckResult pigeon;
  pigeon.name = "chain_pigeonhole";
  pigeon.details["step_exponent"] = rational_json(step_exp);
  pigeon.details["chosen"] = chain.chosen;
  pigeon.details["ratio"] = rational_json(chain.chosen_ratio);
  const Rational endpoint(p.set_size(), chain.sizes[1]);
  if (at_most_power(endpoint, k, L, approx)) {
    pigeon.status = chain.chosen_meets_bound ? CheckStatus::passed : CheckStatus::failed;
  } else {
    pigeon.status = CheckStatus::not_applicable;
    pigeon.message = "|S(2K^-eps)| < K^-L |A|: endpoint hypothesis does not hold";
  }
  chain.checks.push_back(std::move(pigeon));

  CheckResult surrogate;
  surrogate.name = "chain_ratio_surrogate";
  const Rational lead = L / eps;
  bool step_below_surrogate = false;
  try {
    step_below_surrogate = compare_powers(k, step_exp, 4, lead) <= 0;
  } catch (const CapExceeded&) {
    surrogate.message = "powers too large to compare exactly";
  }
  if (step_below_surrogate) {
    surrogate.status = at_most_power(chain.chosen_ratio, 4, lead, approx) ? CheckStatus::passed
                                                                          : CheckStatus::failed;
  } else {
    surrogate.status = CheckStatus::not_applicable;
    if (surrogate.message.empty()) surrogate.message = "K^{(L+1)/(r-1)} > 4^{L/eps} at this r";
  }
  surrogate.details["ratio"] = rational_json(chain.chosen_ratio);
  chain.checks.push_back(std::move(surrogate));

  const F2Set& chosen = levels[static_cast<std::size_t>(chain.chosen)];
  const F2Set& above = levels[static_cast<std::size_t>(chain.chosen) + 1];
  CheckResult doubling_check = make_check("level_doubling_within_ratio",
                                          sumset(chosen, chosen).size() <= above.size());
  doubling_check.details["level_doubling"] = rational_json(doubling(chosen));
  doubling_check.details["ratio"] = rational_json(chain.chosen_ratio);
  chain.checks.push_back(std::move(doubling_check));

  // Binary search for the largest m <= 128 with m/2 <= 4^{L/eps}.
  std::int64_t lo = 0;
  std::int64_t hi = 128;
  while (lo < hi) {
    const std::int64_t mid = (lo + hi + 1) / 2;
    if (at_most_power(Rational(mid, 2), 4, lead, approx)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  chain.exponent_floor = lo;
  chain.chosen_span_rank = static_cast<std::size_t>(span_basis(chosen).rank());
  chain.level_bound = pow2(static_cast<unsigned>(lo)) * p.sumset_size();
  CheckResult span_check =
      make_check("level_span_bound",
                 pow2(static_cast<unsigned>(chain.chosen_span_rank)) <= chain.level_bound);
  span_check.details["span_rank"] = chain.chosen_span_rank;
  span_check.details["exponent_floor"] = lo;
  span_check.details["bound"] = bigint_json(chain.level_bound);
  chain.checks.push_back(std::move(span_check));
  chain.approximate = approx;
  return chain;
}

AStarScan scan_astar(const SymmetryProfile& p, const Rational& L) {
  if (L <= 0) throw OutOfRange("L must be positive");
  const Rational k = p.doubling();
  const DecayScale scale(k, 1 / L);
  const Rational m = p.set_size();
  std::map<std::uint64_t, bool> memo;
  auto heavy = [&](std::uint64_t f) {
    auto it = memo.find(f);
    if (it == memo.end()) it = memo.emplace(f, scale.compare(0, 1 - Rational(f) / m) >= 0).first;
    return it->second;
  };
  AStarScan scan;
  std::uint64_t total = 0;
  bool first = true;
  for (std::uint64_t a1 : p.base()) {
    std::size_t count = 0;
    for (std::uint64_t a2 : p.base()) {
      if (heavy(p.fiber_size(a1 ^ a2))) ++count;
    }
    total += count;
    if (first || count > scan.count) {
      scan.a_star = a1;
      scan.count = count;
      first = false;
    }
  }
  scan.fraction = Rational(scan.count, p.set_size());
  scan.pair_fraction = Rational(total, BigInt(p.set_size()) * p.set_size());
  bool approx = scale.approximate();
  scan.promise.name = "abstract_condition";
  const bool holds = at_most_power(1 / scan.pair_fraction, k, L + 1, approx);
  scan.promise.status = holds ? CheckStatus::passed : CheckStatus::failed;
  scan.promise.details["pair_fraction"] = rational_json(scan.pair_fraction);
  scan.promise.details["best_fraction"] = rational_json(scan.fraction);
  if (approx) scan.promise.details["approximate_scale"] = true;
  return scan;
}

ExtractionReport structured_pipeline(const F2Set& a, const F2Vector& a_star, const Rational& eps,
                                     const Rational& L, const StructuredOptions& options) {
  if (a.empty()) throw EmptyInput("structured_pipeline over an empty set");
  require_same_dim(a.dim(), a_star.dim(), "structured_pipeline");
  if (eps <= 0) throw OutOfRange("eps must be positive");
  if (L < 0) throw OutOfRange("L must be non-negative");
  const SymmetryProfile p = symmetry_profile(a, ProfileMethod::naive, options.threads);
  const Rational k = p.doubling();
  ExtractionReport report;
  report.mode = "structured";
  report.set_size = p.set_size();
  report.sumset_size = p.sumset_size();
  report.doubling = k;
  report.L = L;
  report.eps = eps;
  report.forced = options.force;
  report.witnesses["a_star"] = a_star.to_binary();
  report.witnesses["level_parameter"] = "K^-eps";

  const StructuredB sb = structured_B(p, a_star, eps);
  Json bj = Json::object();
  bj["size"] = sb.set.size();
  bj["fraction"] = rational_json(sb.fraction);
  bj["smallest_L"] = sb.smallest_L ? Json(*sb.smallest_L) : Json(nullptr);
  report.witnesses["B"] = std::move(bj);

  auto certify = [&](const F2Set& b, const BigInt& bound, const std::optional<BigInt>& level_span) {
    const BigInt span_b = span_basis(b).span_size();
    const BigInt span_2b = sumset_span_basis(b).span_size();
    CheckResult affine = make_check("affine_span", span_b <= 2 * span_2b);
    affine.details["span_b"] = bigint_json(span_b);
    affine.details["span_2b"] = bigint_json(span_2b);
    report.checks.push_back(std::move(affine));
    if (level_span) {
      CheckResult nested = make_check("sumset_span_within_level_span", span_2b <= *level_span);
      nested.details["span_2b"] = bigint_json(span_2b);
      nested.details["span_level"] = bigint_json(*level_span);
      report.checks.push_back(std::move(nested));
    }
    CheckResult certified = make_check("certified_bound", span_b <= bound);
    certified.details["span_b"] = bigint_json(span_b);
    certified.details["bound"] = bigint_json(bound);
    report.checks.push_back(std::move(certified));
    report.extracted = b;
    report.span_size = span_b;
    report.bound = bound;
  };

  if (k == 1) {
    report.witnesses["fast_path"] = "doubling 1: A is a coset of a subspace";
    if (sb.set.empty()) {
      report.checks.push_back(make_check("b_nonempty", false, "a* + A misses 2A"));
      return report;
    }
    certify(sb.set, 2 * BigInt(p.sumset_size()), std::nullopt);
    return report;
  }

  CheckResult eps_gate;
  eps_gate.name = "eps_hypothesis";
  eps_gate.details["log_base"] = 2;
  try {
    eps_gate.status = compare_powers(k, eps, 2, 10) > 0 ? CheckStatus::passed : CheckStatus::failed;
  } catch (const CapExceeded&) {
    const double lhs = to_double(eps) * std::log2(to_double(k));
    eps_gate.status = lhs > 10 ? CheckStatus::passed : CheckStatus::failed;
    eps_gate.message = "decided in floating point";
  }
  eps_gate.details["eps"] = rational_json(eps);
  eps_gate.details["required_above"] = to_decimal_string(Rational(10) / Rational(std::log2(to_double(k))), 6);
  report.gates.push_back(std::move(eps_gate));

  bool approx = sb.approximate;
  CheckResult size_gate;
  size_gate.name = "b_size";
  const bool big_enough =
      !sb.set.empty() && at_most_power(Rational(p.set_size(), sb.set.size()), k, L, approx);
  size_gate.status = big_enough ? CheckStatus::passed : CheckStatus::failed;
  size_gate.details["size"] = sb.set.size();
  size_gate.details["fraction"] = rational_json(sb.fraction);
  report.gates.push_back(std::move(size_gate));

  const int r = chain_length(DecayScale(k, eps));
  CheckResult length_gate = make_check("chain_length", r >= 2);
  length_gate.details["r"] = r;
  report.gates.push_back(std::move(length_gate));

  for (const auto& g : report.gates) {
    if (g.failed() && !options.force) return report;
  }
  if (sb.set.empty()) {
    report.checks.push_back(make_check("b_nonempty", false, "B is empty"));
    return report;
  }
  if (r < 2) {
    report.checks.push_back(make_check("chain_available", false, "r < 2"));
    return report;
  }

  const auto contains = containment_checks(p, sb.set, eps);
  report.checks.insert(report.checks.end(), contains.begin(), contains.end());

  const ChainReport chain = chain_select(p, eps, L);
  report.witnesses["chain"] = to_json(chain);
  report.checks.insert(report.checks.end(), chain.checks.begin(), chain.checks.end());
  report.witnesses["approximate_scale"] = approx || chain.approximate;
  certify(sb.set, 2 * chain.level_bound, pow2(static_cast<unsigned>(chain.chosen_span_rank)));
  return report;
}

Json to_json(const ChainReport& chain) {
  Json out = Json::object();
  out["level_parameter"] = "K^-eps";
  out["eps"] = rational_json(chain.eps);
  out["L"] = rational_json(chain.L);
  out["doubling"] = rational_json(chain.doubling);
  out["r"] = chain.r;
  Json sizes = Json::array();
  for (auto s : chain.sizes) sizes.push_back(s);
  out["sizes"] = std::move(sizes);
  out["chosen"] = chain.chosen;
  out["chosen_meets_bound"] = chain.chosen_meets_bound;
  out["chosen_ratio"] = rational_json(chain.chosen_ratio);
  out["chosen_span_rank"] = chain.chosen_span_rank;
  out["exponent_floor"] = chain.exponent_floor;
  out["level_bound"] = bigint_json(chain.level_bound);
  out["approximate_scale"] = chain.approximate;
  return out;
}

Json to_json(const AStarScan& scan, int dim) {
  Json out = Json::object();
  out["a_star"] = to_binary(scan.a_star, dim);
  out["count"] = scan.count;
  out["fraction"] = rational_json(scan.fraction);
  out["pair_fraction"] = rational_json(scan.pair_fraction);
  out["promise"] = to_json(scan.promise);
  return out;
}

}  // namespace pfrkit

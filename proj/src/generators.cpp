#include "pfrkit/generators.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "pfrkit/error.hpp"

namespace pfrkit {
namespace {

constexpr int kShuffleDim = 20;

void require_range(bool ok, const std::string& what) {
  if (!ok) throw OutOfRange(what);
}

// `count` distinct values of [0, size), size 0 standing for 2^64. Partial
// Fisher-Yates over the enumerated range when it fits, rejection otherwise.
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t size, std::uint64_t count,
                                           bool enumerable) {
  require_range(size == 0 || count <= size, "sample larger than the population");
  if (count > kMaxSampleSize) throw CapExceeded("sample size exceeds 2^24");
  std::vector<std::uint64_t> out;
  if (enumerable) {
    std::vector<std::uint64_t> pool(size);
    std::iota(pool.begin(), pool.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t j = i + rng.below(size - i);
      std::swap(pool[i], pool[j]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < count) {
    const std::uint64_t x = rng.below(size);
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

std::uint64_t space_size(int bits) {
  return bits >= 64 ? 0 : (std::uint64_t{1} << bits);  // 0 stands for 2^64
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) return next();  // the full 64-bit range
  const std::uint64_t floor = (0 - bound) % bound;
  std::uint64_t x = next();
  while (x < floor) x = next();
  return x % bound;
}

F2Set gen_weight_one_prefix(int n, int t) {
  require_valid_dim(n);
  require_range(t >= 1 && t <= n, "weight-one-prefix needs 1 <= t <= n");
  std::vector<std::uint64_t> elems;
  for (int i = 1; i <= t; ++i) elems.push_back(F2Vector::unit(i, n).bits());
  return F2Set(n, std::move(elems));
}

F2Set gen_subspace(int n, int d) {
  require_valid_dim(n);
  require_range(d >= 0 && d <= n, "subspace needs 0 <= d <= n");
  if (d > 24) throw CapExceeded("subspace of dimension above 24");
  std::vector<std::uint64_t> elems(std::size_t{1} << d);
  for (std::uint64_t x = 0; x < elems.size(); ++x) elems[x] = x << (n - d);
  return F2Set(n, std::move(elems));
}

F2Set gen_dense_subspace_sample(int n, int d, const Rational& density, std::uint64_t seed) {
  require_valid_dim(n);
  require_range(d >= 0 && d <= n, "dense-subspace-sample needs 0 <= d <= n");
  require_range(density > 0 && density <= 1, "density must lie in (0, 1]");
  if (d > 62) throw CapExceeded("subspace dimension above 62");
  const std::uint64_t size = std::uint64_t{1} << d;
  const BigInt wanted = ceil(density * size);
  if (wanted > BigInt(kMaxSampleSize)) throw CapExceeded("sample size exceeds 2^24");
  Rng rng(seed);
  auto picks = sample_distinct(rng, size, wanted.convert_to<std::uint64_t>(), d <= kShuffleDim);
  for (auto& x : picks) x <<= (n - d);
  return F2Set(n, std::move(picks));
}

F2Set gen_subspace_plus_points(int n, int d, std::uint64_t k, std::uint64_t seed,
                               bool same_coset) {
  require_valid_dim(n);
  require_range(d >= 0 && d < n, "subspace-plus-points needs 0 <= d < n");
  require_range(k >= 1, "subspace-plus-points needs k >= 1");
  F2Set v = gen_subspace(n, d);
  const int low = n - d;
  Rng rng(seed);
  std::vector<std::uint64_t> elems(v.begin(), v.end());
  if (same_coset) {
    require_range(d < 64 && k <= (std::uint64_t{1} << d), "more points than a coset holds");
    const std::uint64_t rep = 1 + rng.below(space_size(low) - 1);
    const auto highs = sample_distinct(rng, std::uint64_t{1} << d, k, d <= kShuffleDim);
    for (std::uint64_t h : highs) elems.push_back((h << low) | rep);
  } else {
    // A point lies outside V exactly when its low n-d bits are nonzero.
    const std::uint64_t total = space_size(n);
    const std::uint64_t outside = total - (std::uint64_t{1} << d);
    require_range(n == 64 || k <= outside, "more points than the complement holds");
    const auto picks = sample_distinct(rng, outside, k, n <= kShuffleDim);
    const std::uint64_t per_high = space_size(low) - 1;
    for (std::uint64_t x : picks) {
      const std::uint64_t high = x / per_high;
      const std::uint64_t rep = 1 + x % per_high;
      elems.push_back((high << low) | rep);
    }
  }
  return F2Set(n, std::move(elems));
}

F2Set gen_random(int n, std::uint64_t m, std::uint64_t seed) {
  require_valid_dim(n);
  if (n < 64) require_range(m <= (std::uint64_t{1} << n), "random needs m <= 2^n");
  Rng rng(seed);
  return F2Set(n, sample_distinct(rng, space_size(n), m, n <= kShuffleDim));
}

bool is_generator_family(std::string_view family) {
  static constexpr std::array<std::string_view, 5> kFamilies = {
      "weight-one-prefix", "subspace", "dense-subspace-sample", "subspace-plus-points", "random"};
  return std::find(kFamilies.begin(), kFamilies.end(), family) != kFamilies.end();
}

bool family_needs_seed(std::string_view family) {
  return family == "dense-subspace-sample" || family == "subspace-plus-points" ||
         family == "random";
}

F2Set generate(const GeneratorSpec& spec) {
  if (!is_generator_family(spec.family)) {
    throw OutOfRange("unknown generator family '" + spec.family + "'");
  }
  if (family_needs_seed(spec.family) && !spec.seed) {
    throw OutOfRange("family '" + spec.family + "' requires --seed");
  }
  if (spec.family == "weight-one-prefix") return gen_weight_one_prefix(spec.n, spec.t);
  if (spec.family == "subspace") return gen_subspace(spec.n, spec.d);
  if (spec.family == "dense-subspace-sample") {
    return gen_dense_subspace_sample(spec.n, spec.d, spec.density, *spec.seed);
  }
  if (spec.family == "subspace-plus-points") {
    return gen_subspace_plus_points(spec.n, spec.d, spec.k, *spec.seed, spec.same_coset);
  }
  return gen_random(spec.n, spec.m, *spec.seed);
}

Json to_json(const GeneratorSpec& spec) {
  Json out = Json::object();
  out["family"] = spec.family;
  out["n"] = spec.n;
  if (spec.family == "weight-one-prefix") out["t"] = spec.t;
  if (spec.family != "weight-one-prefix" && spec.family != "random") out["d"] = spec.d;
  if (spec.family == "dense-subspace-sample") out["density"] = rational_json(spec.density);
  if (spec.family == "subspace-plus-points") {
    out["k"] = spec.k;
    out["same_coset"] = spec.same_coset;
  }
  if (spec.family == "random") out["m"] = spec.m;
  out["seed"] = spec.seed ? Json(*spec.seed) : Json(nullptr);
  return out;
}

}  // namespace pfrkit

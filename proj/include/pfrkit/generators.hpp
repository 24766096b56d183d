#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "pfrkit/check.hpp"
#include "pfrkit/f2set.hpp"
#include "pfrkit/rational.hpp"

namespace pfrkit {

/// Largest sample a generator will draw.
inline constexpr std::uint64_t kMaxSampleSize = std::uint64_t{1} << 24;

/// Seeded source: the standard 64-bit Mersenne Twister (std::mt19937_64),
/// whose 10000th output from the default seed 5489 is 9981545732273789042.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound) by rejection, bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// {e_1, ..., e_t} in F_2^n.
F2Set gen_weight_one_prefix(int n, int t);
/// span(e_1, ..., e_d), all 2^d elements.
F2Set gen_subspace(int n, int d);
/// ceil(density * 2^d) distinct elements of span(e_1, ..., e_d), seeded.
F2Set gen_dense_subspace_sample(int n, int d, const Rational& density, std::uint64_t seed);
/// span(e_1, ..., e_d) plus k distinct seeded points outside it; with
/// same_coset all k points share one coset of the subspace.
F2Set gen_subspace_plus_points(int n, int d, std::uint64_t k, std::uint64_t seed,
                               bool same_coset = false);
/// m distinct seeded-uniform elements of F_2^n.
F2Set gen_random(int n, std::uint64_t m, std::uint64_t seed);

struct GeneratorSpec {
  std::string family;
  int n = 0;
  int t = 0;
  int d = 0;
  Rational density = 1;
  std::uint64_t k = 0;
  std::uint64_t m = 0;
  bool same_coset = false;
  std::optional<std::uint64_t> seed;
};

/// "weight-one-prefix", "subspace", "dense-subspace-sample",
/// "subspace-plus-points" or "random".
bool is_generator_family(std::string_view family);
bool family_needs_seed(std::string_view family);
F2Set generate(const GeneratorSpec& spec);
Json to_json(const GeneratorSpec& spec);

}  // namespace pfrkit

#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "pfrkit/error.hpp"
#include "pfrkit/generators.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/profile.hpp"
#include "pfrkit/setfile.hpp"

using namespace pfrkit;
using testing_util::q;

TEST_SUITE("rng") {
  TEST_CASE("published test vector") {
    Rng rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next();
    CHECK(x == 9981545732273789042ULL);
  }

  TEST_CASE("below stays in range") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) CHECK(rng.below(7) < 7);
    CHECK(rng.below(1) == 0);
  }
}

TEST_SUITE("weight-one prefix") {
  TEST_CASE("examples") {
    const F2Set one = gen_weight_one_prefix(5, 1);
    CHECK(one.size() == 1);
    CHECK(doubling(one) == 1);
    const F2Set four = gen_weight_one_prefix(4, 4);
    CHECK(sumset(four, four).size() == 7);
    CHECK(span_basis(four).span_size() == 16);
    CHECK_THROWS_AS(gen_weight_one_prefix(4, 5), OutOfRange);
    CHECK_THROWS_AS(gen_weight_one_prefix(4, 0), OutOfRange);
  }

  TEST_CASE("sumset size formula") {
    for (int t = 2; t <= 16; ++t) {
      const F2Set a = gen_weight_one_prefix(20, t);
      CHECK(oracle::sumset(oracle::to_std(a), oracle::to_std(a)).size() ==
            static_cast<std::size_t>(1 + t * (t - 1) / 2));
    }
  }
}

TEST_SUITE("subspace") {
  TEST_CASE("examples") {
    CHECK(gen_subspace(4, 0).size() == 1);
    CHECK(gen_subspace(4, 0).contains(0));
    const F2Set v = gen_subspace(6, 3);
    CHECK(v.size() == 8);
    CHECK(doubling(v) == 1);
    const auto p = symmetry_profile(v);
    for (const auto& f : p.fibers()) CHECK(f.count == 8);
    CHECK(v.contains(0b111000));
    CHECK_THROWS_AS(gen_subspace(4, 5), OutOfRange);
  }
}

TEST_SUITE("dense subspace sample") {
  TEST_CASE("density one gives the subspace") {
    CHECK(gen_dense_subspace_sample(8, 5, 1, 3) == gen_subspace(8, 5));
  }

  TEST_CASE("size, containment and determinism") {
    const F2Set a = gen_dense_subspace_sample(12, 10, q(3, 4), 7);
    CHECK(a.size() == 768);
    CHECK(a.is_subset_of(gen_subspace(12, 10)));
    CHECK(a == gen_dense_subspace_sample(12, 10, q(3, 4), 7));
    CHECK_FALSE(a == gen_dense_subspace_sample(12, 10, q(3, 4), 8));
    CHECK(doubling(a) <= q(4, 3));
    CHECK(gen_dense_subspace_sample(10, 4, q(1, 3), 1).size() == 6);
    CHECK_THROWS_AS(gen_dense_subspace_sample(8, 4, 0, 1), OutOfRange);
    CHECK_THROWS_AS(gen_dense_subspace_sample(8, 4, q(3, 2), 1), OutOfRange);
  }

  TEST_CASE("rejection path above the shuffle threshold") {
    const F2Set a = gen_dense_subspace_sample(40, 30, Rational(1, 1 << 20), 9);
    CHECK(a.size() == 1024);
    CHECK(a == gen_dense_subspace_sample(40, 30, Rational(1, 1 << 20), 9));
    for (auto x : a) CHECK((x & ((std::uint64_t{1} << 10) - 1)) == 0);
  }
}

TEST_SUITE("subspace plus points") {
  TEST_CASE("points lie outside the subspace") {
    const F2Set v = gen_subspace(10, 6);
    const F2Set a = gen_subspace_plus_points(10, 6, 9, 4);
    CHECK(a.size() == 64 + 9);
    CHECK(v.is_subset_of(a));
    CHECK(a == gen_subspace_plus_points(10, 6, 9, 4));
  }

  TEST_CASE("one coset keeps the doubling at most three") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const F2Set a = gen_subspace_plus_points(9, 5, 1 + seed * 3, seed, true);
      const auto ra = oracle::to_std(a);
      const auto two = oracle::sumset(ra, ra);
      CHECK(two.size() <= 3 * 32);
      CHECK(Rational(two.size(), ra.size()) <= 3);
    }
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(gen_subspace_plus_points(8, 4, 0, 1), OutOfRange);
    CHECK_THROWS_AS(gen_subspace_plus_points(4, 4, 1, 1), OutOfRange);
    CHECK_THROWS_AS(gen_subspace_plus_points(4, 2, 13, 1), OutOfRange);
    CHECK_THROWS_AS(gen_subspace_plus_points(4, 2, 5, 1, true), OutOfRange);
  }
}

TEST_SUITE("random") {
  TEST_CASE("examples") {
    CHECK(gen_random(5, 32, 1) == gen_subspace(5, 5));
    CHECK(doubling(gen_random(10, 1, 3)) == 1);
    CHECK(gen_random(30, 100, 5) == gen_random(30, 100, 5));
    CHECK(gen_random(30, 100, 5).size() == 100);
    CHECK_THROWS_AS(gen_random(3, 9, 1), OutOfRange);
  }
}

TEST_SUITE("specs") {
  TEST_CASE("families, seeds and round trips") {
    for (const char* family : {"weight-one-prefix", "subspace", "dense-subspace-sample",
                               "subspace-plus-points", "random"}) {
      CHECK(is_generator_family(family));
      GeneratorSpec spec;
      spec.family = family;
      spec.n = 10;
      spec.t = 5;
      spec.d = 6;
      spec.density = q(1, 2);
      spec.k = 4;
      spec.m = 50;
      if (family_needs_seed(family)) {
        CHECK_THROWS_AS(generate(spec), OutOfRange);
        spec.seed = 11;
      }
      const F2Set a = generate(spec);
      CHECK(a == generate(spec));
      CHECK(parse_set_text(format_set_text(a)) == a);
      CHECK(to_json(spec)["family"] == family);
    }
    CHECK_FALSE(is_generator_family("cube"));
    CHECK_FALSE(family_needs_seed("subspace"));
  }
}

#include <doctest.h>

#include <algorithm>
#include <queue>

#include "helpers.hpp"
#include "oracle.hpp"
#include "pfrkit/error.hpp"
#include "pfrkit/extract.hpp"
#include "pfrkit/generators.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/stats.hpp"

using namespace pfrkit;
using testing_util::bin;
using testing_util::q;

namespace {

/// Components of the graph a1 ~ a2 iff a1 + a2 in cp, by breadth-first search.
std::vector<oracle::Set> bfs_components(const oracle::Set& a, const oracle::Set& cp) {
  std::vector<oracle::Set> out;
  oracle::Set seen;
  for (auto start : a) {
    if (seen.count(start)) continue;
    oracle::Set comp{start};
    std::queue<std::uint64_t> todo;
    todo.push(start);
    seen.insert(start);
    while (!todo.empty()) {
      const auto x = todo.front();
      todo.pop();
      for (auto s : cp) {
        const auto y = x ^ s;
        if (s != 0 && a.count(y) && !seen.count(y)) {
          seen.insert(y);
          comp.insert(y);
          todo.push(y);
        }
      }
    }
    out.push_back(comp);
  }
  return out;
}

Rational brute_energy(const oracle::Set& c, const oracle::Set& s) {
  std::uint64_t hits = 0;
  for (auto x : c)
    for (auto y : c) hits += s.count(x ^ y);
  return Rational(hits, c.size() * c.size());
}

}  // namespace

TEST_SUITE("typical set") {
  TEST_CASE("subspace") {
    const auto t = typical_set(symmetry_profile(gen_subspace(6, 4)), 1);
    CHECK(t.set.size() == 16);
    CHECK(t.density == 1);
  }

  TEST_CASE("three-point example") {
    const auto t = typical_set(symmetry_profile(bin({"00", "01", "10"})), 2);
    CHECK(t.lower == q(9, 8));
    CHECK(t.upper == q(9, 2));
    CHECK(t.set == bin({"00", "01", "10", "11"}));
    CHECK(t.density == 1);
  }

  TEST_CASE("membership follows the thresholds and density holds under the hypothesis") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const F2Set a = gen_dense_subspace_sample(12, 8, q(1, 2) + q(seed % 4, 10), seed);
      const auto p = symmetry_profile(a);
      for (const Rational L : {q(2), q(3)}) {
        const auto t = typical_set(p, L);
        for (const auto& f : p.fibers()) {
          const bool inside = Rational(f.count) >= t.lower && Rational(f.count) <= t.upper;
          CHECK(t.set.contains(f.sum) == inside);
        }
        CHECK_FALSE(t.density_check.failed());
        if (heavy_fiber_hypothesis(p, L) && p.doubling() >= 2) CHECK(t.density * 4 * L >= 1);
      }
    }
  }
}

TEST_SUITE("pair energy") {
  TEST_CASE("examples") {
    const F2Set v = gen_subspace(5, 3);
    CHECK(pair_energy(v, v) == 1);
    CHECK(pair_energy(bin({"1000", "0100", "0010", "0001"}), bin({"0000"})) == q(1, 4));
    CHECK_THROWS_AS(pair_energy(F2Set(3), bin({"000"})), EmptyInput);
  }

  TEST_CASE("matches counting and is monotone in the target") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rc = oracle::random_set(7, 10 + seed, seed);
      auto rs = oracle::random_set(7, 30, seed + 50);
      const Rational small = pair_energy(oracle::from_std(7, rc), oracle::from_std(7, rs));
      CHECK(small == brute_energy(rc, rs));
      rs.insert(0);
      CHECK(small <= pair_energy(oracle::from_std(7, rc), oracle::from_std(7, rs)));
    }
  }
}

TEST_SUITE("bsg") {
  TEST_CASE("subspace is kept whole") {
    const F2Set v = gen_subspace(6, 4);
    const auto r = bsg_extract(v, v, 1);
    CHECK(r.subset == v);
    CHECK(r.doubling_ratio == 1);
  }

  TEST_CASE("singleton") {
    const F2Set c = bin({"0110"});
    CHECK(bsg_extract(c, bin({"0000"}), 1).subset == c);
  }

  TEST_CASE("energy below the bound is refused") {
    const F2Set c = bin({"1000", "0100", "0010", "0001"});
    CHECK_THROWS_AS(bsg_extract(c, bin({"0000"}), q(1, 2)), HypothesisError);
  }

  TEST_CASE("size and doubling guarantees, recomputed independently") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const int n = 8;
      const auto rc = oracle::random_set(n, 12 + seed * 3, seed);
      const auto rs = oracle::random_set(n, 40 + seed, seed + 1000);
      const F2Set c = oracle::from_std(n, rc);
      const F2Set s = oracle::from_std(n, rs);
      const Rational eta = brute_energy(rc, rs);
      if (eta == 0) continue;
      for (unsigned threads : {1u, 3u}) {
        const auto r = bsg_extract(c, s, eta, threads);
        const auto cp = oracle::to_std(r.subset);
        REQUIRE_FALSE(cp.empty());
        CHECK(std::includes(rc.begin(), rc.end(), cp.begin(), cp.end()));
        const Rational size_ratio(cp.size(), rc.size());
        const Rational doubling_ratio(oracle::sumset(cp, cp).size(), rc.size());
        const Rational sigma(rs.size(), rc.size());
        CHECK(r.size_ratio == size_ratio);
        CHECK(r.doubling_ratio == doubling_ratio);
        CHECK(size_ratio * 4 >= eta);
        CHECK(doubling_ratio * pow(eta, 5) <= 32768 * pow(sigma, 4));
        for (const auto& check : r.checks) CHECK(check.passed());
        if (threads == 3) CHECK(r.subset == bsg_extract(c, s, eta, 1).subset);
      }
    }
  }
}

TEST_SUITE("components") {
  TEST_CASE("full sumset connects everything") {
    const F2Set a = gen_random(6, 12, 4);
    const auto r = component_extract(a, sumset(a, a));
    CHECK(r.component == a);
  }

  TEST_CASE("empty labels leave singletons") {
    const F2Set a = bin({"001", "010", "111"});
    const auto r = component_extract(a, F2Set(3));
    CHECK(r.component == bin({"001"}));
    CHECK(r.graph.component_sizes.size() == 3);
    CHECK(r.graph.edge_count == 0);
  }

  TEST_CASE("two components, tie broken by the smallest element") {
    const auto r = component_extract(bin({"00", "01", "10", "11"}), bin({"11"}));
    CHECK(r.component == bin({"00", "11"}));
    CHECK(r.graph.component_sizes == std::vector<std::size_t>{2, 2});
    CHECK(r.graph.edge_count == 2);
  }

  TEST_CASE("labels outside the sumset are refused") {
    CHECK_THROWS_AS(component_extract(bin({"000", "001"}), bin({"110"})), OutOfRange);
  }

  TEST_CASE("agrees with breadth-first search") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto ra = oracle::random_set(7, 8 + seed % 20, seed);
      const auto two_a = oracle::sumset(ra, ra);
      oracle::Set cp;
      std::uint64_t i = 0;
      for (auto s : two_a)
        if ((i++ * 7 + seed) % 5 == 0) cp.insert(s);
      const auto r = component_extract(oracle::from_std(7, ra), oracle::from_std(7, cp));
      auto comps = bfs_components(ra, cp);
      std::size_t best = 0;
      for (std::size_t k = 1; k < comps.size(); ++k)
        if (comps[k].size() > comps[best].size()) best = k;  // ascending minima, first wins ties
      CHECK(oracle::to_std(r.component) == comps[best]);
      CHECK(r.graph.component_sizes.size() == comps.size());
      for (const auto& check : r.checks) CHECK(check.passed());
      std::uint64_t mass = 0;
      for (auto s : cp)
        if (s != 0) mass += oracle::symmetry_set(ra, s).size();
      CHECK(2 * r.graph.edge_count == mass);
    }
  }
}

TEST_SUITE("unstructured pipeline") {
  TEST_CASE("subspace fast path") {
    const F2Set v = gen_subspace(8, 5);
    const auto report = unstructured_pipeline(v, 2);
    REQUIRE(report.completed());
    CHECK(*report.extracted == v);
    CHECK(*report.span_size == 32);
    CHECK(report.status() == PipelineStatus::ok);
  }

  TEST_CASE("dense subspace sample") {
    const F2Set a = gen_dense_subspace_sample(12, 10, q(3, 4), 7);
    const auto report = unstructured_pipeline(a, 2);
    REQUIRE(report.completed());
    const F2Set& b = *report.extracted;
    CHECK(b.is_subset_of(a));
    CHECK(*report.span_size <= 1024);
    CHECK(span_basis(b).span_size() <= 2 * sumset_span_basis(b).span_size());
    for (const auto& check : report.checks) CHECK_FALSE(check.failed());
    CHECK(report.status() == PipelineStatus::ok);
  }

  TEST_CASE("hypothesis gate refuses the weight-one prefix family") {
    const F2Set a = gen_weight_one_prefix(8, 8);
    REQUIRE_FALSE(heavy_fiber_hypothesis(symmetry_profile(a), 1));
    const auto report = unstructured_pipeline(a, 1);
    CHECK_FALSE(report.completed());
    CHECK(report.status() == PipelineStatus::gate_failed);
    CHECK(report.gates.at(0).name == "heavy_fiber_hypothesis");

    UnstructuredOptions force;
    force.force = true;
    const auto forced = unstructured_pipeline(a, 1, force);
    CHECK(forced.forced);
    CHECK(forced.gates.at(0).failed());
  }

  TEST_CASE("B certifies against C' on a sweep") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const F2Set a = gen_dense_subspace_sample(11, 8, q(5, 8), seed);
      const auto report = unstructured_pipeline(a, 2);
      if (!report.completed()) continue;
      const F2Set& b = *report.extracted;
      const auto cp = report.witnesses.at("bsg").at("elements");
      SpanBasis basis(a.dim());
      for (const auto& word : cp) basis.insert(F2Vector::from_binary(word.get<std::string>()));
      for (auto x : b)
        for (auto y : b) CHECK(basis.contains(x ^ y));
      for (const auto& check : report.checks) CHECK_FALSE(check.failed());
    }
  }
}

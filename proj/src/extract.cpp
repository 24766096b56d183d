#include "pfrkit/extract.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "pfrkit/error.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/parallel.hpp"
#include "pfrkit/span.hpp"
#include "pfrkit/stats.hpp"

namespace pfrkit {
namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  std::size_t count_and(const Bitset& other) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] & other.words_[i]);
    return n;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller index becomes the root, so every root is its component's minimum.
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::size_t> parent_;
};

CheckResult ratio_check(std::string name, const Rational& value, const Rational& limit, bool upper) {
  CheckResult check = make_check(std::move(name), upper ? value <= limit : value >= limit);
  check.details["value"] = rational_json(value);
  check.details[upper ? "upper_bound" : "lower_bound"] = rational_json(limit);
  return check;
}

}  // namespace

TypicalSet typical_set(const SymmetryProfile& p, const Rational& L) {
  TypicalSet t{F2Set(p.dim()), guard_threshold(p), heavy_threshold(p, L), 0, {}};
  std::vector<std::uint64_t> members;
  for (const auto& f : p.fibers()) {
    if (t.lower <= f.count && Rational(f.count) <= t.upper) members.push_back(f.sum);
  }
  t.set = F2Set(p.dim(), std::move(members));
  t.density = Rational(t.set.size(), p.sumset_size());
  const Rational floor = 1 / (4 * L);
  t.density_check.name = "typical_density";
  t.density_check.details["density"] = rational_json(t.density);
  t.density_check.details["lower_bound"] = rational_json(floor);
  if (p.doubling() >= 2 && heavy_fiber_hypothesis(p, L)) {
    t.density_check.status = t.density >= floor ? CheckStatus::passed : CheckStatus::failed;
  } else {
    t.density_check.status = CheckStatus::not_applicable;
    t.density_check.message = "asserted only when K >= 2 and the heavy-fiber hypothesis holds";
  }
  return t;
}

Rational pair_energy(const F2Set& c, const F2Set& s) {
  require_same_dim(c.dim(), s.dim(), "pair_energy");
  if (c.empty()) throw EmptyInput("pair_energy over an empty set");
  std::uint64_t hits = 0;
  for (std::uint64_t x : c) {
    for (std::uint64_t y : c) {
      if (s.contains(x ^ y)) ++hits;
    }
  }
  return Rational(hits, BigInt(c.size()) * c.size());
}

BsgResult bsg_extract(const F2Set& c, const F2Set& s, const Rational& energy_lower_bound,
                      unsigned threads) {
  require_same_dim(c.dim(), s.dim(), "bsg_extract");
  if (c.empty()) throw EmptyInput("bsg_extract over an empty set");
  if (c.size() > kBsgCap) {
    throw CapExceeded("|C| = " + std::to_string(c.size()) + " exceeds the BSG cap " +
                      std::to_string(kBsgCap));
  }
  if (energy_lower_bound <= 0) throw OutOfRange("energy lower bound must be positive");
  BsgResult r{F2Set(c.dim()), 0, 0, pair_energy(c, s), energy_lower_bound,
              Rational(s.size(), c.size()), 0, 0, 0, 0, {}};
  if (r.energy < energy_lower_bound) {
    throw HypothesisError("pair energy " + to_string(r.energy) + " is below the bound " +
                          to_string(energy_lower_bound));
  }
  const auto elems = c.elements();
  const std::size_t n = elems.size();
  std::vector<Bitset> nbr(n, Bitset(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      if (s.contains(elems[u] ^ elems[w])) nbr[u].set(w);
    }
  }
  const Rational eta = energy_lower_bound;
  const std::uint64_t popular_cut = count_at_least(eta * eta * n / 64);
  std::vector<Bitset> unpopular(n, Bitset(n));
  parallel_chunks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      for (std::size_t w = 0; w < n; ++w) {
        if (nbr[u].count_and(nbr[w]) < popular_cut) unpopular[u].set(w);
      }
    }
  });
  std::vector<std::int64_t> score(n, 0);
  parallel_chunks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const auto size = static_cast<std::int64_t>(nbr[v].count());
      std::int64_t bad = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (nbr[v].test(u)) bad += static_cast<std::int64_t>(unpopular[u].count_and(nbr[v]));
      }
      score[v] = size * size - 16 * bad;
    }
  });
  const std::size_t v =
      static_cast<std::size_t>(std::max_element(score.begin(), score.end()) - score.begin());
  const Bitset& u_set = nbr[v];
  const std::size_t u_size = u_set.count();
  std::vector<std::uint64_t> kept;
  for (std::size_t u = 0; u < n; ++u) {
    if (u_set.test(u) && 8 * unpopular[u].count_and(u_set) <= u_size) kept.push_back(elems[u]);
  }
  r.pivot = elems[v];
  r.neighborhood_size = u_size;
  r.subset = F2Set(c.dim(), std::move(kept));
  r.size_ratio = Rational(r.subset.size(), n);
  r.doubling_ratio = Rational(sumset(r.subset, r.subset).size(), n);
  r.size_floor = eta / 4;
  r.doubling_ceiling = Rational(32768) * pfrkit::pow(r.support_ratio, 4) / pfrkit::pow(eta, 5);
  r.checks.push_back(ratio_check("bsg_size", r.size_ratio, r.size_floor, false));
  r.checks.push_back(ratio_check("bsg_doubling", r.doubling_ratio, r.doubling_ceiling, true));
  return r;
}

ComponentResult component_extract(const F2Set& a, const F2Set& cp) {
  require_same_dim(a.dim(), cp.dim(), "component_extract");
  if (a.empty()) throw EmptyInput("component_extract over an empty set");
  const auto elems = a.elements();
  UnionFind uf(elems.size());
  std::uint64_t edges = 0;
  BigInt fiber_mass = 0;
  for (std::uint64_t s : cp) {
    const F2Set fiber = symmetry_set(a, F2Vector(s, a.dim()));
    if (fiber.empty()) throw OutOfRange("C' is not contained in 2A: " + to_binary(s, a.dim()));
    if (s == 0) continue;
    fiber_mass += fiber.size();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const std::size_t j = a.index_of(elems[i] ^ s);
      if (j != F2Set::npos && j > i) {
        uf.unite(i, j);
        ++edges;
      }
    }
  }
  ComponentResult out{F2Set(a.dim()), {}, {}};
  ComponentGraph& g = out.graph;
  g.vertex_count = elems.size();
  g.edge_count = edges;
  std::vector<std::size_t> slot(elems.size(), F2Set::npos);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (root == i) {
      slot[i] = g.component_sizes.size();
      g.component_sizes.push_back(0);
      g.component_minima.push_back(elems[i]);
    }
    ++g.component_sizes[slot[root]];
  }
  g.largest = static_cast<std::size_t>(
      std::max_element(g.component_sizes.begin(), g.component_sizes.end()) -
      g.component_sizes.begin());
  const std::size_t chosen_root = a.index_of(g.component_minima[g.largest]);
  std::vector<std::uint64_t> members;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (uf.find(i) == chosen_root) members.push_back(elems[i]);
  }
  out.component = F2Set(a.dim(), std::move(members));

  CheckResult edge_identity = make_check("edge_count_identity", BigInt(2 * edges) == fiber_mass);
  edge_identity.details["edges"] = edges;
  edge_identity.details["fiber_mass"] = bigint_json(fiber_mass);
  out.checks.push_back(std::move(edge_identity));

  const std::size_t largest = g.component_sizes[g.largest];
  CheckResult comp = make_check("largest_component_bound",
                                BigInt(largest) * elems.size() >= BigInt(2) * edges);
  comp.details["largest_component"] = largest;
  comp.details["lower_bound"] = rational_json(Rational(2 * edges, elems.size()));
  out.checks.push_back(std::move(comp));

  SpanBasis basis(a.dim());
  for (std::uint64_t s : cp) basis.insert(s);
  const std::uint64_t b0 = out.component.min_element();
  std::size_t outside = 0;
  for (std::uint64_t b : out.component) {
    if (!basis.contains(b ^ b0)) ++outside;
  }
  CheckResult in_span = make_check("sumset_in_span", outside == 0);
  in_span.details["cprime_rank"] = basis.rank();
  in_span.details["sums_outside_span"] = outside;
  out.checks.push_back(std::move(in_span));
  return out;
}

ExtractionReport unstructured_pipeline(const F2Set& a, const Rational& L,
                                       const UnstructuredOptions& options) {
  if (a.empty()) throw EmptyInput("unstructured_pipeline over an empty set");
  if (L <= 0) throw OutOfRange("L must be positive");
  const SymmetryProfile p = symmetry_profile(a, ProfileMethod::naive, options.threads);
  ExtractionReport report;
  report.mode = "unstructured";
  report.set_size = p.set_size();
  report.sumset_size = p.sumset_size();
  report.doubling = p.doubling();
  report.L = L;
  report.forced = options.force;

  auto certify = [&](const F2Set& b, const BigInt& bound) {
    const BigInt span_b = span_basis(b).span_size();
    const BigInt span_2b = sumset_span_basis(b).span_size();
    CheckResult affine = make_check("affine_span", span_b <= 2 * span_2b);
    affine.details["span_b"] = bigint_json(span_b);
    affine.details["span_2b"] = bigint_json(span_2b);
    report.checks.push_back(std::move(affine));
    CheckResult certified = make_check("certified_bound", span_b <= bound);
    certified.details["span_b"] = bigint_json(span_b);
    certified.details["bound"] = bigint_json(bound);
    report.checks.push_back(std::move(certified));
    report.extracted = b;
    report.span_size = span_b;
    report.bound = bound;
  };

  if (report.doubling == 1) {
    report.witnesses["fast_path"] = "doubling 1: A is a coset of a subspace";
    certify(a, 2 * sumset_span_basis(a).span_size());
    return report;
  }

  CheckResult hypothesis;
  hypothesis.name = "heavy_fiber_hypothesis";
  const Rational large = large_fiber_probability(p, L);
  const Rational allowed = pfrkit::pow(report.doubling, -8);
  hypothesis.status = large <= allowed ? CheckStatus::passed : CheckStatus::failed;
  hypothesis.details["large_fiber_probability"] = rational_json(large);
  hypothesis.details["allowed"] = rational_json(allowed);
  const bool stop = hypothesis.failed() && !options.force;
  report.gates.push_back(std::move(hypothesis));
  if (stop) return report;

  const TypicalSet typical = typical_set(p, L);
  report.witnesses["typical_set"] = to_json(typical);
  report.checks.push_back(typical.density_check);
  if (typical.set.empty()) {
    report.checks.push_back(make_check("typical_set_nonempty", false, "C is empty"));
    return report;
  }

  const F2Set twice = p.sumset();
  const Rational energy = pair_energy(typical.set, twice);
  const Rational floor = options.energy_floor.value_or(1 / pfrkit::pow(L, 6));
  CheckResult energy_gate = make_check("pair_energy", energy >= floor);
  energy_gate.details["energy"] = rational_json(energy);
  energy_gate.details["floor"] = rational_json(floor);
  const bool energy_stop = energy_gate.failed() && !options.force;
  report.gates.push_back(std::move(energy_gate));
  if (energy_stop) return report;

  const BsgResult bsg = bsg_extract(typical.set, twice, std::min(floor, energy), options.threads);
  report.witnesses["bsg"] = to_json(bsg);
  report.checks.insert(report.checks.end(), bsg.checks.begin(), bsg.checks.end());

  ComponentResult comp = component_extract(a, bsg.subset);
  report.witnesses["graph"] = to_json(comp.graph, a.dim());
  report.witnesses["component_fraction"] =
      rational_json(Rational(comp.component.size(), a.size()));
  report.checks.insert(report.checks.end(), comp.checks.begin(), comp.checks.end());

  const BigInt span_cp = span_basis(bsg.subset).span_size();
  const BigInt span_2b = sumset_span_basis(comp.component).span_size();
  CheckResult nested = make_check("sumset_span_within_cprime_span", span_2b <= span_cp);
  nested.details["span_2b"] = bigint_json(span_2b);
  nested.details["span_cprime"] = bigint_json(span_cp);
  report.checks.push_back(std::move(nested));

  CheckResult fr = freiman_ruzsa_check(bsg.subset);
  // span(C') <= min(2^{ceil(2K')}|C'|, 2^n), the second term being trivial.
  const BigInt exponent = ceil(2 * doubling(bsg.subset));
  BigInt cp_bound = pow2(static_cast<unsigned>(a.dim()));
  if (exponent < a.dim()) {
    cp_bound = std::min(cp_bound, pow2(exponent.convert_to<unsigned>()) * bsg.subset.size());
  }
  fr.details["cprime_span_bound"] = bigint_json(cp_bound);
  report.checks.push_back(std::move(fr));
  certify(comp.component, 2 * cp_bound);
  return report;
}

Json to_json(const TypicalSet& t) {
  Json out = Json::object();
  out["size"] = t.set.size();
  out["lower_threshold"] = rational_json(t.lower);
  out["upper_threshold"] = rational_json(t.upper);
  out["density"] = rational_json(t.density);
  out["elements"] = set_json(t.set);
  return out;
}

Json to_json(const BsgResult& r) {
  Json out = Json::object();
  out["pivot"] = to_binary(r.pivot, r.subset.dim());
  out["neighborhood_size"] = r.neighborhood_size;
  out["energy"] = rational_json(r.energy);
  out["energy_bound"] = rational_json(r.energy_bound);
  out["support_ratio"] = rational_json(r.support_ratio);
  out["size_ratio"] = rational_json(r.size_ratio);
  out["size_floor"] = rational_json(r.size_floor);
  out["doubling_ratio"] = rational_json(r.doubling_ratio);
  out["doubling_ceiling"] = rational_json(r.doubling_ceiling);
  out["size"] = r.subset.size();
  out["elements"] = set_json(r.subset);
  return out;
}

Json to_json(const ComponentGraph& g, int dim) {
  Json out = Json::object();
  out["vertices"] = g.vertex_count;
  out["edges"] = g.edge_count;
  out["components"] = g.component_sizes.size();
  out["largest_size"] = g.component_sizes.at(g.largest);
  out["largest_min_element"] = to_binary(g.component_minima.at(g.largest), dim);
  Json sizes = Json::array();
  for (auto s : g.component_sizes) sizes.push_back(s);
  out["component_sizes"] = std::move(sizes);
  return out;
}

}  // namespace pfrkit

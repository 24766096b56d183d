#include "pfrkit/stats.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "pfrkit/error.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/parallel.hpp"
#include "pfrkit/span.hpp"

namespace pfrkit {
namespace {

using u128 = unsigned __int128;

BigInt to_bigint(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

BigInt set_size_pow(const SymmetryProfile& p, unsigned e) {
  return boost::multiprecision::pow(BigInt(p.set_size()), e);
}

void require_cap(std::size_t value, std::size_t cap, const char* what) {
  if (value > cap) {
    throw CapExceeded(std::string(what) + " " + std::to_string(value) + " exceeds cap " +
                      std::to_string(cap));
  }
}

struct QuadrupleSums {
  u128 z = 0;
  u128 z2 = 0;
  u128 y2 = 0;
  std::uint64_t z_positive = 0;
};

// Direct enumeration of (b1, b2, b3, b4) in A^4 from the definitions of Y and Z;
// fibers are recomputed from the set itself rather than read from the profile.
QuadrupleSums enumerate_quadruples(const F2Set& a) {
  require_cap(a.size(), kBruteForceCap, "|A| for quadruple enumeration");
  const std::size_t m = a.size();
  const auto elems = a.elements();
  std::vector<std::uint32_t> pair_mask(m * m, 0);
  std::set<std::uint64_t> sums;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t s = elems[i] ^ elems[j];
      sums.insert(s);
      std::uint32_t mask = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (a.contains(elems[k] ^ s)) mask |= std::uint32_t{1} << k;
      }
      pair_mask[i * m + j] = mask;
    }
  }
  // Z = 0 when |A(s)| <= |A|/2K, i.e. 2|A(s)||2A| <= |A|^2.
  const std::uint64_t lhs_scale = 2 * sums.size();
  const std::uint64_t rhs = static_cast<std::uint64_t>(m) * m;
  auto guarded = [&](std::uint32_t mask) {
    return static_cast<std::uint64_t>(std::popcount(mask)) * lhs_scale > rhs;
  };
  QuadrupleSums out;
  for (std::size_t first = 0; first < m * m; ++first) {
    const std::uint32_t m1 = pair_mask[first];
    const bool g1 = guarded(m1);
    for (std::size_t second = 0; second < m * m; ++second) {
      const std::uint32_t m2 = pair_mask[second];
      const std::uint64_t y = static_cast<std::uint64_t>(std::popcount(m1 & m2));
      out.y2 += y * y;
      if (g1 && guarded(m2)) {
        out.z += y;
        out.z2 += y * y;
        if (y > 0) ++out.z_positive;
      }
    }
  }
  return out;
}

struct PairCountSums {
  BigInt y2;
  BigInt z2;
};

// sum over (a1, a2) of N(a1,a2)^2 and N_guarded(a1,a2)^2 where
// N(a1,a2) = sum_{c1 in A(a1+a2)} |A(a1+c1)|.
PairCountSums pair_count_sums(const SymmetryProfile& p, unsigned threads) {
  require_cap(p.set_size(), kPairCountCap, "|A| for the pair-count route");
  const F2Set& a = p.base();
  const auto elems = a.elements();
  const std::uint64_t guard_cut = count_above(guard_threshold(p));
  std::vector<std::pair<u128, u128>> partial(chunk_count(elems.size(), threads));
  parallel_chunks(elems.size(), threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    u128 y2 = 0;
    u128 z2 = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t a1 = elems[i];
      for (std::size_t j = i; j < elems.size(); ++j) {
        const std::uint64_t t = a1 ^ elems[j];
        std::uint64_t n = 0;
        std::uint64_t ng = 0;
        for (std::uint64_t c1 : elems) {
          if (!a.contains(c1 ^ t)) continue;
          const std::uint64_t f = p.fiber_size(a1 ^ c1);
          n += f;
          if (f >= guard_cut) ng += f;
        }
        const u128 weight = (i == j) ? 1 : 2;
        y2 += weight * u128(n) * n;
        z2 += weight * u128(ng) * ng;
      }
    }
    partial[c] = {y2, z2};
  });
  PairCountSums out{0, 0};
  for (const auto& [y2, z2] : partial) {
    out.y2 += to_bigint(y2);
    out.z2 += to_bigint(z2);
  }
  return out;
}

struct FiberPairSums {
  BigInt z;
  BigInt z2;
  BigInt y2;
  BigInt z_positive;
};

// Enumerates ordered pairs (s1, s2) of sums; each stands for |A(s1)||A(s2)|
// quadruples, all with Y = |A(s1) ∩ A(s2)|.
FiberPairSums fiber_pair_sums(const SymmetryProfile& p, unsigned threads) {
  require_cap(p.sumset_size(), kFiberPairCap, "|2A| for fiber-pair enumeration");
  const F2Set& a = p.base();
  const auto elems = a.elements();
  const std::size_t words = (elems.size() + 63) / 64;
  const auto fibers = p.fibers();
  const std::size_t f = fibers.size();
  const std::uint64_t guard_cut = count_above(guard_threshold(p));
  std::vector<std::uint64_t> masks(f * words, 0);
  for (std::size_t k = 0; k < f; ++k) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (a.contains(elems[i] ^ fibers[k].sum)) masks[k * words + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  struct Partial {
    u128 z = 0, z2 = 0, y2 = 0, zpos = 0;
  };
  std::vector<Partial> partial(chunk_count(f, threads));
  parallel_chunks(f, threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Partial acc;
    for (std::size_t k1 = begin; k1 < end; ++k1) {
      const std::uint64_t* m1 = &masks[k1 * words];
      const bool g1 = fibers[k1].count >= guard_cut;
      for (std::size_t k2 = k1; k2 < f; ++k2) {
        const std::uint64_t* m2 = &masks[k2 * words];
        std::uint64_t y = 0;
        for (std::size_t w = 0; w < words; ++w) y += std::popcount(m1[w] & m2[w]);
        const u128 weight = u128(k1 == k2 ? 1 : 2) * fibers[k1].count * fibers[k2].count;
        acc.y2 += weight * y * y;
        if (g1 && fibers[k2].count >= guard_cut) {
          acc.z += weight * y;
          acc.z2 += weight * y * y;
          if (y > 0) acc.zpos += weight;
        }
      }
    }
    partial[c] = acc;
  });
  FiberPairSums out{0, 0, 0, 0};
  for (const auto& part : partial) {
    out.z += to_bigint(part.z);
    out.z2 += to_bigint(part.z2);
    out.y2 += to_bigint(part.y2);
    out.z_positive += to_bigint(part.zpos);
  }
  return out;
}

Rational over_a4(const SymmetryProfile& p, const BigInt& numerator) {
  return Rational(numerator, set_size_pow(p, 4));
}

MomentMethod auto_second_moment_method(const SymmetryProfile& p) {
  if (p.set_size() <= kPairCountCap) return MomentMethod::closed_form;
  if (p.sumset_size() <= kFiberPairCap) return MomentMethod::fiber_pairs;
  throw CapExceeded("E[Y^2] needs |A| <= " + std::to_string(kPairCountCap) + " or |2A| <= " +
                    std::to_string(kFiberPairCap));
}

}  // namespace

MomentMethod parse_moment_method(std::string_view name) {
  if (name == "closed" || name == "lemma4") return MomentMethod::closed_form;
  if (name == "brute") return MomentMethod::brute;
  if (name == "fiber-pairs") return MomentMethod::fiber_pairs;
  throw OutOfRange("unknown moment method '" + std::string(name) + "'");
}

Rational heavy_threshold(const SymmetryProfile& p, const Rational& L) {
  return L * Rational(BigInt(p.set_size()) * p.set_size(), p.sumset_size());
}

Rational guard_threshold(const SymmetryProfile& p) {
  return Rational(BigInt(p.set_size()) * p.set_size(), BigInt(2) * p.sumset_size());
}

Rational large_fiber_probability(const SymmetryProfile& p, const Rational& L) {
  const std::uint64_t cut = count_at_least(heavy_threshold(p, L));
  BigInt mass = 0;
  for (const auto& f : p.fibers()) {
    if (f.count >= cut) mass += f.count;
  }
  return Rational(mass, set_size_pow(p, 2));
}

Rational uniform_fiber_probability(const SymmetryProfile& p, const Rational& L) {
  const std::uint64_t cut = count_at_least(heavy_threshold(p, L));
  std::size_t heavy = 0;
  for (const auto& f : p.fibers()) {
    if (f.count >= cut) ++heavy;
  }
  return Rational(heavy, p.sumset_size());
}

Rational small_fiber_probability(const SymmetryProfile& p) {
  const std::uint64_t cut = count_above(guard_threshold(p));
  BigInt mass = 0;
  for (const auto& f : p.fibers()) {
    if (f.count < cut) mass += f.count;
  }
  return Rational(mass, set_size_pow(p, 2));
}

bool heavy_fiber_hypothesis(const SymmetryProfile& p, const Rational& L) {
  return large_fiber_probability(p, L) <= pfrkit::pow(p.doubling(), -8);
}

Rational expectation_z(const SymmetryProfile& p, MomentMethod method, unsigned threads) {
  if (method == MomentMethod::brute) return over_a4(p, to_bigint(enumerate_quadruples(p.base()).z));
  if (method == MomentMethod::fiber_pairs) return over_a4(p, fiber_pair_sums(p, threads).z);
  // E[Z] = sum_a q(a)^2 with |A|^2 q(a) = sum_{s in a+A, |A(s)| > |A|/2K} |A(s)|.
  const auto elems = p.base().elements();
  const std::uint64_t guard_cut = count_above(guard_threshold(p));
  std::vector<u128> partial(chunk_count(elems.size(), threads), 0);
  parallel_chunks(elems.size(), threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    u128 acc = 0;
    for (std::size_t i = begin; i < end; ++i) {
      std::uint64_t q = 0;
      for (std::uint64_t x : elems) {
        const std::uint64_t f = p.fiber_size(elems[i] ^ x);
        if (f >= guard_cut) q += f;
      }
      acc += u128(q) * q;
    }
    partial[c] = acc;
  });
  BigInt total = 0;
  for (u128 v : partial) total += to_bigint(v);
  return over_a4(p, total);
}

Rational expectation_y2(const SymmetryProfile& p, MomentMethod method, unsigned threads) {
  switch (method) {
    case MomentMethod::brute: return over_a4(p, to_bigint(enumerate_quadruples(p.base()).y2));
    case MomentMethod::fiber_pairs: return over_a4(p, fiber_pair_sums(p, threads).y2);
    case MomentMethod::closed_form: break;
  }
  return over_a4(p, pair_count_sums(p, threads).y2);
}

Rational expectation_z2(const SymmetryProfile& p, MomentMethod method, unsigned threads) {
  switch (method) {
    case MomentMethod::brute: return over_a4(p, to_bigint(enumerate_quadruples(p.base()).z2));
    case MomentMethod::fiber_pairs: return over_a4(p, fiber_pair_sums(p, threads).z2);
    case MomentMethod::closed_form: break;
  }
  return over_a4(p, pair_count_sums(p, threads).z2);
}

MomentReport pr_z_positive(const SymmetryProfile& p, std::optional<Rational> L, unsigned threads) {
  const FiberPairSums sums = fiber_pair_sums(p, threads);
  MomentReport report;
  report.expectation_z = over_a4(p, sums.z);
  report.expectation_z2 = over_a4(p, sums.z2);
  report.expectation_y2 = over_a4(p, sums.y2);
  report.pr_z_positive = over_a4(p, sums.z_positive);
  report.guard_threshold = guard_threshold(p);
  const Rational ez_sq = report.expectation_z * report.expectation_z;
  report.paley_zygmund_lower = ez_sq / report.expectation_y2;
  if (L) {
    report.L = *L;
    report.heavy_threshold = heavy_threshold(p, *L);
  }
  // E[Z^2] = 0 forces Z = 0 almost surely, and then Pr[Z>0] = 0 = E[Z]^2.
  const Rational pz_lower =
      report.expectation_z2 > 0 ? ez_sq / report.expectation_z2 : Rational(0);
  report.chain_holds = report.pr_z_positive >= pz_lower &&
                       pz_lower >= report.paley_zygmund_lower &&
                       report.expectation_z2 <= report.expectation_y2;
  return report;
}

Rational pr_z_positive_brute(const SymmetryProfile& p) {
  return over_a4(p, enumerate_quadruples(p.base()).z_positive);
}

CheckResult lemma4_bijection_check(const F2Set& a, const F2Vector& a1, const F2Vector& a2) {
  require_same_dim(a.dim(), a1.dim(), "lemma4_bijection_check");
  require_same_dim(a.dim(), a2.dim(), "lemma4_bijection_check");
  if (!a.contains(a1.bits()) || !a.contains(a2.bits())) {
    throw OutOfRange("lemma4_bijection_check: a1 and a2 must lie in A");
  }
  using Pair = std::pair<std::uint64_t, std::uint64_t>;
  const std::uint64_t x1 = a1.bits();
  const std::uint64_t x2 = a2.bits();
  // First set: (b1, b2) with a1, a2 both in A(b1 + b2).
  std::vector<Pair> first;
  for (std::uint64_t b1 : a) {
    for (std::uint64_t b2 : a) {
      const std::uint64_t s = b1 ^ b2;
      if (a.contains(x1 ^ s) && a.contains(x2 ^ s)) first.emplace_back(b1, b2);
    }
  }
  // Second set: (c1, b2) with c1 in A(a1 + a2) and b2 in A(a1 + c1).
  std::vector<Pair> second;
  for (std::uint64_t c1 : a) {
    if (!a.contains(c1 ^ x1 ^ x2)) continue;
    for (std::uint64_t b2 : a) {
      if (a.contains(b2 ^ x1 ^ c1)) second.emplace_back(c1, b2);
    }
  }
  std::sort(second.begin(), second.end());

  std::size_t outside = 0;
  std::vector<Pair> images;
  images.reserve(first.size());
  for (const auto& [b1, b2] : first) {
    const Pair image{x1 ^ b1 ^ b2, b2};
    if (!std::binary_search(second.begin(), second.end(), image)) ++outside;
    images.push_back(image);
  }
  std::sort(images.begin(), images.end());
  const bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();

  std::vector<Pair> first_sorted = first;
  std::sort(first_sorted.begin(), first_sorted.end());
  std::size_t preimage_outside = 0;
  for (const auto& [c1, b2] : second) {
    const Pair preimage{x1 ^ b2 ^ c1, b2};
    if (!std::binary_search(first_sorted.begin(), first_sorted.end(), preimage)) {
      ++preimage_outside;
    }
  }
  const bool holds = outside == 0 && injective && preimage_outside == 0 &&
                     first.size() == second.size();
  CheckResult check = make_check("lemma8_bijection", holds);
  check.details["a1"] = a1.to_binary();
  check.details["a2"] = a2.to_binary();
  check.details["first_set_size"] = first.size();
  check.details["second_set_size"] = second.size();
  check.details["images_outside_second_set"] = outside;
  check.details["injective"] = injective;
  check.details["preimages_outside_first_set"] = preimage_outside;
  if (!holds) check.message = "map (b1,b2) -> (a1+b1+b2, b2) is not a bijection";
  return check;
}

CheckResult freiman_ruzsa_check(const F2Set& a) {
  const Rational k = doubling(a);
  const SpanBasis basis = span_basis(a);
  const BigInt span = basis.span_size();
  const BigInt exponent = ceil(Rational(2) * k);
  CheckResult check;
  check.name = "freiman_ruzsa";
  check.details["doubling"] = rational_json(k);
  check.details["span_size"] = bigint_json(span);
  check.details["set_size"] = a.size();
  check.details["ceil_exponent"] = bigint_json(exponent);
  // span <= 2^n always, so a bound of at least 2^n cannot fail.
  const bool vacuous = exponent >= a.dim();
  check.details["vacuous"] = vacuous;
  bool ceil_holds = true;
  if (!vacuous) {
    const BigInt bound = pow2(exponent.convert_to<unsigned>()) * a.size();
    check.details["ceil_bound"] = bigint_json(bound);
    ceil_holds = span <= bound;
  }
  check.details["ceil_holds"] = ceil_holds;
  bool exact_holds = ceil_holds;
  if (!vacuous) {
    try {
      exact_holds = compare_powers(Rational(span, a.size()), 1, 2, Rational(2) * k) <= 0;
      check.details["exact_holds"] = exact_holds;
    } catch (const CapExceeded&) {
      check.details["exact_holds"] = nullptr;
    }
  } else {
    check.details["exact_holds"] = true;
  }
  check.status = (ceil_holds && exact_holds) ? CheckStatus::passed : CheckStatus::failed;
  if (vacuous) check.message = "bound vacuous at this scale (2^{ceil(2K)} >= 2^n)";
  return check;
}

CheckResult mass_identity_check(const SymmetryProfile& p) {
  const BigInt mass = p.total_mass();
  const BigInt expected = set_size_pow(p, 2);
  const Rational mean = p.mean_fiber();
  const Rational expected_mean = Rational(p.set_size()) / p.doubling();
  CheckResult check = make_check("mass_identity", mass == expected && mean == expected_mean);
  check.details["total_mass"] = bigint_json(mass);
  check.details["set_size_squared"] = bigint_json(expected);
  check.details["mean_fiber"] = rational_json(mean);
  check.details["set_size_over_doubling"] = rational_json(expected_mean);
  return check;
}

CheckResult small_fiber_check(const SymmetryProfile& p) {
  const Rational prob = small_fiber_probability(p);
  CheckResult check = make_check("small_fiber_markov", prob <= Rational(1, 2));
  check.details["probability"] = rational_json(prob);
  check.details["guard_threshold"] = rational_json(guard_threshold(p));
  return check;
}

CheckResult lemma6_check(const SymmetryProfile& p, unsigned threads) {
  const Rational ez = expectation_z(p, MomentMethod::closed_form, threads);
  const Rational k = p.doubling();
  const Rational bound = Rational(p.set_size()) / (16 * k * k);
  CheckResult check = make_check("lemma6", ez >= bound);
  check.details["expectation_z"] = rational_json(ez);
  check.details["bound"] = rational_json(bound);
  return check;
}

CheckResult lemma7_check(const SymmetryProfile& p, const Rational& L, unsigned threads) {
  const Rational k = p.doubling();
  const Rational prob = large_fiber_probability(p, L);
  const Rational allowed = pfrkit::pow(k, -8);
  CheckResult check;
  check.name = "lemma7";
  check.details["L"] = rational_json(L);
  check.details["large_fiber_probability"] = rational_json(prob);
  check.details["hypothesis_bound"] = rational_json(allowed);
  if (prob > allowed) {
    check.status = CheckStatus::not_applicable;
    check.message = "hypothesis not satisfied, bound not asserted";
    return check;
  }
  const Rational ey2 = expectation_y2(p, auto_second_moment_method(p), threads);
  const Rational a = p.set_size();
  const Rational bound = 6 * pfrkit::pow(L, 4) * a * a / pfrkit::pow(k, 4);
  check.status = ey2 <= bound ? CheckStatus::passed : CheckStatus::failed;
  check.details["expectation_y2"] = rational_json(ey2);
  check.details["bound"] = rational_json(bound);
  return check;
}

CheckResult eq6_check(const MomentReport& report) {
  CheckResult check = make_check("eq6_paley_zygmund", report.chain_holds);
  check.details["pr_z_positive"] = rational_json(report.pr_z_positive);
  check.details["expectation_z"] = rational_json(report.expectation_z);
  check.details["expectation_z2"] = rational_json(report.expectation_z2);
  check.details["expectation_y2"] = rational_json(report.expectation_y2);
  check.details["paley_zygmund_lower"] = rational_json(report.paley_zygmund_lower);
  return check;
}

CheckResult fiber_conversion_check(const SymmetryProfile& p, const Rational& L) {
  const Rational pair_prob = large_fiber_probability(p, L);
  const Rational uniform_prob = uniform_fiber_probability(p, L);
  const Rational k = p.doubling();
  CheckResult check = make_check("fiber_conversion", pair_prob <= k * uniform_prob);
  check.details["L"] = rational_json(L);
  check.details["pair_probability"] = rational_json(pair_prob);
  check.details["uniform_probability"] = rational_json(uniform_prob);
  check.details["doubling"] = rational_json(k);
  return check;
}

Json to_json(const MomentReport& report) {
  Json out = Json::object();
  out["expectation_z"] = rational_json(report.expectation_z);
  out["expectation_z2"] = rational_json(report.expectation_z2);
  out["expectation_y2"] = rational_json(report.expectation_y2);
  out["pr_z_positive"] = rational_json(report.pr_z_positive);
  out["paley_zygmund_lower"] = rational_json(report.paley_zygmund_lower);
  out["guard_threshold"] = rational_json(report.guard_threshold);
  out["L"] = report.L ? rational_json(*report.L) : Json(nullptr);
  out["heavy_threshold"] = report.heavy_threshold ? rational_json(*report.heavy_threshold) : Json(nullptr);
  out["chain_holds"] = report.chain_holds;
  return out;
}

}  // namespace pfrkit

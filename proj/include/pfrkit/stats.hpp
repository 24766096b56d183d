#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "pfrkit/check.hpp"
#include "pfrkit/f2set.hpp"
#include "pfrkit/f2vector.hpp"
#include "pfrkit/profile.hpp"
#include "pfrkit/rational.hpp"

namespace pfrkit {

/// |A| cap for enumerating all |A|^4 quadruples (beta1..beta4).
inline constexpr std::size_t kBruteForceCap = 24;
/// |A| cap for the O(|A|^3) pair-count route to E[Y^2].
inline constexpr std::size_t kPairCountCap = 1024;
/// |2A| cap for the exact Pr[Z > 0] fiber-pair enumeration.
inline constexpr std::size_t kFiberPairCap = 4096;

enum class MomentMethod {
  closed_form,  // per-element (E[Z]) or per-pair (E[Y^2], E[Z^2]) counts from the profile
  brute,        // enumerate all quadruples in A^4 (|A| <= kBruteForceCap)
  fiber_pairs,  // weight pairs (s1, s2) of sums by |A(s1)||A(s2)| (|2A| <= kFiberPairCap)
};

/// Accepts "closed", "lemma4" (alias of closed), "brute" and "fiber-pairs".
MomentMethod parse_moment_method(std::string_view name);

// Thresholds, exact. K = |2A|/|A| throughout.

/// L|A|/K.
Rational heavy_threshold(const SymmetryProfile& p, const Rational& L);
/// |A|/(2K): Z vanishes when either fiber is at most this.
Rational guard_threshold(const SymmetryProfile& p);

/// Pr_{a1,a2 in A}[|A(a1+a2)| >= L|A|/K], the pair mass of the heavy fibers.
Rational large_fiber_probability(const SymmetryProfile& p, const Rational& L);
/// Pr_{s in 2A}[|A(s)| >= L|A|/K], s uniform over the sumset.
Rational uniform_fiber_probability(const SymmetryProfile& p, const Rational& L);
/// Pr_{b1,b2 in A}[|A(b1+b2)| <= |A|/2K]; never exceeds 1/2.
Rational small_fiber_probability(const SymmetryProfile& p);
/// True when large_fiber_probability(L) <= K^-8.
bool heavy_fiber_hypothesis(const SymmetryProfile& p, const Rational& L);

/// E[Z] over uniform beta1..beta4 in A.
Rational expectation_z(const SymmetryProfile& p, MomentMethod method = MomentMethod::closed_form,
                       unsigned threads = 1);
/// E[Y^2]. The closed form squares the per-pair counts
/// #{(b1,b2) : {a1,a2} ⊆ A(b1+b2)} = sum_{c1 in A(a1+a2)} |A(a1+c1)|.
Rational expectation_y2(const SymmetryProfile& p, MomentMethod method = MomentMethod::closed_form,
                        unsigned threads = 1);
/// E[Z^2], same pair-count route with the guard applied to s = a1 + c1.
Rational expectation_z2(const SymmetryProfile& p, MomentMethod method = MomentMethod::closed_form,
                        unsigned threads = 1);

struct MomentReport {
  Rational expectation_z;
  Rational expectation_z2;
  Rational expectation_y2;
  Rational pr_z_positive;
  Rational paley_zygmund_lower;  // E[Z]^2 / E[Y^2]
  Rational guard_threshold;      // |A|/2K
  std::optional<Rational> L;
  std::optional<Rational> heavy_threshold;  // L|A|/K when L is given
  /// Pr[Z>0] >= E[Z]^2/E[Z^2] >= E[Z]^2/E[Y^2].
  bool chain_holds = false;
};

/// All second-moment quantities; Pr[Z>0] is counted exactly by enumerating
/// pairs of guarded fibers weighted by |A(s1)||A(s2)| (|2A| <= kFiberPairCap).
MomentReport pr_z_positive(const SymmetryProfile& p, std::optional<Rational> L = std::nullopt,
                           unsigned threads = 1);
/// Pr[Z > 0] by enumerating quadruples (|A| <= kBruteForceCap).
Rational pr_z_positive_brute(const SymmetryProfile& p);

/// Materializes both sides of the pair-count identity for fixed a1, a2 in A
/// and verifies that (b1, b2) -> (a1 + b1 + b2, b2) is a bijection between them.
CheckResult lemma4_bijection_check(const F2Set& a, const F2Vector& a1, const F2Vector& a2);

/// span(A) <= 2^{2K}|A|, checked with the ceiling ⌈2K⌉ and, where the powers
/// stay small, exactly.
CheckResult freiman_ruzsa_check(const F2Set& a);

// Identity and inequality checks with their exact values in `details`.
CheckResult mass_identity_check(const SymmetryProfile& p);
CheckResult small_fiber_check(const SymmetryProfile& p);
CheckResult lemma6_check(const SymmetryProfile& p, unsigned threads = 1);
/// not_applicable when the heavy-fiber hypothesis fails for this L.
CheckResult lemma7_check(const SymmetryProfile& p, const Rational& L, unsigned threads = 1);
CheckResult eq6_check(const MomentReport& report);
CheckResult fiber_conversion_check(const SymmetryProfile& p, const Rational& L);

Json to_json(const MomentReport& report);

}  // namespace pfrkit

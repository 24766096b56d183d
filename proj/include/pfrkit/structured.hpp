#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pfrkit/check.hpp"
#include "pfrkit/f2set.hpp"
#include "pfrkit/f2vector.hpp"
#include "pfrkit/profile.hpp"
#include "pfrkit/rational.hpp"
#include "pfrkit/report.hpp"

namespace pfrkit {

/// Chain lengths above this are refused.
inline constexpr int kMaxChainLength = 4096;

/// The scale t = K^-e. Comparisons against rationals are exact by powering both
/// sides to the common denominator; when that would exceed the power cap they
/// fall back to a 48-bit dyadic upper bound of t and set approximate().
class DecayScale {
 public:
  DecayScale(Rational base, Rational exponent);

  const Rational& base() const noexcept { return base_; }
  const Rational& exponent() const noexcept { return exponent_; }
  /// Dyadic rational >= K^-e.
  const Rational& upper() const noexcept { return upper_; }
  bool approximate() const noexcept { return approximate_; }

  /// Sign of 2^j * K^-e - x.
  int compare(int j, const Rational& x) const;

 private:
  Rational base_;
  Rational exponent_;
  Rational upper_;
  mutable bool approximate_ = false;
};

/// S(delta) = {s in 2A : |A(s)| > |A|(1 - delta)}, 0 < delta <= 1.
struct LevelSet {
  Rational delta;
  F2Set set;
};

LevelSet level_set(const SymmetryProfile& p, const Rational& delta);
/// S(min(2^j K^-eps, 1)).
F2Set chain_level_set(const SymmetryProfile& p, const DecayScale& scale, int j);

struct StructuredB {
  F2Set set;
  Rational fraction;                      // |B|/|A|
  std::optional<std::uint64_t> smallest_L;  // least natural L with |B| >= K^-L |A|
  bool approximate = false;
};

/// B = {b in A : |A(a* + b)| > |A|(1 - K^-eps)}; B = A when K = 1.
StructuredB structured_B(const SymmetryProfile& p, const F2Vector& a_star, const Rational& eps);

/// B+B ⊆ S(2K^-eps), then S(d_j)+S(d_j) ⊆ S(d_{j+1}) along the chain
/// d_j = 2^j K^-eps (j < r), then S(d)+S(d) ⊆ S(min(2d, 1)) for each extra d.
/// A violation with 2d > 1 is flagged rather than failed: the sum of two
/// elements of S(d) may then leave 2A altogether.
std::vector<CheckResult> containment_checks(const SymmetryProfile& p, const F2Set& b,
                                            const Rational& eps,
                                            const std::vector<Rational>& extra_deltas = {});

/// Smallest r with 2^r K^-eps > 1/2, so the last chain term lies in (1/2, 1].
int chain_length(const DecayScale& scale);

struct ChainReport {
  Rational eps;
  Rational L;
  Rational doubling;
  int r = 0;
  std::vector<std::size_t> sizes;  // |S(2^j K^-eps)|, j = 0..r
  int chosen = 0;                  // j in 1..r-1
  bool chosen_meets_bound = false; // ratio <= K^{(L+1)/(r-1)}
  Rational chosen_ratio;
  std::size_t chosen_span_rank = 0;
  /// Largest integer m (capped at 128) with m <= 2 * 4^{L/eps}.
  std::int64_t exponent_floor = 0;
  BigInt level_bound;  // 2^m |2A| >= span(S_j) when certified
  bool approximate = false;
  std::vector<CheckResult> checks;
};

/// Level sets along the chain and the smallest j with
/// |S(2^{j+1}K^-eps)| <= K^{(L+1)/(r-1)} |S(2^j K^-eps)|. Requires K > 1, r >= 2.
ChainReport chain_select(const SymmetryProfile& p, const Rational& eps, const Rational& L);

struct AStarScan {
  std::uint64_t a_star = 0;
  std::size_t count = 0;     // #{a2 : |A(a* + a2)| >= |A|(1 - K^{-1/L})}
  Rational fraction;         // count / |A|
  Rational pair_fraction;    // the same event over uniform (a1, a2)
  CheckResult promise;       // pair_fraction >= K^{-L-1}
};

/// a1 in A maximizing the conditional fraction (smallest a1 on ties).
AStarScan scan_astar(const SymmetryProfile& p, const Rational& L);

struct StructuredOptions {
  bool force = false;
  unsigned threads = 1;
};

ExtractionReport structured_pipeline(const F2Set& a, const F2Vector& a_star, const Rational& eps,
                                     const Rational& L, const StructuredOptions& options = {});

Json to_json(const ChainReport& chain);
Json to_json(const AStarScan& scan, int dim);

}  // namespace pfrkit

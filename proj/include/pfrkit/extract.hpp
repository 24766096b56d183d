#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pfrkit/check.hpp"
#include "pfrkit/f2set.hpp"
#include "pfrkit/profile.hpp"
#include "pfrkit/rational.hpp"
#include "pfrkit/report.hpp"

namespace pfrkit {

/// |C| cap for the pair-graph construction in bsg_extract.
inline constexpr std::size_t kBsgCap = 4096;

/// C = {s in 2A : |A|/2K <= |A(s)| <= L|A|/K}.
struct TypicalSet {
  F2Set set;
  Rational lower;    // |A|/2K
  Rational upper;    // L|A|/K
  Rational density;  // |C|/|2A|
  /// density >= 1/4L, checked when the heavy-fiber hypothesis holds and K >= 2.
  CheckResult density_check;
};

TypicalSet typical_set(const SymmetryProfile& p, const Rational& L);

/// Pr[g1 + g2 in S] for g1, g2 uniform in C.
Rational pair_energy(const F2Set& c, const F2Set& s);

struct BsgResult {
  F2Set subset;           // C'
  std::uint64_t pivot = 0;
  std::size_t neighborhood_size = 0;  // |U| = #{u in C : u + pivot in S}
  Rational energy;                    // measured Pr[g1 + g2 in S]
  Rational energy_bound;              // caller's lower bound eta
  Rational support_ratio;             // sigma = |S|/|C|
  Rational size_ratio;                // |C'|/|C|
  Rational doubling_ratio;            // |C'+C'|/|C|
  Rational size_floor;                // eta/4
  Rational doubling_ceiling;          // 2^15 sigma^4 / eta^5
  std::vector<CheckResult> checks;
};

/// Constructive Balog-Szemeredi-Gowers step on the graph u ~ w iff u + w in S.
///
/// A pair (u, w) is popular when N(u) ∩ N(w) has at least eta^2|C|/64
/// elements. The pivot v maximizes |U|^2 - 16 * #{unpopular ordered pairs in
/// U} over U = N(v) (smallest v on ties); averaging over v shows the maximum is
/// at least 3/4 eta^2|C|^2. C' is U minus every u with more than |U|/8
/// unpopular partners in U. Then |C'| > |U|/2 >= eta|C|/4, and any two
/// elements of C' are joined by more than |U|/4 popular paths of length two,
/// which gives |C'+C'| <= 2^15 sigma^4 eta^-5 |C|.
BsgResult bsg_extract(const F2Set& c, const F2Set& s, const Rational& energy_lower_bound,
                      unsigned threads = 1);

/// Graph on A with a1 ~ a2 iff a1 + a2 in C' (0 in C' contributes nothing).
struct ComponentGraph {
  std::size_t vertex_count = 0;
  std::uint64_t edge_count = 0;  // unordered pairs
  /// Component sizes, ordered by each component's smallest element.
  std::vector<std::size_t> component_sizes;
  std::vector<std::uint64_t> component_minima;
  std::size_t largest = 0;  // index into component_sizes
};

struct ComponentResult {
  F2Set component;  // B
  ComponentGraph graph;
  std::vector<CheckResult> checks;
};

/// Largest connected component (ties: smallest minimum). Requires C' ⊆ 2A.
ComponentResult component_extract(const F2Set& a, const F2Set& cp);

struct UnstructuredOptions {
  bool force = false;
  /// Minimum pair energy of C in 2A; defaults to 1/L^6.
  std::optional<Rational> energy_floor;
  unsigned threads = 1;
};

/// Typical set -> energy gate -> BSG -> largest component -> span certification.
ExtractionReport unstructured_pipeline(const F2Set& a, const Rational& L,
                                       const UnstructuredOptions& options = {});

Json to_json(const TypicalSet& t);
Json to_json(const BsgResult& r);
Json to_json(const ComponentGraph& g, int dim);

}  // namespace pfrkit

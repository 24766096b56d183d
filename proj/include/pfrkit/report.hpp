#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfrkit/check.hpp"
#include "pfrkit/f2set.hpp"
#include "pfrkit/rational.hpp"

namespace pfrkit {

enum class PipelineStatus {
  ok,
  gate_failed,   // a hypothesis gate failed and --force was not given
  check_failed,  // a certification step did not hold
};

std::string_view to_string(PipelineStatus status);

/// Shared result of both extraction pipelines.
struct ExtractionReport {
  std::string mode;  // "unstructured" or "structured"
  std::size_t set_size = 0;
  std::size_t sumset_size = 0;
  Rational doubling;
  std::optional<Rational> L;
  std::optional<Rational> eps;
  bool forced = false;

  /// Hypotheses; a failed gate stops the pipeline unless forced.
  std::vector<CheckResult> gates;
  /// Asserted identities and inequalities, in pipeline order.
  std::vector<CheckResult> checks;
  /// Intermediate objects (typical set, C', components, chain, ...).
  Json witnesses = Json::object();

  std::optional<F2Set> extracted;  // B, absent when the pipeline stopped early
  std::optional<BigInt> span_size;
  std::optional<BigInt> bound;     // certified upper bound on span(B)

  PipelineStatus status() const;
  bool completed() const noexcept { return extracted.has_value(); }
};

Json to_json(const ExtractionReport& report);
Json set_json(const F2Set& s);

}  // namespace pfrkit

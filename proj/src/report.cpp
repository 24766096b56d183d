#include "pfrkit/report.hpp"

namespace pfrkit {

std::string_view to_string(PipelineStatus status) {
  switch (status) {
    case PipelineStatus::ok: return "ok";
    case PipelineStatus::gate_failed: return "gate_failed";
    case PipelineStatus::check_failed: return "check_failed";
  }
  return "unknown";
}

PipelineStatus ExtractionReport::status() const {
  for (const auto& g : gates) {
    if (g.failed() && !forced) return PipelineStatus::gate_failed;
  }
  for (const auto& c : checks) {
    if (c.failed()) return PipelineStatus::check_failed;
  }
  return PipelineStatus::ok;
}

Json set_json(const F2Set& s) {
  Json out = Json::array();
  for (std::uint64_t x : s) out.push_back(to_binary(x, s.dim()));
  return out;
}

Json to_json(const ExtractionReport& report) {
  Json out = Json::object();
  out["mode"] = report.mode;
  out["status"] = std::string(to_string(report.status()));
  out["set_size"] = report.set_size;
  out["sumset_size"] = report.sumset_size;
  out["doubling"] = rational_json(report.doubling);
  out["L"] = report.L ? rational_json(*report.L) : Json(nullptr);
  out["eps"] = report.eps ? rational_json(*report.eps) : Json(nullptr);
  out["forced"] = report.forced;
  Json gates = Json::array();
  for (const auto& g : report.gates) gates.push_back(to_json(g));
  out["gates"] = std::move(gates);
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  out["checks"] = std::move(checks);
  out["witnesses"] = report.witnesses;
  if (report.extracted) {
    Json b = Json::object();
    b["size"] = report.extracted->size();
    b["elements"] = set_json(*report.extracted);
    out["extracted"] = std::move(b);
  } else {
    out["extracted"] = nullptr;
  }
  out["span_size"] = report.span_size ? bigint_json(*report.span_size) : Json(nullptr);
  out["bound"] = report.bound ? bigint_json(*report.bound) : Json(nullptr);
  return out;
}

}  // namespace pfrkit

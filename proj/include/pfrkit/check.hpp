#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pfrkit/rational.hpp"

namespace pfrkit {

using Json = nlohmann::ordered_json;

enum class CheckStatus {
  passed,
  failed,
  not_applicable,  // hypothesis of a conditional statement does not hold
  flagged,         // outside the proven range; surfaced as a finding, not a failure
};

std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::passed;
  std::string message;
  Json details = Json::object();

  bool passed() const noexcept { return status == CheckStatus::passed; }
  bool failed() const noexcept { return status == CheckStatus::failed; }
};

CheckResult make_check(std::string name, bool holds, std::string message = {});

/// {"num": ..., "den": ..., "decimal": "..."}; integers that fit in int64 are
/// emitted as JSON numbers, larger ones as decimal strings.
Json rational_json(const Rational& r);
Json bigint_json(const BigInt& v);

Json to_json(const CheckResult& check);

}  // namespace pfrkit

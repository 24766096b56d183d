#include "pfrkit/check.hpp"

#include <limits>

namespace pfrkit {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "passed";
    case CheckStatus::failed: return "failed";
    case CheckStatus::not_applicable: return "not_applicable";
    case CheckStatus::flagged: return "flagged";
  }
  return "unknown";
}

CheckResult make_check(std::string name, bool holds, std::string message) {
  CheckResult check;
  check.name = std::move(name);
  check.status = holds ? CheckStatus::passed : CheckStatus::failed;
  check.message = std::move(message);
  return check;
}

Json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

Json rational_json(const Rational& r) {
  Json out = Json::object();
  out["num"] = bigint_json(boost::multiprecision::numerator(r));
  out["den"] = bigint_json(boost::multiprecision::denominator(r));
  out["decimal"] = to_decimal_string(r);
  return out;
}

Json to_json(const CheckResult& check) {
  Json out = Json::object();
  out["name"] = check.name;
  out["status"] = std::string(to_string(check.status));
  if (!check.message.empty()) out["message"] = check.message;
  out["details"] = check.details;
  return out;
}

}  // namespace pfrkit

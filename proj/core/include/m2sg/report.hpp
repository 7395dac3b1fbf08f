#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace m2sg {

enum class CheckStatus { pass, fail, not_applicable };

inline std::string_view status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

/// One verified assertion. `detail` carries the witness on failure.
struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;

  static Check passed(std::string name, std::string detail = {}) {
    return {std::move(name), CheckStatus::pass, std::move(detail)};
  }
  static Check failed(std::string name, std::string detail) {
    return {std::move(name), CheckStatus::fail, std::move(detail)};
  }
  static Check skipped(std::string name, std::string detail) {
    return {std::move(name), CheckStatus::not_applicable, std::move(detail)};
  }
  static Check verdict(std::string name, bool ok, std::string detail_on_fail) {
    return ok ? passed(std::move(name)) : failed(std::move(name), std::move(detail_on_fail));
  }
};

inline bool all_passed(const std::vector<Check>& checks) {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.status == CheckStatus::fail; });
}

}  // namespace m2sg

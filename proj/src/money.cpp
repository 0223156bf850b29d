#include "tcdrm/money.hpp"

#include <cmath>
#include <cstdlib>

namespace tcdrm {

Money Money::from_dollars(double dollars) {
  return from_nanos(std::llround(dollars * 1e9));
}

std::optional<Money> Money::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return std::nullopt;

  std::int64_t whole = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    whole = whole * 10 + (text[i] - '0');
    any_digit = true;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size()) {
    ++i;  // skip '.'
    if (i == text.size()) return std::nullopt;
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      if (++frac_digits > 9) return std::nullopt;
      frac = frac * 10 + (text[i] - '0');
      any_digit = true;
    }
  }
  if (!any_digit) return std::nullopt;
  for (; frac_digits < 9; ++frac_digits) frac *= 10;
  std::int64_t nanos = whole * 1000000000 + frac;
  return from_nanos(negative ? -nanos : nanos);
}

std::string Money::str() const {
  std::int64_t n = nanos_;
  std::string sign;
  if (n < 0) {
    sign = "-";
    n = -n;
  }
  std::int64_t whole = n / 1000000000;
  std::int64_t frac = n % 1000000000;
  std::string out = sign + std::to_string(whole);
  if (frac != 0) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%09lld", static_cast<long long>(frac));
    std::string digits = buf;
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

Money scale(Money rate, double quantity) {
  return Money::from_nanos(std::llround(static_cast<double>(rate.nanos()) * quantity));
}

}  // namespace tcdrm

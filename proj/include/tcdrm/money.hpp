// Fixed-point monetary values with nanodollar resolution.
//
// All charges in the simulator are accumulated as 64-bit integer nanodollar
// counts, so sums and comparisons are exact and runs are reproducible
// byte-for-byte across platforms. Doubles appear only at the edges: parsing
// configuration prices and multiplying a rate by a resource quantity.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tcdrm {

class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_nanos(std::int64_t nanos) {
    Money m;
    m.nanos_ = nanos;
    return m;
  }

  // Rounds to the nearest nanodollar.
  static Money from_dollars(double dollars);

  // Parses a canonical decimal string ("0.0045", "-1.2", "3"). Rejects
  // anything else, including more than nine fractional digits.
  static std::optional<Money> parse(std::string_view text);

  constexpr std::int64_t nanos() const { return nanos_; }
  double dollars() const { return static_cast<double>(nanos_) / 1e9; }

  // Canonical decimal rendering: trailing fractional zeros trimmed,
  // "0" for zero. parse(str()) round-trips exactly.
  std::string str() const;

  constexpr Money& operator+=(Money other) {
    nanos_ += other.nanos_;
    return *this;
  }
  constexpr Money& operator-=(Money other) {
    nanos_ -= other.nanos_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return from_nanos(a.nanos_ + b.nanos_); }
  friend constexpr Money operator-(Money a, Money b) { return from_nanos(a.nanos_ - b.nanos_); }
  friend constexpr auto operator<=>(Money a, Money b) = default;

 private:
  std::int64_t nanos_ = 0;
};

// Rate times quantity, e.g. ($/GB) * GB. Rounds once, to the nearest
// nanodollar; all later aggregation is integer arithmetic.
Money scale(Money rate, double quantity);

}  // namespace tcdrm

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sgd {

/// Exact rational with positive denominator, always in lowest terms.
/// All arithmetic is on 64-bit integers with a 128-bit intermediate for
/// cross-multiplied comparisons.
class BoundValue {
 public:
  constexpr BoundValue() = default;
  constexpr BoundValue(long long integer) : num_(integer), den_(1) {}  // NOLINT(implicit)

  BoundValue(long long num, long long den) : num_(num), den_(den) {
    if (den == 0) throw std::domain_error("zero denominator");
    normalize();
  }

  long long num() const noexcept { return num_; }
  long long den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }

  long long floor() const noexcept {
    long long q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
  }
  long long ceil() const noexcept {
    long long q = num_ / den_;
    return (num_ % den_ != 0 && num_ > 0) ? q + 1 : q;
  }

  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend BoundValue operator+(const BoundValue& a, const BoundValue& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend BoundValue operator-(const BoundValue& a, const BoundValue& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend BoundValue operator*(const BoundValue& a, const BoundValue& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend BoundValue operator/(const BoundValue& a, const BoundValue& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  BoundValue operator-() const { return {-num_, den_}; }

  friend bool operator==(const BoundValue& a, const BoundValue& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const BoundValue& a, const BoundValue& b) noexcept {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace sgd

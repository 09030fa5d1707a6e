#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace homonet {

/// Extended non-negative integer: a finite value or infinity. Used for
/// distance sums and diameters, where "unreachable" must order above every
/// finite value without risking sentinel arithmetic overflow.
class ExtInt {
 public:
  ExtInt() : value_(0), infinite_(false) {}
  ExtInt(std::int64_t value) : value_(value), infinite_(false) {  // NOLINT: implicit by design
    if (value < 0) throw std::invalid_argument("ExtInt must be non-negative");
  }
  static ExtInt infinity() {
    ExtInt e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  std::int64_t value() const {
    if (infinite_) throw std::logic_error("ExtInt: value() on infinity");
    return value_;
  }

  ExtInt operator+(const ExtInt& other) const {
    if (infinite_ || other.infinite_) return infinity();
    return ExtInt(value_ + other.value_);
  }
  ExtInt& operator+=(const ExtInt& other) { return *this = *this + other; }

  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ || a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  std::int64_t value_;
  bool infinite_;
};

}  // namespace homonet

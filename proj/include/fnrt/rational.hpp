#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fnrt {

// Exact rational arithmetic on 64-bit integers.
//
// Schedule arithmetic must never round: utilizations, window capacities and
// continuous-model allocations are all true rationals whose denominators divide
// the hyper-period (so they stay small), but intermediate cross products can get
// large. Every intermediate here runs in 128 bits and narrowing back to 64 bits
// throws std::overflow_error instead of silently wrapping.
//
// Invariant: den_ > 0 and gcd(|num_|, den_) == 1 at all times.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rat(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    reduce_small();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  // Exact conversion; refuses non-integral values rather than truncating.
  std::int64_t as_integer() const {
    if (den_ != 1) throw std::domain_error("Rat: " + str() + " is not integral");
    return num_;
  }

  std::int64_t floor() const {
    if (num_ >= 0) return num_ / den_;
    return -((-num_ + den_ - 1) / den_);
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "7/3" for proper rationals, "4" for integers.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Exact fixed-point decimal, rounded half away from zero: Rat(39,20).decimals(6)
  // == "1.950000". Pure integer arithmetic — no float detour.
  std::string decimals(int places) const {
    __int128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    __int128 n = num_ < 0 ? -static_cast<__int128>(num_) : static_cast<__int128>(num_);
    __int128 scaled = (n * scale + den_ / 2) / den_;
    std::string digits;
    if (scaled == 0) digits = "0";
    while (scaled > 0) {
      digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
      scaled /= 10;
    }
    while (static_cast<int>(digits.size()) < places + 1) digits.insert(digits.begin(), '0');
    std::string out;
    if (num_ < 0) out += "-";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    return out;
  }

  friend Rat operator-(const Rat& r) { return Rat(-r.num_, r.den_, already_reduced{}); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 num = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 den = i128(a.den_) * b.den_;
    return from_i128(num, den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

  friend Rat operator*(const Rat& a, const Rat& b) {
    __int128 num = i128(a.num_) * b.num_;
    __int128 den = i128(a.den_) * b.den_;
    return from_i128(num, den);
  }

  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    __int128 num = i128(a.num_) * b.den_;
    __int128 den = i128(a.den_) * b.num_;
    return from_i128(num, den);
  }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

 private:
  struct already_reduced {};
  Rat(std::int64_t num, std::int64_t den, already_reduced) : num_(num), den_(den) {}

  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("Rat: 64-bit overflow");
    return static_cast<std::int64_t>(v);
  }

  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rat from_i128(__int128 num, __int128 den) {
    if (den < 0) { num = -num; den = -den; }
    unsigned __int128 un = num < 0 ? static_cast<unsigned __int128>(-num)
                                   : static_cast<unsigned __int128>(num);
    unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(den));
    if (g > 1) { num /= static_cast<__int128>(g); den /= static_cast<__int128>(g); }
    if (num == 0) den = 1;
    return Rat(narrow(num), narrow(den), already_reduced{});
  }

  void reduce_small() {
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rat abs(const Rat& r) { return r.num() < 0 ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// lcm with an explicit overflow error (hyper-periods and scale factors must
// never wrap).
inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw std::domain_error("checked_lcm: arguments must be positive");
  std::int64_t g = std::gcd(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("checked_lcm: 64-bit overflow");
  return static_cast<std::int64_t>(l);
}

// Accepts "7/3", "-2", "2.5" (exact decimal), used by CLI flags.
inline Rat parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rat: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::size_t p1 = 0, p2 = 0;
    std::int64_t n = std::stoll(text.substr(0, slash), &p1);
    std::int64_t d = std::stoll(text.substr(slash + 1), &p2);
    if (p1 != slash || p2 != text.size() - slash - 1)
      throw std::invalid_argument("parse_rat: bad rational '" + text + "'");
    return Rat(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t p = 0;
    std::int64_t n = std::stoll(digits, &p);
    if (p != digits.size())
      throw std::invalid_argument("parse_rat: bad decimal '" + text + "'");
    std::int64_t d = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) {
      if (d > std::numeric_limits<std::int64_t>::max() / 10)
        throw std::overflow_error("parse_rat: too many decimal places");
      d *= 10;
    }
    return Rat(n, d);
  }
  std::size_t p = 0;
  std::int64_t n = std::stoll(text, &p);
  if (p != text.size()) throw std::invalid_argument("parse_rat: bad integer '" + text + "'");
  return Rat(n);
}

}  // namespace fnrt

#pragma once

// Exact scalar arithmetic for the max-plus pencil library.
//
// Rational is an exact fraction over checked 64-bit integers: every
// operation runs its intermediates through __int128 and normalizes to
// lowest terms with positive denominator; a result that does not fit
// back into 64 bits throws overflow_error instead of wrapping. All
// level-set breakpoints and tie decisions in this library go through
// this type, so silent rounding is never an option.
//
// ExtRational extends Rational with -inf and +inf. +inf only ever
// arises on the residuated side (a residual against an identically
// -inf column); matrices and plain vectors never hold it.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace maxplus {

class overflow_error : public std::runtime_error {
 public:
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline int64_t narrow128(__int128 v, const char* ctx) {
  if (v > INT64_MAX || v < INT64_MIN) throw overflow_error(std::string("rational overflow in ") + ctx);
  return static_cast<int64_t>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(int64_t n, int64_t d) { init(n, d); }

  static Rational from_int128(__int128 n, __int128 d, const char* ctx = "from_int128") {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow128(n, ctx);
    r.den_ = detail::narrow128(d, ctx);
    return r;
  }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_int128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_, "+");
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_int128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_, "-");
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_int128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_, "*");
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
    return from_int128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_, "/");
  }
  Rational operator-() const {
    Rational r;
    r.num_ = detail::narrow128(-(__int128)num_, "negate");
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // Largest integer <= value.
  int64_t floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  int64_t ceil() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void init(int64_t n, int64_t d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
      n = detail::narrow128(-(__int128)n, "ctor");
      d = detail::narrow128(-(__int128)d, "ctor");
    }
    int64_t g = std::gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  int64_t num_;
  int64_t den_;
};

// Best rational approximation of num/den with denominator <= max_den,
// by continued-fraction convergents and the final semiconvergent.
// "Best" means closest in absolute value; ties resolve to the
// convergent side, which is fine for our use (rounding a value-iteration
// mean whose distance to the true value is below half the Farey gap).
Rational best_approx(const Rational& x, int64_t max_den);

enum class Tag : uint8_t { NegInf = 0, Finite = 1, PosInf = 2 };

class ExtRational {
 public:
  ExtRational() : tag_(Tag::Finite), val_() {}
  ExtRational(const Rational& r) : tag_(Tag::Finite), val_(r) {}  // NOLINT
  ExtRational(int64_t n) : tag_(Tag::Finite), val_(n) {}          // NOLINT

  static ExtRational neg_inf() {
    ExtRational e;
    e.tag_ = Tag::NegInf;
    return e;
  }
  static ExtRational pos_inf() {
    ExtRational e;
    e.tag_ = Tag::PosInf;
    return e;
  }

  Tag tag() const { return tag_; }
  bool is_neg_inf() const { return tag_ == Tag::NegInf; }
  bool is_pos_inf() const { return tag_ == Tag::PosInf; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  const Rational& value() const {
    if (!is_finite()) throw std::logic_error("value() on infinite ExtRational");
    return val_;
  }

  // Residuated-side addition: (-inf) + (+inf) = +inf.
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return ExtRational(a.val_ + b.val_);
  }
  // Max-plus-side addition: (-inf) wins over (+inf).
  friend ExtRational add_lower(const ExtRational& a, const ExtRational& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
    return ExtRational(a.val_ + b.val_);
  }
  ExtRational operator-() const {
    if (is_neg_inf()) return pos_inf();
    if (is_pos_inf()) return neg_inf();
    return ExtRational(-val_);
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.tag_ != b.tag_) return false;
    return !a.is_finite() || a.val_ == b.val_;
  }
  friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.tag_ != b.tag_) return static_cast<int>(a.tag_) < static_cast<int>(b.tag_);
    return a.is_finite() && a.val_ < b.val_;
  }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

  friend const ExtRational& max(const ExtRational& a, const ExtRational& b) {
    return a < b ? b : a;
  }
  friend const ExtRational& min(const ExtRational& a, const ExtRational& b) {
    return b < a ? b : a;
  }

  ExtRational abs() const {
    if (!is_finite()) return pos_inf();
    return ExtRational(val_.abs());
  }

  std::string to_string() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "+inf";
    return val_.to_string();
  }

 private:
  Tag tag_;
  Rational val_;
};

}  // namespace maxplus

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "schaper/errors.hpp"

namespace schaper {

// Sign-magnitude arbitrary-precision integer, base 2^32.
// Desk-scale inner products fit in 64 bits, but nothing here assumes that.
class BigInt {
public:
  BigInt() = default;

  BigInt(long long v) { // NOLINT: implicit by design
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                 : static_cast<unsigned long long>(v);
    while (m != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(m));
      m >>= 32;
    }
  }

  static BigInt from_string(const std::string& text) {
    if (text.empty()) throw ParseError("BigInt: empty string");
    std::size_t i = 0;
    int sign = 1;
    if (text[0] == '-' || text[0] == '+') {
      sign = text[0] == '-' ? -1 : 1;
      i = 1;
    }
    if (i == text.size()) throw ParseError("BigInt: no digits in '" + text + "'");
    BigInt r;
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9')
        throw ParseError("BigInt: bad digit in '" + text + "'");
      r.mul_small_inplace(10);
      r.add_small_magnitude(static_cast<std::uint32_t>(text[i] - '0'));
    }
    if (!r.limbs_.empty()) r.sign_ = sign;
    return r;
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  bool fits_int64() const {
    if (limbs_.size() > 2) return false;
    unsigned long long m = magnitude_u64();
    if (sign_ >= 0)
      return m <= static_cast<unsigned long long>(std::numeric_limits<long long>::max());
    return m <= static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1ULL;
  }

  long long to_int64() const {
    if (!fits_int64()) throw SchaperError("BigInt: does not fit in 64 bits");
    unsigned long long m = magnitude_u64();
    if (sign_ < 0) return -static_cast<long long>(m - 1) - 1;
    return static_cast<long long>(m);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string digits;
    BigInt t = *this;
    while (!t.is_zero()) {
      std::uint32_t rem = t.divmod_small_inplace(1000000000u);
      std::string chunk = std::to_string(rem);
      if (!t.is_zero()) chunk.insert(0, 9 - chunk.size(), '0');
      digits.insert(0, chunk);
    }
    if (sign_ < 0) digits.insert(0, 1, '-');
    return digits;
  }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  BigInt& operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) return *this = o;
    if (sign_ == o.sign_) {
      add_magnitude(o.limbs_);
      return *this;
    }
    int cmp = compare_magnitude(limbs_, o.limbs_);
    if (cmp == 0) return *this = BigInt();
    if (cmp > 0) {
      sub_magnitude(o.limbs_);
    } else {
      std::vector<std::uint32_t> tmp = o.limbs_;
      swap_sub(tmp);
      sign_ = o.sign_;
    }
    return *this;
  }

  BigInt& operator-=(const BigInt& o) { return *this += -o; }
  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                            r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncating division (quotient rounds toward zero), schoolbook.
  static void divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem) {
    if (den.is_zero()) throw SchaperError("BigInt: division by zero");
    if (compare_magnitude(num.limbs_, den.limbs_) < 0) {
      quot = BigInt();
      rem = num;
      return;
    }
    if (den.limbs_.size() == 1) {
      BigInt q = num;
      std::uint32_t r = q.divmod_small_inplace(den.limbs_[0]);
      q.sign_ = q.limbs_.empty() ? 0 : num.sign_ * den.sign_;
      quot = q;
      rem = BigInt(static_cast<long long>(r));
      if (!rem.is_zero()) rem.sign_ = num.sign_;
      return;
    }
    // bit-by-bit long division on magnitudes
    BigInt r;
    BigInt q;
    q.limbs_.assign(num.limbs_.size(), 0);
    for (std::size_t bit = num.limbs_.size() * 32; bit-- > 0;) {
      r.shift_left_one();
      if ((num.limbs_[bit / 32] >> (bit % 32)) & 1u) r.add_small_magnitude(1);
      if (compare_magnitude(r.limbs_, den.limbs_) >= 0) {
        r.sub_magnitude(den.limbs_);
        q.limbs_[bit / 32] |= 1u << (bit % 32);
      }
    }
    q.trim();
    r.trim();
    q.sign_ = q.limbs_.empty() ? 0 : num.sign_ * den.sign_;
    r.sign_ = r.limbs_.empty() ? 0 : num.sign_;
    quot = q;
    rem = r;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  bool divisible_by(const BigInt& d) const { return (*this % d).is_zero(); }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int cmp = compare_magnitude(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? cmp < 0 : cmp > 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  static BigInt factorial(unsigned n) {
    BigInt r(1);
    for (unsigned k = 2; k <= n; ++k) r.mul_small_inplace(k);
    return r;
  }

  static BigInt power(std::uint32_t base, unsigned exp) {
    BigInt r(1);
    for (unsigned k = 0; k < exp; ++k) r.mul_small_inplace(base);
    return r;
  }

private:
  unsigned long long magnitude_u64() const {
    unsigned long long m = 0;
    if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
    if (!limbs_.empty()) m |= limbs_[0];
    return m;
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
  }

  static int compare_magnitude(const std::vector<std::uint32_t>& a,
                               const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  void add_magnitude(const std::vector<std::uint32_t>& o) {
    if (limbs_.size() < o.size()) limbs_.resize(o.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t cur = carry + limbs_[i] + (i < o.size() ? o[i] : 0);
      limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  // requires |this| >= |o|
  void sub_magnitude(const std::vector<std::uint32_t>& o) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(limbs_[i]) - borrow -
                         (i < o.size() ? o[i] : 0);
      borrow = cur < 0 ? 1 : 0;
      if (cur < 0) cur += (1LL << 32);
      limbs_[i] = static_cast<std::uint32_t>(cur);
    }
    trim();
  }

  // this = tmp - this, magnitudes; tmp >= this
  void swap_sub(std::vector<std::uint32_t>& tmp) {
    std::swap(limbs_, tmp);
    sub_magnitude(tmp);
  }

  void add_small_magnitude(std::uint32_t v) {
    if (v == 0) return;
    if (sign_ == 0) sign_ = 1;
    std::uint64_t carry = v;
    for (std::size_t i = 0; i < limbs_.size() && carry; ++i) {
      std::uint64_t cur = carry + limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  void mul_small_inplace(std::uint32_t v) {
    if (v == 0 || sign_ == 0) {
      limbs_.clear();
      sign_ = 0;
      return;
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * v + carry;
      limb = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  std::uint32_t divmod_small_inplace(std::uint32_t d) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
  }

  void shift_left_one() {
    std::uint32_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint32_t next = limb >> 31;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) limbs_.push_back(carry);
  }

  int sign_ = 0;
  std::vector<std::uint32_t> limbs_;
};

// valuation(0, p) — the conventional +infinity
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

// Largest e with p^e | m; kInfiniteValuation for m = 0.
inline long valuation(BigInt m, std::uint32_t p) {
  if (p < 2) throw SchaperError("valuation: p must be >= 2");
  if (m.is_zero()) return kInfiniteValuation;
  long e = 0;
  for (;;) {
    BigInt q, r;
    BigInt::divmod(m, BigInt(static_cast<long long>(p)), q, r);
    if (!r.is_zero()) return e;
    m = q;
    ++e;
  }
}

inline long valuation(long long m, std::uint32_t p) { return valuation(BigInt(m), p); }

// Legendre: v_p(m!) = sum floor(m/p^k)
inline long factorial_valuation(long long m, std::uint32_t p) {
  if (p < 2) throw SchaperError("factorial_valuation: p must be >= 2");
  long v = 0;
  for (long long q = m / p; q > 0; q /= p) v += static_cast<long>(q);
  return v;
}

inline long binomial_valuation(long long n, long long k, std::uint32_t p) {
  if (k < 0 || k > n) return 0;
  return factorial_valuation(n, p) - factorial_valuation(k, p) -
         factorial_valuation(n - k, p);
}

} // namespace schaper

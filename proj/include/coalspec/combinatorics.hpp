#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace coalspec {

using BigInt = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Zero is 0/1.
class BigRat {
 public:
  BigRat() = default;
  BigRat(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& numerator, const BigInt& denominator);

  /// Parses "p/q", "p" or "-p/q". Throws domain_error on malformed text or a
  /// zero denominator.
  static BigRat parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  double to_double() const { return value_.get_d(); }

  /// Always "p/q", including integers ("3/1") and zero ("0/1").
  std::string str() const;

  BigRat& operator+=(const BigRat& rhs);
  BigRat& operator-=(const BigRat& rhs);
  BigRat& operator*=(const BigRat& rhs);
  BigRat& operator/=(const BigRat& rhs);

  friend BigRat operator+(BigRat lhs, const BigRat& rhs) { return lhs += rhs; }
  friend BigRat operator-(BigRat lhs, const BigRat& rhs) { return lhs -= rhs; }
  friend BigRat operator*(BigRat lhs, const BigRat& rhs) { return lhs *= rhs; }
  friend BigRat operator/(BigRat lhs, const BigRat& rhs) { return lhs /= rhs; }
  BigRat operator-() const;

  friend bool operator==(const BigRat& a, const BigRat& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const BigRat& r);

/// Integer power; negative exponents require a nonzero base.
BigRat pow(const BigRat& base, int exponent);

BigInt factorial(unsigned k);
BigInt binomial(unsigned n, unsigned k);

/// Unsigned Stirling numbers of the first kind: permutations of [i] with j
/// cycles.
BigInt stirling_first(unsigned i, unsigned j);

/// Stirling numbers of the second kind: partitions of an i-set into j blocks.
BigInt stirling_second(unsigned i, unsigned j);

/// Unsigned Lah numbers C(i-1, j-1) i!/j!: partitions of an i-set into j
/// internally ordered blocks. lah(0,0) = 1.
BigInt lah(unsigned i, unsigned j);

BigInt bell(unsigned n);

/// x (x+1) ... (x+k-1), with the empty product 1 for k = 0.
BigRat ascending_factorial(const BigRat& x, unsigned k);

}  // namespace coalspec

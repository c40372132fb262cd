#include "coalspec/combinatorics.hpp"

#include <ostream>
#include <vector>

#include "coalspec/errors.hpp"

namespace coalspec {

BigRat::BigRat(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw domain_error("BigRat: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

BigRat BigRat::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num(text.substr(0, slash));
  const std::string den =
      slash == std::string_view::npos ? std::string("1") : std::string(text.substr(slash + 1));
  auto valid = [](const std::string& s, bool allow_sign) {
    std::size_t start = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) start = 1;
    if (s.size() == start) return false;
    for (std::size_t k = start; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') return false;
    }
    return true;
  };
  if (!valid(num, true) || !valid(den, false)) {
    throw domain_error("BigRat: cannot parse '" + std::string(text) + "'");
  }
  const std::string num_digits = num[0] == '+' ? num.substr(1) : num;
  return BigRat(BigInt(num_digits), BigInt(den));
}

std::string BigRat::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRat& BigRat::operator+=(const BigRat& rhs) {
  value_ += rhs.value_;
  return *this;
}

BigRat& BigRat::operator-=(const BigRat& rhs) {
  value_ -= rhs.value_;
  return *this;
}

BigRat& BigRat::operator*=(const BigRat& rhs) {
  value_ *= rhs.value_;
  return *this;
}

BigRat& BigRat::operator/=(const BigRat& rhs) {
  if (rhs.is_zero()) throw domain_error("BigRat: division by zero");
  value_ /= rhs.value_;
  return *this;
}

BigRat BigRat::operator-() const {
  BigRat out;
  out.value_ = -value_;
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigRat& r) { return os << r.str(); }

BigRat pow(const BigRat& base, int exponent) {
  if (exponent < 0) return BigRat(1) / pow(base, -exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return BigRat(num, den);
}

BigInt factorial(unsigned k) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace {

// Triangular tables are built once on first use (thread-safe static
// initialization) and are read-only afterwards. Requests beyond the table
// fall back to computing the needed rows directly.
constexpr unsigned kTableRows = 128;

using Triangle = std::vector<std::vector<BigInt>>;

Triangle first_kind_rows(unsigned rows) {
  Triangle t(rows + 1);
  t[0] = {1};
  for (unsigned i = 1; i <= rows; ++i) {
    t[i].assign(i + 1, 0);
    for (unsigned j = 1; j <= i; ++j) {
      // [i, j] = [i-1, j-1] + (i-1) [i-1, j]
      BigInt prev_same = j <= i - 1 ? t[i - 1][j] : BigInt(0);
      t[i][j] = t[i - 1][j - 1] + (i - 1) * prev_same;
    }
  }
  return t;
}

Triangle second_kind_rows(unsigned rows) {
  Triangle t(rows + 1);
  t[0] = {1};
  for (unsigned i = 1; i <= rows; ++i) {
    t[i].assign(i + 1, 0);
    for (unsigned j = 1; j <= i; ++j) {
      // {i, j} = {i-1, j-1} + j {i-1, j}
      BigInt prev_same = j <= i - 1 ? t[i - 1][j] : BigInt(0);
      t[i][j] = t[i - 1][j - 1] + j * prev_same;
    }
  }
  return t;
}

const Triangle& first_kind_table() {
  static const Triangle table = first_kind_rows(kTableRows);
  return table;
}

const Triangle& second_kind_table() {
  static const Triangle table = second_kind_rows(kTableRows);
  return table;
}

}  // namespace

BigInt stirling_first(unsigned i, unsigned j) {
  if (j > i) return 0;
  if (i <= kTableRows) return first_kind_table()[i][j];
  return first_kind_rows(i)[i][j];
}

BigInt stirling_second(unsigned i, unsigned j) {
  if (j > i) return 0;
  if (i <= kTableRows) return second_kind_table()[i][j];
  return second_kind_rows(i)[i][j];
}

BigInt lah(unsigned i, unsigned j) {
  if (i == 0 || j == 0) return i == j ? 1 : 0;
  if (j > i) return 0;
  return binomial(i - 1, j - 1) * factorial(i) / factorial(j);
}

BigInt bell(unsigned n) {
  BigInt total = 0;
  if (n <= kTableRows) {
    for (const auto& s : second_kind_table()[n]) total += s;
  } else {
    for (const auto& s : second_kind_rows(n)[n]) total += s;
  }
  return total;
}

BigRat ascending_factorial(const BigRat& x, unsigned k) {
  BigRat out(1);
  for (unsigned m = 0; m < k; ++m) out *= x + BigRat(static_cast<long>(m));
  return out;
}

}  // namespace coalspec

#include "coderiv/scalar.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coderiv/error.hpp"

namespace coderiv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::SchemaError, "malformed number '" + std::string(text) + "'");
}

Scalar parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_number(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    if (!int_part.empty() && !all_digits(int_part)) bad_number(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_number(text);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad_number(text);
    digits = std::string(s);
  }
  if (digits.empty()) bad_number(text);
  mpz_class mantissa(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Scalar value = exponent >= 0 ? Scalar(mantissa * power) : Scalar(mantissa, power);
  value.canonicalize();
  return negative ? Scalar(-value) : value;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Scalar num = parse_decimal(text.substr(0, slash));
    Scalar den = parse_decimal(text.substr(slash + 1));
    if (den == 0)
      throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
    return Scalar(num / den);
  }
  return parse_decimal(text);
}

std::string format_scalar(const Scalar& s) { return s.get_str(); }

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

Scalar from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("from_double: non-finite value");
  Scalar s(v);
  s.canonicalize();
  return s;
}

Vec zeros(std::size_t n) { return Vec(n, Scalar(0)); }

Vec unit(std::size_t n, std::size_t i) {
  Vec v = zeros(n);
  v[i] = 1;
  return v;
}

Vec from_ints(std::initializer_list<long> values) {
  Vec v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

std::vector<double> to_doubles(std::span<const Scalar> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

Vec from_doubles(std::span<const double> v) {
  Vec out;
  out.reserve(v.size());
  for (double x : v) out.push_back(from_double(x));
  return out;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
  return acc;
}

bool is_zero(std::span<const Scalar> v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Vec add(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scale(const Scalar& s, std::span<const Scalar> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Vec neg(std::span<const Scalar> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

Vec concat(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vec out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Vec primitive(std::span<const Scalar> v) {
  mpz_class den_lcm = 1;
  for (const auto& x : v)
    if (sgn(x) != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  mpz_class num_gcd = 0;
  std::vector<mpz_class> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    ints[i] = v[i].get_num() * (den_lcm / v[i].get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (num_gcd == 0) return Vec(v.begin(), v.end());
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Scalar(ints[i] / num_gcd);
  return out;
}

Vec primitive_unsigned(std::span<const Scalar> v) {
  Vec out = primitive(v);
  for (const auto& x : out) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : out) y = -y;
    break;
  }
  return out;
}

std::string format_vec(std::span<const Scalar> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_scalar(v[i]);
  os << ')';
  return os.str();
}

}  // namespace coderiv

#include "patternforge/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace patternforge {

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view text) {
  std::string digits(text);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  // Accept the unicode minus that shows up in copied tables.
  std::string cleaned;
  cleaned.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      cleaned.push_back('-');
      i += 2;
    } else {
      cleaned.push_back(text[i]);
    }
  }
  std::string_view body(cleaned);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(body)) {
      throw std::invalid_argument("not a rational literal: '" + cleaned + "'");
    }
    return Rational(parse_integer(body));
  }
  auto num = body.substr(0, slash);
  auto den = body.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw std::invalid_argument("not a rational literal: '" + cleaned + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + cleaned + "'");
  Rational value(parse_integer(num), d);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

Rational exact_from_long_double(long double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  // Split into two doubles; each conversion is exact and so is the sum.
  double hi = static_cast<double>(value);
  double lo = static_cast<double>(value - static_cast<long double>(hi));
  return exact_from_double(hi) + exact_from_double(lo);
}

Rational rationalize(long double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  if (max_denominator == 0) max_denominator = 1;
  bool negative = value < 0;
  long double x = std::fabs(value);

  // Convergents h/k of the continued fraction; seeded with h/k = 1/0 and
  // h_prev/k_prev = 0/1.
  Integer h = 1, h_prev = 0, k = 0, k_prev = 1;
  Rational best(0);
  long double remainder = x;
  const Integer limit(static_cast<unsigned long>(max_denominator));
  for (int iter = 0; iter < 64; ++iter) {
    long double whole = std::floor(remainder);
    Integer a;
    mpz_set_d(a.get_mpz_t(), static_cast<double>(whole));
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    if (k_next > limit) {
      // Best semiconvergent with denominator within the limit.
      Integer t = (limit - k_prev) / k;
      if (t > 0) {
        Integer hs = t * h + h_prev;
        Integer ks = t * k + k_prev;
        Rational semi(hs, ks);
        semi.canonicalize();
        Rational conv = (k == 0) ? Rational(0) : Rational(h, k);
        conv.canonicalize();
        long double err_semi = std::fabs(static_cast<long double>(semi.get_d()) - x);
        long double err_conv = std::fabs(static_cast<long double>(conv.get_d()) - x);
        best = (err_semi < err_conv) ? semi : conv;
      }
      break;
    }
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    best = Rational(h, k);
    best.canonicalize();
    long double frac = remainder - whole;
    if (frac < 1e-30L) break;
    remainder = 1.0L / frac;
    if (!std::isfinite(remainder) || remainder > 1e30L) break;
  }
  return negative ? Rational(-best) : best;
}

int sign(const Rational& value) { return sgn(value); }

}  // namespace patternforge

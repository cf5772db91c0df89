#include "satnum/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace satnum {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q, bool always_fraction) {
  if (q.get_den() == 1) {
    return always_fraction ? q.get_num().get_str() + "/1" : q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_token(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_token(s)) {
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw std::invalid_argument("negative denominator in '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double to_double_nearest(const Rational& q) {
  const double truncated = q.get_d();
  if (!std::isfinite(truncated)) return truncated;
  if (Rational(truncated) == q) return truncated;
  // q lies strictly between `truncated` and its neighbour away from zero.
  const double away = std::nextafter(truncated, q > 0 ? HUGE_VAL : -HUGE_VAL);
  const Rational d_trunc = abs(q - Rational(truncated));
  const Rational d_away = abs(Rational(away) - q);
  if (d_trunc < d_away) return truncated;
  if (d_away < d_trunc) return away;
  // Tie: pick the even mantissa.
  double mant_trunc = 0;
  int exp_trunc = 0;
  mant_trunc = std::frexp(truncated, &exp_trunc);
  const auto bits = static_cast<long long>(std::ldexp(std::fabs(mant_trunc), 53));
  return (bits % 2 == 0) ? truncated : away;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace satnum

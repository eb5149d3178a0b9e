#include "collig/scalar.hpp"

#include <cctype>

namespace collig {

namespace {

std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) {
    s += "/";
    s += den.str();
  }
  return s;
}

// Parses "[sign]digits[/digits]" starting at pos; advances pos.
Rational parse_rational_at(const std::string& t, size_t& pos) {
  const size_t start = pos;
  if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) ++pos;
  size_t digits = 0;
  while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0) throw InputError("bad exact scalar literal: '" + t + "'");
  if (pos < t.size() && t[pos] == '/') {
    ++pos;
    size_t den_digits = 0;
    while (pos < t.size() &&
           std::isdigit(static_cast<unsigned char>(t[pos]))) {
      ++pos;
      ++den_digits;
    }
    if (den_digits == 0)
      throw InputError("bad exact scalar literal: '" + t + "'");
  }
  return Rational(t.substr(start, pos - start));
}

}  // namespace

std::string format_exact(const ExactScalar& x) {
  if (x.im == 0) return format_rational(x.re);
  std::string im_part;
  if (x.im > 0)
    im_part = (x.re == 0 ? "" : "+") + format_rational(x.im) + "*i";
  else
    im_part = "-" + format_rational(-x.im) + "*i";
  if (x.re == 0) return im_part;
  return format_rational(x.re) + im_part;
}

ExactScalar parse_exact(const std::string& raw) {
  // strip spaces
  std::string t;
  t.reserve(raw.size());
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw InputError("empty exact scalar literal");

  ExactScalar out;
  size_t pos = 0;
  bool saw_term = false;
  while (pos < t.size()) {
    // Each term: [sign] ( rational ["*i"|"i"] | "i" )
    int sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      sign = t[pos] == '-' ? -1 : 1;
      ++pos;
      if (pos >= t.size())
        throw InputError("bad exact scalar literal: '" + raw + "'");
    } else if (saw_term) {
      throw InputError("bad exact scalar literal: '" + raw + "'");
    }
    if (t[pos] == 'i') {
      ++pos;
      out.im += sign;
    } else {
      Rational r = parse_rational_at(t, pos);
      if (pos < t.size() && (t[pos] == '*' || t[pos] == 'i')) {
        if (t[pos] == '*') {
          ++pos;
          if (pos >= t.size() || t[pos] != 'i')
            throw InputError("bad exact scalar literal: '" + raw + "'");
        }
        ++pos;  // consume 'i'
        out.im += sign * r;
      } else {
        out.re += sign * r;
      }
    }
    saw_term = true;
  }
  return out;
}

}  // namespace collig

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <string>

#include "collig/error.hpp"

namespace collig {

using Rational = boost::multiprecision::cpp_rational;
using Cx = std::complex<double>;

enum class Mode { exact, floating };

inline const char* mode_name(Mode m) {
  return m == Mode::exact ? "exact" : "float";
}

// Exact complex scalar: Gaussian rational (rational real and imaginary
// parts). cpp_rational keeps every value in lowest terms with a positive
// denominator, so equality is structural equality.
struct ExactScalar {
  Rational re, im;

  ExactScalar() : re(0), im(0) {}
  ExactScalar(int v) : re(v), im(0) {}  // NOLINT: implicit by design
  ExactScalar(Rational r) : re(std::move(r)), im(0) {}
  ExactScalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ExactScalar make(long num_re, long den_re, long num_im = 0,
                          long den_im = 1) {
    return {Rational(num_re, den_re), Rational(num_im, den_im)};
  }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactScalar operator-(const ExactScalar& a) { return {-a.re, -a.im}; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    const Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw SingularMatrixError("exact division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
  ExactScalar& operator/=(const ExactScalar& b) { return *this = *this / b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) {
    return !(a == b);
  }
};

// ---- field operations shared by the generic linear algebra / polynomials --

inline bool is_zero(const ExactScalar& x) { return x.re == 0 && x.im == 0; }
inline bool is_zero(const Cx& x) { return x.real() == 0.0 && x.imag() == 0.0; }

inline ExactScalar conj_val(const ExactScalar& x) { return {x.re, -x.im}; }
inline Cx conj_val(const Cx& x) { return std::conj(x); }

inline ExactScalar scalar_from_int(const ExactScalar&, long v) {
  return ExactScalar(static_cast<int>(v));
}
inline Cx scalar_from_int(const Cx&, long v) {
  return Cx(static_cast<double>(v), 0.0);
}

// Magnitude used for pivot selection and diagnostics. Exact values only need
// a rough double approximation (pivoting is for size control, not stability).
inline double approx_abs(const ExactScalar& x) {
  const double r = x.re.convert_to<double>();
  const double i = x.im.convert_to<double>();
  return std::hypot(r, i);
}
inline double approx_abs(const Cx& x) { return std::abs(x); }

inline Cx to_cx(const ExactScalar& x) {
  return {x.re.convert_to<double>(), x.im.convert_to<double>()};
}
inline Cx to_cx(const Cx& x) { return x; }

template <class F>
struct field_mode;
template <>
struct field_mode<ExactScalar> {
  static constexpr Mode value = Mode::exact;
};
template <>
struct field_mode<Cx> {
  static constexpr Mode value = Mode::floating;
};
template <class F>
constexpr Mode mode_of_v = field_mode<F>::value;
template <class F>
constexpr bool is_exact_v = std::is_same_v<F, ExactScalar>;

// ---- serialization ---------------------------------------------------------

// Canonical text form: "0", "3", "-3/2", "1/2+3/4*i", "-2*i", "1-1/2*i".
std::string format_exact(const ExactScalar& x);

// Parses the forms emitted by format_exact (plus harmless variants like a
// leading "+", or "i" without an explicit coefficient). Throws InputError.
ExactScalar parse_exact(const std::string& text);

}  // namespace collig

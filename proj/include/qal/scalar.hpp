#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace qal {

using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

inline std::string to_string(const Rat& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Gaussian-rational scalar: exact complex number with rational real and
/// imaginary parts.  All exact-mode arithmetic in the library runs on these.
struct Scalar {
  Rat re;
  Rat im;

  Scalar() = default;
  Scalar(Rat r) : re(std::move(r)), im(0) {}
  Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  Scalar(int n) : re(n), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar conj() const { return {re, -im}; }
  Rat abs_sq() const { return re * re + im * im; }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return {a.re + b.re, a.im + b.im}; }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return {a.re - b.re, a.im - b.im}; }
  friend Scalar operator-(const Scalar& a) { return {-a.re, -a.im}; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    Rat d = b.abs_sq();
    if (d == 0) throw std::domain_error("Scalar: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
  Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

inline std::string to_string(const Scalar& s) {
  if (s.im == 0) return to_string(s.re);
  return to_string(s.re) + (s.im < 0 ? "-" : "+") +
         to_string(s.im < 0 ? Rat(-s.im) : s.im) + "i";
}

/// Parses "p/q" or "p" into an exact rational.
inline Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return Rat(boost::multiprecision::cpp_int(text));
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: " + text);
  }
}

}  // namespace qal

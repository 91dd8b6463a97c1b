#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>
#include <string>

namespace sktsp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_100;

inline Int pow2(unsigned e) { return Int(1) << e; }

// floor(log2(k)) for k >= 1
inline unsigned floor_log2(const Int& k) {
  if (k < 1) throw std::invalid_argument("floor_log2: k must be >= 1");
  return static_cast<unsigned>(boost::multiprecision::msb(k));
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int ceil_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (q * d != n && n > 0) ++q;
  return q;
}

inline Int floor_rat(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (q * d != n && n < 0) --q;
  return q;
}

// Parses "p", "p/q" or plain integers into an exact rational.
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline std::string rat_to_string(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

namespace detail {
// Sum of 1/i over [lo, hi], divide and conquer to keep intermediates small.
inline Rat harmonic_range(unsigned long lo, unsigned long hi) {
  if (lo == hi) return Rat(1, lo);
  unsigned long mid = lo + (hi - lo) / 2;
  return harmonic_range(lo, mid) + harmonic_range(mid + 1, hi);
}
}  // namespace detail

// k-th harmonic number. Exact for k <= 10^4 (rational arithmetic above that
// bogs down in normalization); beyond that the Euler-Maclaurin approximation
// ln k + gamma + 1/(2k) is used (error below 1/(8k^2)).
inline Rat harmonic(const Int& k) {
  if (k < 1) throw std::invalid_argument("harmonic: k must be >= 1");
  if (k <= 10000) {
    return detail::harmonic_range(1, static_cast<unsigned long>(k));
  }
  const Real gamma("0.57721566490153286060651209008240243104215933593992");
  Real kk(k.str());
  Real h = boost::multiprecision::log(kk) + gamma + Real(1) / (2 * kk);
  // 60 significant decimal digits is far beyond the approximation error.
  Int scale = boost::multiprecision::pow(Int(10), 60);
  Int num = static_cast<Int>(Real(h * Real(scale.str())));
  return Rat(num, scale);
}

inline Real e_const() {
  return boost::multiprecision::exp(Real(1));
}

// ceil(factor * rho * e/(e-1) * H_k), evaluated in 100-digit floats.
inline long alpha_from_harmonic(const Rat& h_k, const Rat& rho, int factor) {
  Real e = e_const();
  Real v = Real(factor) * Real(rho) * (e / (e - 1)) * Real(h_k);
  Real c = boost::multiprecision::ceil(v);
  return static_cast<long>(c);
}

// Inner-iteration count of the adaptive algorithm: ceil(4 rho e/(e-1) H_k).
inline long alpha_adaptive(const Int& k, const Rat& rho = Rat(1)) {
  return alpha_from_harmonic(harmonic(k), rho, 4);
}

// Non-adaptive builder uses twice the constant: ceil(8 rho e/(e-1) H_k).
inline long alpha_nonadaptive(const Int& k, const Rat& rho = Rat(1)) {
  return alpha_from_harmonic(harmonic(k), rho, 8);
}

// A rational lower bound on 1 - 1/e, tight to 30 decimal digits. Checks of
// the form E[Y] >= (1-1/e) * m stay valid when the constant is replaced by
// any value below the true one.
inline const Rat& one_minus_inv_e_lb() {
  static const Rat c = [] {
    Int num("632120558828557678404476229838538");
    Int den = boost::multiprecision::pow(Int(10), 33);
    return Rat(num, den);
  }();
  return c;
}

}  // namespace sktsp

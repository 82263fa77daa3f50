#pragma once

#include <cmath>

#include <quadmath.h>

// Overloads that let the scalar templates below run in double or __float128.
namespace manifold_splines::detail {

using quad = __float128;

inline double xsqrt(double v) { return std::sqrt(v); }
inline double xlog(double v) { return std::log(v); }
inline double xpow(double v, double e) { return std::pow(v, e); }
inline double xabs(double v) { return std::abs(v); }

inline quad xsqrt(quad v) { return sqrtq(v); }
inline quad xlog(quad v) { return logq(v); }
inline quad xpow(quad v, quad e) { return powq(v, e); }
inline quad xabs(quad v) { return fabsq(v); }

template <class T>
inline T pi_v() {
  if constexpr (sizeof(T) == sizeof(double)) {
    return static_cast<T>(3.14159265358979323846);
  } else {
    return acosq(quad(-1));
  }
}

}  // namespace manifold_splines::detail

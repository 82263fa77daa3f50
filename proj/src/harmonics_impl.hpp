#pragma once

#include <span>

#include "xmath.hpp"

namespace manifold_splines::detail {

/// Real orthonormal spherical harmonics of degree <= lmax at the unit vector
/// (x, y, z); out[l*l + l + m] for m in [-l, l]. Uses the fully normalized
/// associated Legendre recurrence with the sin^m(theta) factor carried by
/// Re/Im (x + iy)^m, so no trigonometry and no pole singularity.
template <class T>
void real_harmonics(T x, T y, T z, int lmax, std::span<T> out) {
  const T four_pi = T(4) * pi_v<T>();
  const T sqrt2 = xsqrt(T(2));
  T cm = T(1);  // Re (x + iy)^m
  T sm = T(0);  // Im (x + iy)^m
  T pmm = T(1) / xsqrt(four_pi);
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) {
      const T c = x * cm - y * sm;
      const T s = x * sm + y * cm;
      cm = c;
      sm = s;
      pmm *= xsqrt(T(2 * m + 1) / T(2 * m));
    }
    const T cfac = m == 0 ? T(1) : sqrt2 * cm;
    const T sfac = sqrt2 * sm;

    T p_prev = T(0);
    T p_cur = pmm;
    for (int l = m; l <= lmax; ++l) {
      if (l == m + 1) {
        p_prev = p_cur;
        p_cur = xsqrt(T(2 * m + 3)) * z * pmm;
      } else if (l > m + 1) {
        const T ll = T(l);
        const T mm = T(m);
        const T a = xsqrt((T(4) * ll * ll - T(1)) / (ll * ll - mm * mm));
        const T b = xsqrt(((ll - T(1)) * (ll - T(1)) - mm * mm) / (T(4) * (ll - T(1)) * (ll - T(1)) - T(1)));
        const T next = a * (z * p_cur - b * p_prev);
        p_prev = p_cur;
        p_cur = next;
      }
      const std::size_t base = static_cast<std::size_t>(l * l + l);
      if (m == 0) {
        out[base] = p_cur;
      } else {
        out[base + static_cast<std::size_t>(m)] = p_cur * cfac;
        out[base - static_cast<std::size_t>(m)] = p_cur * sfac;
      }
    }
  }
}

}  // namespace manifold_splines::detail

#pragma once

// Trusted tail certification. Only code that has proved a coefficient bound
// for a concrete family of series may call this.

#include "twin_taylor/series.hpp"

namespace twin_taylor {

PowerSeries with_tail(PowerSeries s, TailClass tc, std::optional<TailMajorant> m);

/// Extra bits for Horner at |t| > 1: a rounding error made at step k is
/// multiplied by |t|^k later, so the per-step grid must be that much finer.
inline int horner_guard_bits(const Enclosure& t, std::size_t degree) {
  const Rational m = t.magnitude();
  if (m <= 1) return 0;
  const Integer ceil_m = (m.get_num() + m.get_den() - 1) / m.get_den();
  return static_cast<int>(degree * mpz_sizeinbase(ceil_m.get_mpz_t(), 2)) + 8;
}

}  // namespace twin_taylor

#pragma once

#include <cstddef>
#include <vector>

#include "quadcohom/exactalg.hpp"

namespace quadcohom {

/// Betti numbers b_0 .. b_{2d} of a space of complex dimension d.
struct BettiTable {
  std::vector<Integer> values;

  std::size_t size() const { return values.size(); }
  const Integer& operator[](std::size_t k) const { return values[k]; }

  /// Alternating sum of the entries.
  Integer euler() const {
    Integer e = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k % 2 == 0) {
        e += values[k];
      } else {
        e -= values[k];
      }
    }
    return e;
  }

  bool palindromic() const {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] != values[values.size() - 1 - k]) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

}  // namespace quadcohom

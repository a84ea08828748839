// Item sets as bitmasks over global item ids 0..n-1. Every exhaustive scan in
// bfmd walks masks in ascending numeric order; combined with strict-improvement
// updates this realizes the "first maximum wins" (smallest bitmask) tie-break
// used throughout.
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace bfmd {

using Subset = std::uint32_t;

inline int popcount(Subset s) { return std::popcount(s); }

inline bool contains(Subset s, int item) { return (s >> item) & 1u; }

inline Subset bit(int item) { return Subset(1) << item; }

inline Subset full_mask(int n) {
  return n >= 32 ? ~Subset(0) : ((Subset(1) << n) - 1u);
}

/// Items of `s` in ascending id order.
inline std::vector<int> items_of(Subset s) {
  std::vector<int> out;
  for (int e = 0; s >> e; ++e)
    if (contains(s, e)) out.push_back(e);
  return out;
}

/// Maps a global subset of `group` onto the local bitmask whose bit j refers
/// to the j-th smallest item of `group`.
inline Subset global_to_local(Subset s, Subset group) {
  Subset local = 0;
  int j = 0;
  for (int e = 0; group >> e; ++e) {
    if (contains(group, e)) {
      if (contains(s, e)) local |= Subset(1) << j;
      ++j;
    }
  }
  return local;
}

/// Inverse of global_to_local.
inline Subset local_to_global(Subset local, Subset group) {
  Subset s = 0;
  int j = 0;
  for (int e = 0; group >> e; ++e) {
    if (contains(group, e)) {
      if ((local >> j) & 1u) s |= Subset(1) << e;
      ++j;
    }
  }
  return s;
}

}  // namespace bfmd

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hyperbent {

// Smallest representative of each orbit of j -> 2j (mod modulus), 0 excluded,
// in ascending order. The first unseen value is automatically the minimum of
// its orbit.
inline std::vector<std::uint32_t> cyclotomic_coset_leaders(std::uint64_t modulus) {
  std::vector<bool> seen(modulus, false);
  std::vector<std::uint32_t> leaders;
  for (std::uint64_t j = 1; j < modulus; ++j) {
    if (seen[j]) continue;
    leaders.push_back(static_cast<std::uint32_t>(j));
    std::uint64_t t = j;
    do {
      seen[t] = true;
      t = t * 2 % modulus;
    } while (t != j);
  }
  return leaders;
}

inline std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    s0 -= q * s1;
    std::swap(r0, r1);
    std::swap(s0, s1);
  }
  if (r0 != 1) return std::nullopt;
  return s0 < 0 ? s0 + m : s0;
}

}  // namespace hyperbent

#include "dring/words.hpp"

#include <algorithm>

namespace dring {

bool next_permutation_signed(std::vector<std::size_t>& perm, int& sign) {
  const std::size_t n = perm.size();
  if (n < 2) return false;
  std::size_t i = n - 1;
  while (i > 0 && perm[i - 1] >= perm[i]) --i;
  if (i == 0) return false;
  std::size_t j = n - 1;
  while (perm[j] <= perm[i - 1]) --j;
  std::swap(perm[i - 1], perm[j]);
  // One swap, then reversing a suffix of length L costs floor(L/2) swaps.
  const std::size_t suffix = n - i;
  if ((1 + suffix / 2) % 2 == 1) sign = -sign;
  std::reverse(perm.begin() + static_cast<std::ptrdiff_t>(i), perm.end());
  return true;
}

}  // namespace dring

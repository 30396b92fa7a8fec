#include "cfcycles/multivector.hpp"

namespace cfcycles {

int blade_reorder_sign(std::uint32_t a, std::uint32_t b) {
  // Count the generator swaps needed to merge the two ascending products.
  a >>= 1;
  int swaps = 0;
  while (a) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return swaps % 2 ? -1 : 1;
}

std::string blade_name(std::uint32_t mask) {
  if (mask == 0) return "1";
  std::string out;
  for (unsigned i = 0; i < 32; ++i)
    if (mask & (std::uint32_t{1} << i)) out += "e" + std::to_string(i + 1);
  return out;
}

}  // namespace cfcycles

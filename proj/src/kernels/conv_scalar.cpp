#include <algorithm>

#include "bkhopf/kernels/conv.hpp"

namespace bkhopf::kernels::scalar {

void conv_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out) {
  const std::size_t n_out = out.size();
  for (std::size_t i = 0; i < a.size() && i < n_out; ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    const std::size_t len = std::min(b.size(), n_out - i);
    std::uint64_t* dst = out.data() + i;
    for (std::size_t j = 0; j < len; ++j) dst[j] += ai * b[j];
  }
}

}  // namespace bkhopf::kernels::scalar

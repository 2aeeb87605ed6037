#pragma once

#include <cstdint>
#include <span>
#include <string_view>

// Coefficient convolution kernels used by series multiplication.
//
// conv_accumulate adds the truncated product of a and b into out:
//   out[k] += sum_{i + j = k} a[i] * b[j]   for k < out.size().
// No modular reduction happens here. Operands must be < 2^32 and the caller
// guarantees the accumulated sums fit in 64 bits.
namespace bkhopf::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

namespace scalar {
void conv_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out);
}

namespace avx2 {
// Only call when isa_supported(Isa::Avx2).
void conv_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out);
}

bool isa_supported(Isa isa);

// Best supported ISA, chosen once at startup.
Isa detected_isa();

Isa active_isa();

// Overrides the dispatch target (tests, benchmarking). Throws InvalidArgument
// when the ISA is not supported on this machine.
void select_isa(Isa isa);

void conv_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out);

}  // namespace bkhopf::kernels

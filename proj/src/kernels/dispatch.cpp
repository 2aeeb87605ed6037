#include <atomic>

#include "bkhopf/error.hpp"
#include "bkhopf/kernels/conv.hpp"

namespace bkhopf::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa isa = isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

namespace {

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
  if (!isa_supported(isa))
    throw Error(ErrorCode::InvalidArgument, std::string(isa_name(isa)) + " is not supported on this CPU");
  active().store(isa, std::memory_order_relaxed);
}

void conv_accumulate(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out) {
  if (active_isa() == Isa::Avx2) {
    avx2::conv_accumulate(a, b, out);
  } else {
    scalar::conv_accumulate(a, b, out);
  }
}

}  // namespace bkhopf::kernels

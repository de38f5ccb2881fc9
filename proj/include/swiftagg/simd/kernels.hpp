#pragma once

// Element-wise modular vector kernels used on the hot paths of sharing,
// aggregation and recovery. Every kernel has a scalar reference version;
// wider variants must produce bit-identical output and are chosen once at
// startup from the CPU's capabilities.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "swiftagg/field.hpp"

namespace swiftagg::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  // acc[i] = acc[i] + x[i]
  void (*add)(Element* acc, const Element* x, std::size_t n, std::uint32_t p);
  // acc[i] = acc[i] * s + x[i]   (one Horner step)
  void (*mul_add)(Element* acc, Element s, const Element* x, std::size_t n, std::uint32_t p);
  // acc[i] = acc[i] + s * x[i]
  void (*axpy)(Element* acc, Element s, const Element* x, std::size_t n, std::uint32_t p);
};

namespace scalar {
const KernelTable& table();
}

#if defined(SWIFTAGG_HAVE_AVX2)
namespace avx2 {
// Multiplying kernels take the double-precision path only for p < 2^26 and
// fall back to scalar above that.
const KernelTable& table();
}
#endif

// Best ISA this build and CPU support.
Isa detected_isa();
// ISA currently dispatched to. Defaults to detected_isa(), or kScalar when
// the SWIFTAGG_ISA environment variable is set to "scalar".
Isa active_isa();
// Forces dispatch; requesting an unavailable ISA selects scalar.
void set_active_isa(Isa isa);
const KernelTable& table(Isa isa);

// Dispatching wrappers. Spans must have equal lengths.
void add_mod(std::span<Element> acc, std::span<const Element> x, std::uint32_t p);
void mul_add_mod(std::span<Element> acc, Element s, std::span<const Element> x, std::uint32_t p);
void axpy_mod(std::span<Element> acc, Element s, std::span<const Element> x, std::uint32_t p);

}  // namespace swiftagg::simd

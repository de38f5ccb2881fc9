#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

#include "swiftagg/simd/kernels.hpp"

namespace swiftagg::simd {
namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("SWIFTAGG_ISA"); env && std::string_view(env) == "scalar") {
    return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
#if defined(SWIFTAGG_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
#if defined(SWIFTAGG_HAVE_AVX2)
  if (isa == Isa::kAvx2) return avx2::table();
#endif
  (void)isa;
  return scalar::table();
}

void add_mod(std::span<Element> acc, std::span<const Element> x, std::uint32_t p) {
  assert(acc.size() == x.size());
  table(active_isa()).add(acc.data(), x.data(), acc.size(), p);
}

void mul_add_mod(std::span<Element> acc, Element s, std::span<const Element> x, std::uint32_t p) {
  assert(acc.size() == x.size());
  table(active_isa()).mul_add(acc.data(), s, x.data(), acc.size(), p);
}

void axpy_mod(std::span<Element> acc, Element s, std::span<const Element> x, std::uint32_t p) {
  assert(acc.size() == x.size());
  table(active_isa()).axpy(acc.data(), s, x.data(), acc.size(), p);
}

}  // namespace swiftagg::simd

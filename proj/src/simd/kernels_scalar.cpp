#include "swiftagg/simd/kernels.hpp"

namespace swiftagg::simd::scalar {
namespace {

void add(Element* acc, const Element* x, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t s = acc[i] + x[i];
    acc[i] = s >= p ? s - p : s;
  }
}

void mul_add(Element* acc, Element s, const Element* x, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] = static_cast<Element>((static_cast<std::uint64_t>(acc[i]) * s + x[i]) % p);
  }
}

void axpy(Element* acc, Element s, const Element* x, std::size_t n, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] = static_cast<Element>((static_cast<std::uint64_t>(x[i]) * s + acc[i]) % p);
  }
}

constexpr KernelTable kTable{add, mul_add, axpy};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace swiftagg::simd::scalar

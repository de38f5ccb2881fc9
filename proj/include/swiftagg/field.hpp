#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace swiftagg {

// A field element is its canonical representative in [0, p); the modulus
// travels with the FieldContext, never with the element.
using Element = std::uint32_t;

// Largest supported modulus; products of two elements fit in 64 bits.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

bool is_prime(std::uint64_t n);

class FieldContext {
 public:
  // Smallest prime p with N(ell-1) < p <= 2N(ell-1).
  static FieldContext select_prime(std::uint64_t users, std::uint64_t ell);

  // Any prime modulus. The result is tagged non-conforming: load and
  // bit-count reporting built on it must not be trusted.
  static FieldContext with_override(std::uint64_t prime, std::uint64_t ell, std::uint64_t users);

  std::uint32_t modulus() const { return p_; }
  std::uint64_t ell() const { return ell_; }
  std::uint64_t users() const { return users_; }
  bool conforming() const { return conforming_; }
  // ceil(log2 p)
  unsigned bits_per_symbol() const;

  Element reduce(std::uint64_t v) const { return static_cast<Element>(v % p_); }
  Element add(Element a, Element b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element pow(Element base, std::uint64_t exp) const;
  // Throws InverseOfZero.
  Element inv(Element a) const;

 private:
  FieldContext(std::uint32_t p, std::uint64_t ell, std::uint64_t users, bool conforming)
      : p_(p), ell_(ell), users_(users), conforming_(conforming) {}

  std::uint32_t p_;
  std::uint64_t ell_;
  std::uint64_t users_;
  bool conforming_;
};

// Dense polynomial, coefficient i multiplies x^i. Trailing zeros are trimmed
// so the zero polynomial has no coefficients and no degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Element> coeffs);

  const std::vector<Element>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  // Coefficient of x^i, zero past the degree.
  Element coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Element> coeffs_;
};

struct Point {
  Element x;
  Element y;
};

Element eval_poly(const FieldContext& ctx, const Polynomial& poly, Element x);

// Coefficients of the Lagrange basis polynomials for a fixed set of distinct
// abscissae: row(i) holds L_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j).
// Building the basis is O(n^2); reusing it across many ordinate vectors is
// what makes coordinate-wise recovery cheap.
class LagrangeBasis {
 public:
  LagrangeBasis(const FieldContext& ctx, std::span<const Element> abscissae);

  std::size_t size() const { return n_; }
  std::span<const Element> row(std::size_t i) const {
    return {rows_.data() + i * n_, n_};
  }

 private:
  std::size_t n_;
  std::vector<Element> rows_;
};

// Unique polynomial of degree < points.size() through all points.
// Throws DuplicateAbscissa, EmptyInput.
Polynomial lagrange_interpolate(const FieldContext& ctx, std::span<const Point> points);

}  // namespace swiftagg

#include "swiftagg/field.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "swiftagg/error.hpp"

namespace swiftagg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldContext FieldContext::select_prime(std::uint64_t users, std::uint64_t ell) {
  if (users < 1 || ell < 2) {
    throw Error(ErrorCode::kInvalidParams, "select_prime needs N >= 1 and ell >= 2");
  }
  const std::uint64_t lo = users * (ell - 1);
  const std::uint64_t hi = 2 * lo;
  if (hi > kMaxModulus) {
    throw Error(ErrorCode::kFieldTooLarge,
                "2N(ell-1) = " + std::to_string(hi) + " exceeds the supported modulus");
  }
  for (std::uint64_t c = lo + 1; c <= hi; ++c) {
    if (is_prime(c)) return FieldContext(static_cast<std::uint32_t>(c), ell, users, true);
  }
  throw Error(ErrorCode::kNoPrimeInInterval,
              "no prime in (" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

FieldContext FieldContext::with_override(std::uint64_t prime, std::uint64_t ell,
                                         std::uint64_t users) {
  if (prime > kMaxModulus) {
    throw Error(ErrorCode::kFieldTooLarge, "modulus " + std::to_string(prime) + " too large");
  }
  if (!is_prime(prime)) {
    throw Error(ErrorCode::kNotPrime, std::to_string(prime) + " is not prime");
  }
  return FieldContext(static_cast<std::uint32_t>(prime), ell, users, false);
}

unsigned FieldContext::bits_per_symbol() const {
  // ceil(log2 p) == bit width of (p - 1) for p >= 2
  return static_cast<unsigned>(std::bit_width(p_ - 1u));
}

Element FieldContext::pow(Element base, std::uint64_t exp) const {
  Element result = reduce(1);
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

Element FieldContext::inv(Element a) const {
  if (a == 0) throw Error(ErrorCode::kInverseOfZero, "inverse of zero");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Element>(t);
}

Polynomial::Polynomial(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Element eval_poly(const FieldContext& ctx, const Polynomial& poly, Element x) {
  Element acc = 0;
  const auto& c = poly.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = ctx.add(ctx.mul(acc, x), *it);
  return acc;
}

LagrangeBasis::LagrangeBasis(const FieldContext& ctx, std::span<const Element> abscissae)
    : n_(abscissae.size()), rows_(abscissae.size() * abscissae.size(), 0) {
  if (n_ == 0) throw Error(ErrorCode::kEmptyInput, "no interpolation points");
  {
    std::vector<Element> sorted(abscissae.begin(), abscissae.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::kDuplicateAbscissa, "abscissae must be pairwise distinct");
    }
  }

  // master(x) = prod_j (x - x_j), degree n, monic
  std::vector<Element> master(n_ + 1, 0);
  master[0] = ctx.reduce(1);
  for (std::size_t j = 0; j < n_; ++j) {
    const Element neg_xj = ctx.neg(abscissae[j]);
    for (std::size_t k = j + 1; k > 0; --k) {
      master[k] = ctx.add(master[k - 1], ctx.mul(master[k], neg_xj));
    }
    master[0] = ctx.mul(master[0], neg_xj);
  }

  std::vector<Element> quotient(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const Element xi = abscissae[i];
    // synthetic division master(x) / (x - x_i)
    Element carry = master[n_];
    for (std::size_t k = n_; k > 0; --k) {
      quotient[k - 1] = carry;
      carry = ctx.add(master[k - 1], ctx.mul(carry, xi));
    }
    Element denom = ctx.reduce(1);
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != i) denom = ctx.mul(denom, ctx.sub(xi, abscissae[j]));
    }
    const Element scale = ctx.inv(denom);
    Element* row = rows_.data() + i * n_;
    for (std::size_t k = 0; k < n_; ++k) row[k] = ctx.mul(quotient[k], scale);
  }
}

Polynomial lagrange_interpolate(const FieldContext& ctx, std::span<const Point> points) {
  std::vector<Element> xs;
  xs.reserve(points.size());
  for (const auto& pt : points) xs.push_back(pt.x);
  const LagrangeBasis basis(ctx, xs);

  std::vector<Element> coeffs(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = basis.row(i);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      coeffs[k] = ctx.add(coeffs[k], ctx.mul(points[i].y, row[k]));
    }
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace swiftagg

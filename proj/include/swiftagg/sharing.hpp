#pragma once

// Ramp secret sharing of a user's model: the model is cut into K segments,
// T uniformly random noise segments are appended, and every coordinate of
// the segments becomes one polynomial
//
//   F(x) = W_1 + W_2 x + ... + W_K x^(K-1) + Z_1 x^K + ... + Z_T x^(K+T-1).
//
// Any T evaluations at distinct non-zero points are uniformly distributed,
// and any K+T evaluations of a sum of such polynomials determine the sum of
// the models.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "swiftagg/field.hpp"

namespace swiftagg {

class Model {
 public:
  Model() = default;
  // Entries must be canonical field elements. Throws EntryOutOfRange.
  Model(const FieldContext& ctx, std::vector<Element> entries);

  // Same, additionally enforcing the per-entry bound entries < ell that the
  // conforming prime is sized for.
  static Model bounded(const FieldContext& ctx, std::vector<Element> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<Element>& entries() const { return entries_; }

 private:
  std::vector<Element> entries_;
};

struct ModelPartition {
  std::vector<std::vector<Element>> segments;  // K segments, equal length
  std::size_t pad_count = 0;
  std::size_t original_length = 0;

  std::size_t segment_length() const { return segments.empty() ? 0 : segments.front().size(); }
};

// Splits into K segments of length ceil(L/K), zero-padding the tail.
ModelPartition partition_model(const Model& model, std::size_t k);
// Concatenates and drops the padding.
std::vector<Element> unpartition(const ModelPartition& partition);

using Rng = std::mt19937_64;

struct NoiseBlock {
  std::vector<std::vector<Element>> vectors;  // T vectors, segment length each
  std::uint64_t seed_id = 0;
};

// T vectors of uniform field elements drawn from a generator seeded with
// `seed`. Stands in for true randomness in simulation only.
NoiseBlock sample_noise(const FieldContext& ctx, std::size_t t, std::size_t seg_len,
                        std::uint64_t seed);
// All-zero block; used for degenerate-noise controls.
NoiseBlock zero_noise(std::size_t t, std::size_t seg_len);

// Coefficient-major storage: coefficient(j) is the vector of x^j
// coefficients across all coordinates.
class SharePolynomial {
 public:
  SharePolynomial(std::size_t num_coeffs, std::size_t seg_len)
      : num_coeffs_(num_coeffs), seg_len_(seg_len), data_(num_coeffs * seg_len, 0) {}

  std::size_t num_coeffs() const { return num_coeffs_; }
  std::size_t segment_length() const { return seg_len_; }
  std::span<const Element> coefficient(std::size_t j) const {
    return {data_.data() + j * seg_len_, seg_len_};
  }
  std::span<Element> coefficient(std::size_t j) { return {data_.data() + j * seg_len_, seg_len_}; }
  // The scalar polynomial of one coordinate.
  Polynomial coordinate(std::size_t i) const;

 private:
  std::size_t num_coeffs_;
  std::size_t seg_len_;
  std::vector<Element> data_;
};

// Model segments first, then noise. Throws DimensionMismatch.
SharePolynomial make_share_poly(const ModelPartition& partition, const NoiseBlock& noise);

struct Share {
  Element alpha = 0;
  std::vector<Element> values;
};

// Per-coordinate evaluation at alpha. Throws ZeroEvaluationPoint.
Share share_at(const FieldContext& ctx, const SharePolynomial& poly, Element alpha);

// Interpolates the degree-(K+T-1) aggregate polynomial coordinate-wise from
// the first K+T evaluations, keeps coefficients 0..K-1, concatenates them
// and truncates to original_length.
// Throws InsufficientEvaluations, DuplicateAbscissa, ZeroEvaluationPoint,
// DimensionMismatch.
std::vector<Element> recover_aggregate(const FieldContext& ctx, std::span<const Share> evals,
                                       std::size_t k, std::size_t t,
                                       std::size_t original_length);

// True when every evaluation lies on the polynomial fitted through the first
// `num_coeffs` of them.
bool evaluations_consistent(const FieldContext& ctx, std::span<const Share> evals,
                            std::size_t num_coeffs);

// alpha for in-group position t (0-indexed) is t + 1.
inline Element evaluation_point(std::size_t position) { return static_cast<Element>(position + 1); }

}  // namespace swiftagg

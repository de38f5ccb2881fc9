#include "swiftagg/sharing.hpp"

#include <string>

#include "swiftagg/error.hpp"
#include "swiftagg/simd/kernels.hpp"

namespace swiftagg {

Model::Model(const FieldContext& ctx, std::vector<Element> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] >= ctx.modulus()) {
      throw Error(ErrorCode::kEntryOutOfRange,
                  "model entry " + std::to_string(i) + " is not a field element");
    }
  }
}

Model Model::bounded(const FieldContext& ctx, std::vector<Element> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= ctx.ell()) {
      throw Error(ErrorCode::kEntryOutOfRange, "model entry " + std::to_string(i) + " = " +
                                                   std::to_string(entries[i]) + " is not < ell");
    }
  }
  return Model(ctx, std::move(entries));
}

ModelPartition partition_model(const Model& model, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kBadK, "K must be at least 1");
  const std::size_t len = model.size();
  const std::size_t seg_len = (len + k - 1) / k;
  ModelPartition out;
  out.original_length = len;
  out.pad_count = seg_len * k - len;
  out.segments.assign(k, std::vector<Element>(seg_len, 0));
  const auto& e = model.entries();
  for (std::size_t i = 0; i < len; ++i) out.segments[i / seg_len][i % seg_len] = e[i];
  return out;
}

std::vector<Element> unpartition(const ModelPartition& partition) {
  std::vector<Element> out;
  out.reserve(partition.segments.size() * partition.segment_length());
  for (const auto& seg : partition.segments) out.insert(out.end(), seg.begin(), seg.end());
  out.resize(partition.original_length);
  return out;
}

NoiseBlock sample_noise(const FieldContext& ctx, std::size_t t, std::size_t seg_len,
                        std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<Element> dist(0, ctx.modulus() - 1);
  NoiseBlock block;
  block.seed_id = seed;
  block.vectors.assign(t, std::vector<Element>(seg_len));
  for (auto& v : block.vectors) {
    for (auto& e : v) e = dist(rng);
  }
  return block;
}

NoiseBlock zero_noise(std::size_t t, std::size_t seg_len) {
  NoiseBlock block;
  block.vectors.assign(t, std::vector<Element>(seg_len, 0));
  return block;
}

Polynomial SharePolynomial::coordinate(std::size_t i) const {
  std::vector<Element> c(num_coeffs_);
  for (std::size_t j = 0; j < num_coeffs_; ++j) c[j] = data_[j * seg_len_ + i];
  return Polynomial(std::move(c));
}

SharePolynomial make_share_poly(const ModelPartition& partition, const NoiseBlock& noise) {
  const std::size_t k = partition.segments.size();
  const std::size_t seg_len = partition.segment_length();
  for (const auto& v : noise.vectors) {
    if (v.size() != seg_len) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "noise vector length " + std::to_string(v.size()) +
                      " != segment length " + std::to_string(seg_len));
    }
  }
  SharePolynomial poly(k + noise.vectors.size(), seg_len);
  for (std::size_t j = 0; j < k; ++j) {
    std::copy(partition.segments[j].begin(), partition.segments[j].end(),
              poly.coefficient(j).begin());
  }
  for (std::size_t j = 0; j < noise.vectors.size(); ++j) {
    std::copy(noise.vectors[j].begin(), noise.vectors[j].end(), poly.coefficient(k + j).begin());
  }
  return poly;
}

Share share_at(const FieldContext& ctx, const SharePolynomial& poly, Element alpha) {
  if (alpha % ctx.modulus() == 0) {
    throw Error(ErrorCode::kZeroEvaluationPoint, "evaluation at zero reveals the first segment");
  }
  Share share{alpha, std::vector<Element>(poly.segment_length(), 0)};
  const std::size_t d = poly.num_coeffs();
  if (d == 0) return share;
  const auto top = poly.coefficient(d - 1);
  std::copy(top.begin(), top.end(), share.values.begin());
  for (std::size_t j = d - 1; j > 0; --j) {
    simd::mul_add_mod(share.values, alpha, poly.coefficient(j - 1), ctx.modulus());
  }
  return share;
}

namespace {

void check_evaluations(const FieldContext& ctx, std::span<const Share> evals, std::size_t needed) {
  if (evals.size() < needed) {
    throw Error(ErrorCode::kInsufficientEvaluations,
                "need " + std::to_string(needed) + " evaluations, got " +
                    std::to_string(evals.size()));
  }
  for (const auto& e : evals) {
    if (e.alpha % ctx.modulus() == 0) {
      throw Error(ErrorCode::kZeroEvaluationPoint, "evaluation point zero");
    }
    if (e.values.size() != evals.front().values.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "evaluation vectors differ in length");
    }
  }
}

// Coefficient rows of the interpolating polynomial through evals[0..n).
std::vector<std::vector<Element>> interpolate_rows(const FieldContext& ctx,
                                                   std::span<const Share> evals, std::size_t n,
                                                   std::size_t keep) {
  std::vector<Element> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = evals[i].alpha;
  const LagrangeBasis basis(ctx, xs);
  const std::size_t width = evals.front().values.size();
  std::vector<std::vector<Element>> rows(keep, std::vector<Element>(width, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = basis.row(i);
    for (std::size_t k = 0; k < keep; ++k) {
      simd::axpy_mod(rows[k], b[k], evals[i].values, ctx.modulus());
    }
  }
  return rows;
}

}  // namespace

std::vector<Element> recover_aggregate(const FieldContext& ctx, std::span<const Share> evals,
                                       std::size_t k, std::size_t t,
                                       std::size_t original_length) {
  if (k == 0) throw Error(ErrorCode::kBadK, "K must be at least 1");
  check_evaluations(ctx, evals, k + t);
  const auto rows = interpolate_rows(ctx, evals, k + t, k);
  std::vector<Element> out;
  out.reserve(k * rows.front().size());
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  if (original_length > out.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "original length exceeds recovered length");
  }
  out.resize(original_length);
  return out;
}

bool evaluations_consistent(const FieldContext& ctx, std::span<const Share> evals,
                            std::size_t num_coeffs) {
  check_evaluations(ctx, evals, num_coeffs);
  const auto rows = interpolate_rows(ctx, evals, num_coeffs, num_coeffs);
  SharePolynomial fitted(num_coeffs, rows.front().size());
  for (std::size_t j = 0; j < num_coeffs; ++j) {
    std::copy(rows[j].begin(), rows[j].end(), fitted.coefficient(j).begin());
  }
  for (std::size_t i = num_coeffs; i < evals.size(); ++i) {
    if (share_at(ctx, fitted, evals[i].alpha).values != evals[i].values) return false;
  }
  return true;
}

}  // namespace swiftagg

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "swiftagg/error.hpp"
#include "swiftagg/sharing.hpp"

namespace swiftagg {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kConfigInvalid;
}

std::vector<Element> iota_vec(std::size_t n, Element start = 1) {
  std::vector<Element> v(n);
  std::iota(v.begin(), v.end(), start);
  return v;
}

TEST(Model, RangeChecks) {
  const auto ctx = FieldContext::select_prime(12, 5);  // p = 53
  EXPECT_NO_THROW(Model(ctx, {52, 0}));
  EXPECT_EQ(code_of([&] { Model(ctx, {53}); }), ErrorCode::kEntryOutOfRange);
  EXPECT_EQ(code_of([&] { Model::bounded(ctx, {5}); }), ErrorCode::kEntryOutOfRange);
  EXPECT_NO_THROW(Model::bounded(ctx, {4, 0, 3}));
}

TEST(Partition, EvenSplit) {
  const auto ctx = FieldContext::select_prime(12, 256);
  const auto part = partition_model(Model(ctx, iota_vec(6)), 3);
  ASSERT_EQ(part.segments.size(), 3u);
  EXPECT_EQ(part.segments[0], (std::vector<Element>{1, 2}));
  EXPECT_EQ(part.segments[2], (std::vector<Element>{5, 6}));
  EXPECT_EQ(part.pad_count, 0u);
  EXPECT_EQ(unpartition(part), iota_vec(6));
}

TEST(Partition, PadsTail) {
  const auto ctx = FieldContext::select_prime(12, 256);
  const auto part = partition_model(Model(ctx, iota_vec(7)), 3);
  EXPECT_EQ(part.segment_length(), 3u);
  EXPECT_EQ(part.pad_count, 2u);
  EXPECT_EQ(part.segments[2], (std::vector<Element>{7, 0, 0}));
  EXPECT_EQ(unpartition(part), iota_vec(7));
}

TEST(Partition, RoundTripProperty) {
  const auto ctx = FieldContext::select_prime(12, 256);
  for (std::size_t len = 1; len <= 30; ++len) {
    for (std::size_t k = 1; k <= 12; ++k) {
      const auto part = partition_model(Model(ctx, iota_vec(len)), k);
      EXPECT_EQ(part.segments.size(), k);
      EXPECT_EQ(part.segment_length() * k, len + part.pad_count);
      EXPECT_EQ(unpartition(part), iota_vec(len));
    }
  }
}

TEST(Noise, DeterministicPerSeed) {
  const auto ctx = FieldContext::select_prime(12, 256);
  const auto a = sample_noise(ctx, 3, 10, 99);
  const auto b = sample_noise(ctx, 3, 10, 99);
  const auto c = sample_noise(ctx, 3, 10, 100);
  EXPECT_EQ(a.vectors, b.vectors);
  EXPECT_NE(a.vectors, c.vectors);
  ASSERT_EQ(a.vectors.size(), 3u);
  for (const auto& v : a.vectors) {
    EXPECT_EQ(v.size(), 10u);
    for (auto x : v) EXPECT_LT(x, ctx.modulus());
  }
}

TEST(Noise, UniformChiSquare) {
  // p = 13, 13000 draws; 12 degrees of freedom, 0.999 quantile is 32.9.
  const auto ctx = FieldContext::select_prime(12, 2);
  const auto block = sample_noise(ctx, 1, 13000, 5);
  std::vector<double> counts(13, 0.0);
  for (auto x : block.vectors[0]) counts[x] += 1.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  EXPECT_LT(chi2, 32.9);
}

TEST(SharePoly, CoefficientLayout) {
  const auto ctx = FieldContext::select_prime(12, 256);
  const auto part = partition_model(Model(ctx, {1, 2, 3, 4}), 2);
  NoiseBlock noise{{{9, 8}}, 0};
  const auto poly = make_share_poly(part, noise);
  EXPECT_EQ(poly.num_coeffs(), 3u);
  EXPECT_EQ(poly.coordinate(0), Polynomial({1, 3, 9}));
  EXPECT_EQ(poly.coordinate(1), Polynomial({2, 4, 8}));
  const auto s = share_at(ctx, poly, 2);
  EXPECT_EQ(s.values, (std::vector<Element>{1 + 6 + 36, 2 + 8 + 32}));
  EXPECT_EQ(code_of([&] { share_at(ctx, poly, 0); }), ErrorCode::kZeroEvaluationPoint);

  NoiseBlock wrong{{{9}}, 0};
  EXPECT_EQ(code_of([&] { make_share_poly(part, wrong); }), ErrorCode::kDimensionMismatch);
}

// Sum of shares of several models interpolates back to the sum of models.
TEST(Recovery, LinearityProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 5, t = rng() % 4, users = 1 + rng() % 6;
    const std::size_t len = 1 + rng() % 20;
    const std::uint64_t ell = 16;
    const auto ctx = FieldContext::select_prime(users, ell);
    std::vector<std::uint64_t> plain(len, 0);
    const std::size_t points = k + t + rng() % 3;
    std::vector<Share> total;
    for (std::size_t i = 0; i < points; ++i) {
      total.push_back({evaluation_point(i), std::vector<Element>((len + k - 1) / k, 0)});
    }
    for (std::size_t u = 0; u < users; ++u) {
      std::vector<Element> w(len);
      for (std::size_t i = 0; i < len; ++i) {
        w[i] = static_cast<Element>(rng() % ell);
        plain[i] += w[i];
      }
      const auto part = partition_model(Model::bounded(ctx, w), k);
      const auto poly = make_share_poly(part, sample_noise(ctx, t, part.segment_length(), rng()));
      for (auto& s : total) {
        const auto share = share_at(ctx, poly, s.alpha);
        for (std::size_t i = 0; i < s.values.size(); ++i) {
          s.values[i] = ctx.add(s.values[i], share.values[i]);
        }
      }
    }
    const auto got = recover_aggregate(ctx, total, k, t, len);
    ASSERT_EQ(got.size(), len);
    for (std::size_t i = 0; i < len; ++i) EXPECT_EQ(got[i], plain[i]);
    EXPECT_TRUE(evaluations_consistent(ctx, total, k + t));
  }
}

TEST(Recovery, AnySubsetOfSizeKPlusT) {
  const auto ctx = FieldContext::select_prime(12, 256);
  const std::size_t k = 3, t = 2;
  const std::vector<Element> w{10, 20, 30, 40, 50, 60};
  const auto poly = make_share_poly(partition_model(Model(ctx, w), k),
                                    sample_noise(ctx, t, 2, 11));
  std::vector<Share> all;
  for (std::size_t i = 0; i < 8; ++i) all.push_back(share_at(ctx, poly, evaluation_point(i)));
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) != 5) continue;
    std::vector<Share> subset;
    for (std::size_t i = 0; i < 8; ++i) {
      if (mask >> i & 1) subset.push_back(all[i]);
    }
    EXPECT_EQ(recover_aggregate(ctx, subset, k, t, w.size()), w);
  }
}

TEST(Recovery, Errors) {
  const auto ctx = FieldContext::select_prime(12, 256);
  std::vector<Share> two{{1, {1}}, {2, {2}}};
  EXPECT_EQ(code_of([&] { recover_aggregate(ctx, two, 2, 1, 1); }),
            ErrorCode::kInsufficientEvaluations);
  std::vector<Share> dup{{1, {1}}, {1, {2}}};
  EXPECT_EQ(code_of([&] { recover_aggregate(ctx, dup, 1, 1, 1); }),
            ErrorCode::kDuplicateAbscissa);
  std::vector<Share> ragged{{1, {1}}, {2, {2, 3}}};
  EXPECT_EQ(code_of([&] { recover_aggregate(ctx, ragged, 1, 1, 1); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Recovery, InconsistentEvaluationsDetected) {
  const auto ctx = FieldContext::select_prime(12, 256);
  const auto poly =
      make_share_poly(partition_model(Model(ctx, {5, 6}), 1), sample_noise(ctx, 1, 2, 1));
  std::vector<Share> evals;
  for (std::size_t i = 0; i < 4; ++i) evals.push_back(share_at(ctx, poly, evaluation_point(i)));
  EXPECT_TRUE(evaluations_consistent(ctx, evals, 2));
  evals[3].values[0] = ctx.add(evals[3].values[0], 1);
  EXPECT_FALSE(evaluations_consistent(ctx, evals, 2));
}

}  // namespace
}  // namespace swiftagg

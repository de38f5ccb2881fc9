#include "swiftagg/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "swiftagg/error.hpp"

namespace swiftagg {
namespace {

using Vec = std::vector<Element>;

// Which users and coordinates the enumeration ranges over.
struct Layout {
  std::size_t users = 0;
  std::size_t model_len = 0;
  std::size_t noise_len = 0;  // T * segment length per user

  std::size_t per_user() const { return model_len + noise_len; }
  std::size_t size() const { return users * per_user(); }
  std::size_t model_var(std::size_t user, std::size_t i) const { return user * per_user() + i; }
  std::size_t noise_var(std::size_t user, std::size_t i) const {
    return user * per_user() + model_len + i;
  }
};

struct ViewProbe {
  ProtocolSetup setup;
  Layout layout;
  DropoutPlan plan;
  std::vector<std::size_t> adversaries;

  // Runs the real protocol on the variable assignment x and returns the
  // flattened view plus its null pattern.
  std::pair<Vec, std::vector<bool>> operator()(const Vec& x) const {
    const auto& p = setup.params;
    std::vector<Model> models;
    std::vector<NoiseBlock> noise;
    for (std::size_t n = 0; n < layout.users; ++n) {
      Vec m(x.begin() + static_cast<std::ptrdiff_t>(layout.model_var(n, 0)),
            x.begin() + static_cast<std::ptrdiff_t>(layout.model_var(n, 0) + layout.model_len));
      models.emplace_back(setup.field, std::move(m));
      NoiseBlock block;
      block.vectors.assign(p.max_colluders, Vec(p.segment_length()));
      for (std::size_t j = 0; j < p.max_colluders; ++j) {
        for (std::size_t i = 0; i < p.segment_length(); ++i) {
          block.vectors[j][i] = x[layout.noise_var(n, j * p.segment_length() + i)];
        }
      }
      noise.push_back(std::move(block));
    }
    const auto result = run_protocol(setup, models, noise, plan);
    const auto view = collect_adversary_view(result.transcript, result.users, adversaries);
    std::vector<bool> nulls;
    for (const auto& m : view.members) {
      for (const auto& r : m.intra) nulls.push_back(r.null);
      for (const auto& r : m.inter) nulls.push_back(r.null);
    }
    for (const auto& r : view.server) nulls.push_back(r.null);
    return {flatten_view(view), nulls};
  }
};

// Odometer over [0, radix)^digits.
bool next_assignment(Vec& digits, std::uint64_t radix) {
  for (auto& d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

class Codec {
 public:
  Codec(std::uint32_t p, std::size_t dim) : p_(p), dim_(dim) {
    if (checked_pow(p, dim) == std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::kSearchSpaceTooLarge, "view too large to index exactly");
    }
  }
  std::uint64_t encode(const Vec& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = dim_; i > 0; --i) c = c * p_ + v[i - 1];
    return c;
  }
  // encode(a + b) without materializing the sum
  std::uint64_t encode_sum(const Vec& a, const Vec& b) const {
    std::uint64_t c = 0;
    for (std::size_t i = dim_; i > 0; --i) {
      const std::uint32_t s = a[i - 1] + b[i - 1];
      c = c * p_ + (s >= p_ ? s - p_ : s);
    }
    return c;
  }

 private:
  std::uint32_t p_;
  std::size_t dim_;
};

long double entropy_bits(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
  long double h = 0.0L;
  for (const std::uint64_t c : counts) {
    if (c == 0) continue;
    const long double q = static_cast<long double>(c) / static_cast<long double>(total);
    h -= q * std::log2(q);
  }
  return h;
}

}  // namespace

std::vector<Element> flatten_view(const AdversaryView& view) {
  Vec out;
  auto append = [&](const ReceivedMessage& r) {
    if (!r.null) out.insert(out.end(), r.values.begin(), r.values.end());
  };
  for (const auto& m : view.members) {
    std::for_each(m.intra.begin(), m.intra.end(), append);
    std::for_each(m.inter.begin(), m.inter.end(), append);
  }
  std::for_each(view.server.begin(), view.server.end(), append);
  return out;
}

PrivacyResult privacy_bruteforce(const PrivacyConfig& config) {
  if (config.allow_excess_colluders) {
    RunConfig checked = config.run;
    checked.adversaries.clear();
    validate_config(checked);
    std::vector<bool> seen(config.run.users, false);
    for (const std::size_t a : config.run.adversaries) {
      if (a >= config.run.users || seen[a]) {
        throw Error(ErrorCode::kConfigInvalid, "adversaries: out of range or repeated");
      }
      seen[a] = true;
    }
  } else {
    validate_config(config.run);
  }
  const RunConfig& run = config.run;
  ViewProbe probe{make_setup(run), {}, DropoutPlan{run.dropouts, run.timing}, run.adversaries};
  const auto& ctx = probe.setup.field;
  const auto& params = probe.setup.params;
  const std::uint32_t p = ctx.modulus();
  const std::uint64_t alphabet = config.model_alphabet == 0 ? run.ell : config.model_alphabet;
  if (alphabet > p) {
    throw Error(ErrorCode::kConfigInvalid, "model alphabet exceeds the field");
  }
  probe.layout = {params.users, params.model_length,
                  params.max_colluders * params.segment_length()};
  const Layout& layout = probe.layout;

  std::vector<bool> is_adversary(params.users, false);
  for (const std::size_t a : run.adversaries) is_adversary[a] = true;
  std::vector<bool> is_dropped(params.users, false);
  for (const std::size_t d : run.dropouts) is_dropped[d] = true;
  std::vector<std::size_t> honest, adversary;
  for (std::size_t n = 0; n < params.users; ++n) {
    (is_adversary[n] ? adversary : honest).push_back(n);
  }
  if (config.prior == ModelPrior::kDuplicated && honest.size() < 2) {
    throw Error(ErrorCode::kConfigInvalid, "duplicated prior needs two honest users");
  }

  // The view is affine in (models, noise); read the map off the real
  // protocol and confirm it on random assignments before enumerating.
  const Vec zero(layout.size(), 0);
  const auto [base, base_nulls] = probe(zero);
  const std::size_t dim = base.size();
  std::vector<Vec> columns(layout.size());
  for (std::size_t j = 0; j < layout.size(); ++j) {
    Vec x = zero;
    x[j] = 1;
    auto [v, nulls] = probe(x);
    if (nulls != base_nulls || v.size() != dim) {
      throw Error(ErrorCode::kConfigInvalid, "view shape depends on the inputs");
    }
    for (std::size_t i = 0; i < dim; ++i) v[i] = ctx.sub(v[i], base[i]);
    columns[j] = std::move(v);
  }
  {
    Rng rng(run.seed ^ 0x70726976ULL);
    std::uniform_int_distribution<Element> dist(0, p - 1);
    for (int check = 0; check < 8; ++check) {
      Vec x(layout.size());
      for (auto& e : x) e = dist(rng);
      Vec predicted = base;
      for (std::size_t j = 0; j < layout.size(); ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
          predicted[i] = ctx.add(predicted[i], ctx.mul(x[j], columns[j][i]));
        }
      }
      if (probe(x).first != predicted) {
        throw Error(ErrorCode::kConfigInvalid, "protocol view is not affine in its inputs");
      }
    }
  }

  auto accumulate = [&](Vec& acc, std::size_t var, Element coeff) {
    if (coeff == 0) return;
    for (std::size_t i = 0; i < dim; ++i) acc[i] = ctx.add(acc[i], ctx.mul(coeff, columns[var][i]));
  };

  const bool uniform_noise = config.noise == NoiseMode::kUniform;
  const std::size_t honest_noise_vars = uniform_noise ? honest.size() * layout.noise_len : 0;
  const std::size_t honest_model_vars = honest.size() * layout.model_len;
  const std::size_t adv_model_vars = adversary.size() * layout.model_len;
  const std::size_t adv_noise_vars = uniform_noise ? adversary.size() * layout.noise_len : 0;

  PrivacyResult result;
  result.view_dimension = dim;
  result.noise_assignments = checked_pow(p, honest_noise_vars);
  const std::uint64_t raw_models = checked_pow(alphabet, honest_model_vars);
  result.adversary_assignments =
      saturating_mul(checked_pow(alphabet, adv_model_vars), checked_pow(p, adv_noise_vars));
  const std::uint64_t estimate = saturating_mul(
      result.adversary_assignments, saturating_mul(raw_models, result.noise_assignments));
  if (estimate > config.budget) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "enumeration needs about " + std::to_string(estimate) + " steps, budget " +
                    std::to_string(config.budget));
  }
  const Codec codec(p, dim);

  // Distribution of the honest-noise contribution, over every assignment.
  std::unordered_map<std::uint64_t, std::uint64_t> noise_hist;
  std::vector<Vec> noise_support;
  std::vector<std::uint64_t> noise_counts;
  {
    Vec digits(honest_noise_vars, 0);
    do {
      Vec u(dim, 0);
      for (std::size_t h = 0, v = 0; h < honest.size() && uniform_noise; ++h) {
        for (std::size_t i = 0; i < layout.noise_len; ++i, ++v) {
          accumulate(u, layout.noise_var(honest[h], i), digits[v]);
        }
      }
      auto [it, fresh] = noise_hist.try_emplace(codec.encode(u), 0);
      if (fresh) noise_support.push_back(std::move(u));
      ++it->second;
    } while (next_assignment(digits, p));
    for (const auto& u : noise_support) noise_counts.push_back(noise_hist.at(codec.encode(u)));
  }
  const long double noise_entropy = entropy_bits(noise_counts, result.noise_assignments);

  // Whether shifting the noise distribution by d leaves it unchanged.
  std::unordered_map<std::uint64_t, bool> shift_invariant;
  auto invariant_under = [&](const Vec& d) {
    const std::uint64_t key = codec.encode(d);
    if (key == 0) return true;
    if (auto it = shift_invariant.find(key); it != shift_invariant.end()) return it->second;
    bool same = true;
    for (std::size_t s = 0; s < noise_support.size() && same; ++s) {
      const auto it = noise_hist.find(codec.encode_sum(noise_support[s], d));
      same = it != noise_hist.end() && it->second == noise_counts[s];
    }
    shift_invariant.emplace(key, same);
    return same;
  };

  // Honest model assignments with their view shifts and aggregate class.
  struct Assignment {
    Vec shift;            // A w
    std::uint64_t klass;  // encoded honest-surviving aggregate
  };
  std::vector<Assignment> assignments;
  {
    Vec digits(honest_model_vars, 0);
    const Codec sum_codec(p, layout.model_len);
    do {
      if (config.prior == ModelPrior::kDuplicated &&
          !std::equal(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(layout.model_len),
                      digits.begin() + static_cast<std::ptrdiff_t>(layout.model_len))) {
        continue;
      }
      Assignment a{Vec(dim, 0), 0};
      Vec sum(layout.model_len, 0);
      for (std::size_t h = 0, v = 0; h < honest.size(); ++h) {
        for (std::size_t i = 0; i < layout.model_len; ++i, ++v) {
          const Element w = digits[v];
          accumulate(a.shift, layout.model_var(honest[h], i), w);
          if (!is_dropped[honest[h]] || run.timing == DropTiming::kAfterIntra) {
            sum[i] = ctx.add(sum[i], w);
          }
        }
      }
      a.klass = sum_codec.encode(sum);
      assignments.push_back(std::move(a));
    } while (next_assignment(digits, alphabet));
  }
  result.model_assignments = assignments.size();

  std::map<std::uint64_t, std::vector<const Assignment*>> classes;
  for (const auto& a : assignments) classes[a.klass].push_back(&a);
  result.conditioning_classes = classes.size();

  result.exactly_zero = true;
  long double mi = 0.0L;
  const long double p_adv = 1.0L / static_cast<long double>(result.adversary_assignments);
  Vec adv_digits(adv_model_vars + adv_noise_vars, 0);
  std::vector<std::uint64_t> adv_radix;
  for (std::size_t i = 0; i < adv_model_vars; ++i) adv_radix.push_back(alphabet);
  for (std::size_t i = 0; i < adv_noise_vars; ++i) adv_radix.push_back(p);
  while (true) {
    Vec offset = base;
    for (std::size_t a = 0, v = 0; a < adversary.size(); ++a) {
      for (std::size_t i = 0; i < layout.model_len; ++i, ++v) {
        accumulate(offset, layout.model_var(adversary[a], i), adv_digits[v]);
      }
    }
    for (std::size_t a = 0, v = adv_model_vars; a < adversary.size() && uniform_noise; ++a) {
      for (std::size_t i = 0; i < layout.noise_len; ++i, ++v) {
        accumulate(offset, layout.noise_var(adversary[a], i), adv_digits[v]);
      }
    }

    for (const auto& [klass, members] : classes) {
      // view given w is noise_hist shifted by offset + A w
      const Vec& rep = members.front()->shift;
      bool identical = true;
      for (const Assignment* m : members) {
        Vec d(dim);
        for (std::size_t i = 0; i < dim; ++i) d[i] = ctx.sub(m->shift[i], rep[i]);
        if (!invariant_under(d)) {
          identical = false;
          break;
        }
      }
      if (identical) continue;
      result.exactly_zero = false;

      std::unordered_map<std::uint64_t, std::uint64_t> mixture;
      for (const Assignment* m : members) {
        Vec shift(dim);
        for (std::size_t i = 0; i < dim; ++i) shift[i] = ctx.add(m->shift[i], offset[i]);
        for (std::size_t s = 0; s < noise_support.size(); ++s) {
          mixture[codec.encode_sum(noise_support[s], shift)] += noise_counts[s];
        }
      }
      std::vector<std::uint64_t> counts;
      counts.reserve(mixture.size());
      for (const auto& [code, c] : mixture) counts.push_back(c);
      const std::uint64_t total = members.size() * result.noise_assignments;
      const long double p_class = static_cast<long double>(members.size()) /
                                  static_cast<long double>(assignments.size());
      mi += p_adv * p_class * (entropy_bits(counts, total) - noise_entropy);
    }

    std::size_t pos = 0;
    for (; pos < adv_digits.size(); ++pos) {
      if (++adv_digits[pos] < adv_radix[pos]) break;
      adv_digits[pos] = 0;
    }
    if (pos == adv_digits.size()) break;
  }
  result.mutual_information_bits = result.exactly_zero ? 0.0L : mi;
  return result;
}

}  // namespace swiftagg

// Copyright 2026 The jacobi-codebooks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jcb/char_sums.hpp"

#include <cmath>
#include <map>
#include <string>

#include "jcb/errors.hpp"
#include "jcb/parallel.hpp"

namespace jcb {
namespace {

constexpr std::uint64_t kMaxDefiningSetEntries = std::uint64_t{1} << 28;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / base) throw CapacityError("cardinality overflows 64 bits");
    r *= base;
  }
  return r;
}

std::uint64_t group_product(std::uint32_t q, std::span<const std::uint32_t> ext_degrees) {
  std::uint64_t prod = 1;
  for (const auto d : ext_degrees) {
    const std::uint64_t g = checked_pow(q, d) - 1;
    if (g != 0 && prod > UINT64_MAX / g) throw CapacityError("cardinality overflows 64 bits");
    prod *= g;
  }
  return prod;
}

void check_exponents(const Tower& tower, std::span<const std::uint32_t> exponents) {
  if (exponents.size() != tower.k()) {
    throw UsageError("expected " + std::to_string(tower.k()) + " exponents, got " +
                     std::to_string(exponents.size()));
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] >= tower.level(i).field->group_order()) {
      throw UsageError("exponent t_" + std::to_string(i + 1) + " out of range");
    }
  }
}

void check_base_element(const Tower& tower, FieldElement a) {
  if (!tower.base().contains(a)) throw UsageError("a must be an element of the base field");
}

}  // namespace

DefiningSet::DefiningSet(Variant variant, FieldElement a, std::size_t k,
                         std::vector<std::uint32_t> coords)
    : variant_(variant), a_(a), k_(k), coords_(std::move(coords)) {
  if (k_ == 0 || coords_.size() % k_ != 0) throw UsageError("malformed defining set");
}

std::uint64_t hat_cardinality(std::uint32_t q, std::span<const std::uint32_t> ext_degrees) {
  std::uint64_t total = 0;
  for (const auto d : ext_degrees) total += d;
  if (total == 0) throw UsageError("extension degrees must be positive");
  return checked_pow(q, total - 1);
}

std::uint64_t tilde_cardinality(std::uint32_t q, std::span<const std::uint32_t> ext_degrees,
                                bool a_is_zero) {
  const auto prod = static_cast<std::int64_t>(group_product(q, ext_degrees));
  const bool k_even = ext_degrees.size() % 2 == 0;
  std::int64_t numerator;
  if (a_is_zero) {
    numerator = k_even ? prod + (q - 1) : prod - (q - 1);
  } else {
    numerator = k_even ? prod - 1 : prod + 1;
  }
  if (numerator < 0 || numerator % q != 0) throw InternalError("|S~| closed form is not integral");
  return static_cast<std::uint64_t>(numerator / q);
}

DefiningSet enumerate_defining_set(const Tower& tower, Variant variant, FieldElement a) {
  check_base_element(tower, a);
  if (variant == Variant::kHat && a.is_zero()) {
    throw UsageError("the hat defining set requires a nonzero a");
  }
  const std::size_t k = tower.k();
  const std::uint64_t expected =
      variant == Variant::kHat ? hat_cardinality(tower.q(), tower.ext_degrees())
                               : tilde_cardinality(tower.q(), tower.ext_degrees(), a.is_zero());
  if (expected > kMaxDefiningSetEntries / k) {
    throw CapacityError("defining set with " + std::to_string(expected) + " tuples is too large");
  }
  const bool skip_zero = variant == Variant::kTilde;
  const FiniteField& base = tower.base();

  std::vector<std::uint32_t> coords;
  coords.reserve(expected * k);
  std::vector<std::uint32_t> prefix(k, 0);
  std::vector<std::uint32_t> partial(k, 0);  // trace sum of prefix[0..i)

  // Odometer over positions 0..k-2; the last position is read off a bucket.
  const std::uint32_t first = skip_zero ? 1 : 0;
  for (std::size_t i = 0; i + 1 < k; ++i) prefix[i] = first;
  auto refresh = [&](std::size_t from) {
    for (std::size_t i = from; i + 1 < k; ++i) {
      partial[i + 1] = base.add_raw(partial[i], tower.level(i).trace[prefix[i]]);
    }
  };
  refresh(0);
  const std::uint32_t a_raw = a.encoding();
  while (true) {
    const std::uint32_t need = base.add_raw(a_raw, base.neg_raw(partial[k - 1]));
    for (const auto c : tower.level(k - 1).by_trace[need]) {
      if (skip_zero && c == 0) continue;
      coords.insert(coords.end(), prefix.begin(), prefix.end() - 1);
      coords.push_back(c);
    }
    // Advance the odometer.
    std::size_t pos = k - 1;
    while (pos > 0) {
      --pos;
      if (++prefix[pos] < tower.level(pos).field->order()) break;
      prefix[pos] = first;
      if (pos == 0) {
        pos = k;  // wrapped around
        break;
      }
    }
    if (pos == k || k == 1) break;
    refresh(pos);
  }

  if (coords.size() != expected * k) {
    throw InternalError("defining set has " + std::to_string(coords.size() / k) +
                        " tuples, closed form says " + std::to_string(expected));
  }
  return DefiningSet(variant, a, k, std::move(coords));
}

Complex gauss_sum(const MultiplicativeCharacter& psi, const AdditiveCharacter& chi) {
  if (psi.field().id() != chi.field().id()) throw UsageError("characters on different fields");
  const FiniteField& f = psi.field();
  Complex s{0.0, 0.0};
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    const auto e = f.element(x);
    s += psi(e) * chi(e);
  }
  return s;
}

Complex extended_gauss_sum(const MultiplicativeCharacter& psi, const AdditiveCharacter& chi) {
  const auto zero = psi.field().zero();
  return gauss_sum(psi, chi) + psi(zero) * chi(zero);
}

Complex classical_jacobi(std::span<const MultiplicativeCharacter> lams, FieldElement a) {
  if (lams.empty()) throw UsageError("Jacobi sum needs at least one character");
  const FiniteField& f = lams.front().field();
  for (const auto& l : lams) {
    if (l.field().id() != f.id()) throw UsageError("characters on different fields");
  }
  if (!f.contains(a)) throw UsageError("a must lie in the characters' field");
  const std::size_t k = lams.size();
  std::vector<std::uint32_t> c(k, 0);
  Complex s{0.0, 0.0};
  while (true) {
    std::uint32_t sum = 0;
    Complex term{1.0, 0.0};
    for (std::size_t i = 0; i + 1 < k; ++i) {
      sum = f.add_raw(sum, c[i]);
      term *= lams[i].eval_raw(c[i]);
    }
    term *= lams[k - 1].eval_raw(f.add_raw(a.encoding(), f.neg_raw(sum)));
    s += term;
    std::size_t pos = k - 1;
    while (pos > 0 && ++c[pos - 1] == f.order()) c[--pos] = 0;
    if (pos == 0) break;
  }
  return s;
}

Complex character_sum(const Tower& tower, std::span<const std::uint32_t> exponents,
                      const DefiningSet& set) {
  check_exponents(tower, exponents);
  if (set.k() != tower.k()) throw UsageError("defining set does not match the tower");
  std::vector<MultiplicativeCharacter> chars;
  chars.reserve(tower.k());
  for (std::size_t i = 0; i < tower.k(); ++i) chars.push_back(tower.character(i, exponents[i]));
  Complex s{0.0, 0.0};
  for (std::size_t r = 0; r < set.size(); ++r) {
    const auto tuple = set.tuple(r);
    Complex term = chars[0].eval_raw(tuple[0]);
    for (std::size_t i = 1; i < tuple.size(); ++i) term *= chars[i].eval_raw(tuple[i]);
    s += term;
  }
  return s;
}

Complex generalized_jacobi(const Tower& tower, std::span<const std::uint32_t> exponents,
                           FieldElement a) {
  check_base_element(tower, a);
  if (a.is_zero()) throw UsageError("generalized Jacobi sums are defined for nonzero a only");
  check_exponents(tower, exponents);
  return character_sum(tower, exponents, enumerate_defining_set(tower, Variant::kHat, a));
}

Complex related_jacobi(const Tower& tower, std::span<const std::uint32_t> exponents,
                       FieldElement a) {
  check_exponents(tower, exponents);
  return character_sum(tower, exponents, enumerate_defining_set(tower, Variant::kTilde, a));
}

std::string to_string(SumCase c) {
  switch (c) {
    case SumCase::kAllTrivial: return "all-trivial";
    case SumCase::kMixedVanishes: return "mixed-vanishes";
    case SumCase::kPartialSumZero: return "partial-sum-zero";
    case SumCase::kPartialSumNonzero: return "partial-sum-nonzero";
    case SumCase::kAllNontrivialSumZero: return "nontrivial-sum-zero";
    case SumCase::kAllNontrivialSumNonzero: return "nontrivial-sum-nonzero";
  }
  return "unknown";
}

Prediction predicted_magnitude(const Tower& tower, std::span<const std::uint32_t> exponents,
                               Variant variant) {
  check_exponents(tower, exponents);
  const double q = tower.q();
  const std::uint64_t qm1 = tower.q() - 1;
  std::size_t h = 0;
  std::uint32_t active_degrees = 0;
  std::uint64_t active_sum = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    ++h;
    active_degrees += tower.ext_degrees()[i];
    active_sum = (active_sum + exponents[i]) % qm1;
  }
  const std::size_t k = tower.k();
  if (h == 0) {
    const auto size = variant == Variant::kHat
                          ? hat_cardinality(tower.q(), tower.ext_degrees())
                          : tilde_cardinality(tower.q(), tower.ext_degrees(), false);
    return {static_cast<double>(size), SumCase::kAllTrivial};
  }
  const bool zero_sum = active_sum == 0;
  const double even = std::pow(q, (static_cast<double>(active_degrees) - 2.0) / 2.0);
  const double odd = std::pow(q, (static_cast<double>(active_degrees) - 1.0) / 2.0);
  if (h == k) {
    return zero_sum ? Prediction{even, SumCase::kAllNontrivialSumZero}
                    : Prediction{odd, SumCase::kAllNontrivialSumNonzero};
  }
  if (variant == Variant::kHat) return {0.0, SumCase::kMixedVanishes};
  return zero_sum ? Prediction{even, SumCase::kPartialSumZero}
                  : Prediction{odd, SumCase::kPartialSumNonzero};
}

VerifyResult verify_all(const Tower& tower, FieldElement a, const VerifyOptions& options) {
  check_base_element(tower, a);
  const bool nonzero_a = !a.is_zero();
  const std::uint64_t tuples = tower.tuple_count();
  const std::uint64_t per_tuple =
      (nonzero_a ? hat_cardinality(tower.q(), tower.ext_degrees()) : 0) +
      tilde_cardinality(tower.q(), tower.ext_degrees(), !nonzero_a);
  if (per_tuple != 0 && tuples > options.budget / per_tuple) {
    throw CapacityError("verification needs " + std::to_string(tuples) + " x " +
                        std::to_string(per_tuple) + " character products, budget is " +
                        std::to_string(options.budget));
  }

  std::optional<DefiningSet> hat_set;
  if (nonzero_a) hat_set = enumerate_defining_set(tower, Variant::kHat, a);
  const DefiningSet tilde_set = enumerate_defining_set(tower, Variant::kTilde, a);

  // Hat sets over every proper nonempty subset of positions, for the relation
  // between the two sums on mixed tuples.
  const std::size_t k = tower.k();
  struct Restricted {
    Tower tower;
    DefiningSet set;
  };
  std::map<std::uint64_t, Restricted> restricted;
  if (nonzero_a && k >= 2 && k < 20) {
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      std::vector<std::size_t> positions;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) positions.push_back(i);
      }
      Tower sub = tower.restrict_to(positions);
      DefiningSet set = enumerate_defining_set(sub, Variant::kHat, a);
      restricted.emplace(mask, Restricted{std::move(sub), std::move(set)});
    }
  }

  VerifyResult result;
  result.reports.resize(tuples);
  const double tol = options.tolerance;
  auto judge = [tol](SumCheck& c) {
    c.deviation = std::abs(std::abs(c.value) - c.predicted);
    c.pass = !c.judged || c.deviation <= tol;
  };

  parallel_chunks(tuples, 4 * worker_count(), [&](std::size_t, std::size_t begin,
                                                  std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      CharSumReport& rep = result.reports[idx];
      rep.exponents = tower.exponents_at(idx);
      rep.a = a;

      const Prediction tp = predicted_magnitude(tower, rep.exponents, Variant::kTilde);
      rep.tilde.value = character_sum(tower, rep.exponents, tilde_set);
      rep.tilde.predicted = tp.magnitude;
      rep.tilde.label = tp.label;
      rep.tilde.judged = nonzero_a;
      judge(rep.tilde);

      if (nonzero_a) {
        SumCheck hat;
        const Prediction hp = predicted_magnitude(tower, rep.exponents, Variant::kHat);
        hat.value = character_sum(tower, rep.exponents, *hat_set);
        hat.predicted = hp.magnitude;
        hat.label = hp.label;
        judge(hat);
        rep.hat = hat;

        std::uint64_t mask = 0;
        std::vector<std::uint32_t> active;
        for (std::size_t i = 0; i < k; ++i) {
          if (rep.exponents[i] != 0) {
            mask |= std::uint64_t{1} << i;
            active.push_back(rep.exponents[i]);
          }
        }
        const std::size_t h = active.size();
        if (h == k) {
          rep.relation_deviation = std::abs(rep.tilde.value - hat.value);
        } else if (h > 0) {
          const auto it = restricted.find(mask);
          if (it == restricted.end()) throw CapacityError("too many positions for relation check");
          const Complex partial = character_sum(it->second.tower, active, it->second.set);
          const double sign = (k - h) % 2 == 0 ? 1.0 : -1.0;
          rep.relation_deviation = std::abs(rep.tilde.value - sign * partial);
        }
        if (rep.relation_deviation) rep.relation_pass = *rep.relation_deviation <= tol;
      }
      rep.pass = rep.tilde.pass && (!rep.hat || rep.hat->pass) && rep.relation_pass;
    }
  });

  for (const auto& rep : result.reports) result.passed += rep.pass ? 1 : 0;
  return result;
}

}  // namespace jcb

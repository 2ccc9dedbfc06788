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

#include <numeric>
#include <string>
#include <vector>

#include "jcb/char_sums.hpp"
#include "jcb/errors.hpp"

namespace jcb {
namespace {

// Primitive elements of ext whose (Q-1)/(q-1)-th power is the embedded base
// generator, in increasing encoding order; returns the one at rank modulo
// their count.
std::uint32_t compatible_generator(const SubfieldEmbedding& emb, std::uint32_t rank) {
  const FiniteField& ext = emb.ext();
  const std::uint64_t big = ext.group_order();
  const std::uint64_t stride = big / emb.base().group_order();
  const std::uint64_t target = ext.log(emb.image_of_base_generator());
  const auto log = ext.log_table();
  std::vector<std::uint32_t> found;
  for (std::uint32_t x = 1; x < ext.order(); ++x) {
    const std::uint64_t j = log[x];
    if (std::gcd(j, big) != 1 || j * stride % big != target) continue;
    found.push_back(x);
    if (found.size() > rank) return x;
  }
  if (found.empty()) throw InternalError("no compatible extension generator");
  return found[rank % found.size()];
}

void check_character_compatibility(const SubfieldEmbedding& emb) {
  const FiniteField& base = emb.base();
  const FiniteField& ext = emb.ext();
  const std::uint64_t big = ext.group_order();
  const std::uint64_t stride = big / base.group_order();
  for (std::uint64_t k = 0; k < base.group_order(); ++k) {
    const std::uint32_t image = emb.map_raw(base.exp_table()[k]);
    if (ext.log_table()[image] != k * stride % big) {
      throw InternalError("extension character does not restrict to the base character");
    }
  }
}

}  // namespace

Tower Tower::build(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> ext_degrees,
                   TowerOptions options) {
  if (ext_degrees.empty()) throw UsageError("at least one extension degree is required");
  for (const auto d : ext_degrees) {
    if (d == 0) throw UsageError("extension degrees must be positive");
  }
  Tower tower;
  tower.base_ = construct_field(p, m);
  if (options.base_generator_power != 1) {
    const std::uint64_t g = tower.base_->group_order();
    if (std::gcd<std::uint64_t>(options.base_generator_power, g) != 1) {
      throw UsageError("base generator power must be a unit mod q - 1");
    }
    tower.base_ = construct_field_with_generator(
        p, m, tower.base_->exp(options.base_generator_power).encoding());
  }
  const FiniteField& base = *tower.base_;
  tower.degrees_ = std::move(ext_degrees);

  for (const auto d : tower.degrees_) {
    if (std::uint64_t{m} * d > 64) throw CapacityError("extension degree too large");
    FieldPtr ext = construct_field(p, m * d);
    const auto probe = build_embedding(tower.base_, ext);
    const std::uint32_t gen = compatible_generator(probe, options.ext_generator_rank);
    if (gen != ext->generator().encoding()) ext = construct_field_with_generator(p, m * d, gen);

    auto emb = build_embedding(tower.base_, ext);
    check_character_compatibility(emb);

    std::vector<std::uint32_t> trace(ext->order());
    std::vector<std::vector<std::uint32_t>> by_trace(base.order());
    for (std::uint32_t x = 0; x < ext->order(); ++x) {
      trace[x] = relative_trace_raw(emb, x);
      by_trace[trace[x]].push_back(x);
    }
    tower.levels_.push_back(std::make_shared<const TowerLevel>(
        TowerLevel{d, std::move(ext), std::move(emb), std::move(trace), std::move(by_trace)}));
  }
  return tower;
}

std::uint32_t Tower::degree_sum() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), 0u);
}

std::uint64_t Tower::tuple_count() const {
  std::uint64_t n = 1;
  for (const auto& level : levels_) {
    const std::uint64_t g = level->field->group_order();
    if (n > UINT64_MAX / g) throw CapacityError("exponent tuple count overflows");
    n *= g;
  }
  return n;
}

std::vector<std::uint32_t> Tower::exponents_at(std::uint64_t index) const {
  std::vector<std::uint32_t> t(levels_.size());
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const std::uint64_t g = levels_[i]->field->group_order();
    t[i] = static_cast<std::uint32_t>(index % g);
    index /= g;
  }
  if (index != 0) throw UsageError("exponent tuple index out of range");
  return t;
}

MultiplicativeCharacter Tower::character(std::size_t level, std::uint64_t exponent) const {
  return {levels_.at(level)->field, exponent};
}

Tower Tower::restrict_to(std::span<const std::size_t> positions) const {
  if (positions.empty()) throw UsageError("restriction needs at least one position");
  Tower sub;
  sub.base_ = base_;
  for (const auto i : positions) {
    sub.degrees_.push_back(degrees_.at(i));
    sub.levels_.push_back(levels_.at(i));
  }
  return sub;
}

std::string to_string(Variant v) { return v == Variant::kHat ? "hat" : "tilde"; }

}  // namespace jcb

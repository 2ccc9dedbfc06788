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

#include "jcb/characters.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "jcb/errors.hpp"

namespace jcb {

std::shared_ptr<const std::vector<Complex>> unit_roots(std::uint32_t order) {
  if (order == 0) throw UsageError("root of unity order must be positive");
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const std::vector<Complex>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) {
    std::vector<Complex> roots(order);
    for (std::uint32_t j = 0; j < order; ++j) {
      const std::uint64_t quarter = std::uint64_t{4} * j;
      if (quarter % order == 0) {
        static constexpr Complex kQuarterTurns[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        roots[j] = kQuarterTurns[quarter / order];
      } else {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / order;
        roots[j] = {std::cos(angle), std::sin(angle)};
      }
    }
    slot = std::make_shared<const std::vector<Complex>>(std::move(roots));
  }
  return slot;
}

MultiplicativeCharacter::MultiplicativeCharacter(FieldPtr field, std::uint64_t exponent)
    : field_(std::move(field)),
      t_(static_cast<std::uint32_t>(exponent % field_->group_order())),
      roots_(unit_roots(field_->group_order())) {}

Complex MultiplicativeCharacter::operator()(FieldElement x) const {
  if (!field_->contains(x)) throw UsageError("character evaluated outside its field");
  return eval_raw(x.encoding());
}

MultiplicativeCharacter MultiplicativeCharacter::operator*(
    const MultiplicativeCharacter& other) const {
  if (field_->id() != other.field_->id()) {
    throw UsageError("characters belong to different fields");
  }
  return {field_, std::uint64_t{t_} + other.t_};
}

MultiplicativeCharacter MultiplicativeCharacter::conjugate() const {
  const std::uint32_t g = field_->group_order();
  return {field_, (g - t_) % g};
}

AdditiveCharacter::AdditiveCharacter(FieldPtr field, FieldElement a)
    : field_(std::move(field)), a_(a), roots_(unit_roots(field_->characteristic())) {
  if (!field_->contains(a_)) throw UsageError("additive character parameter outside its field");
}

Complex AdditiveCharacter::operator()(FieldElement x) const {
  if (!field_->contains(x)) throw UsageError("character evaluated outside its field");
  return (*roots_)[field_->absolute_trace(field_->mul(a_, x))];
}

}  // namespace jcb

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

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "jcb/finite_field.hpp"

namespace jcb {

using Complex = std::complex<double>;

// zeta_h^j = exp(2 pi i j / h) for j in [0, h). Tables are built once per
// order and shared; quarter turns are exact.
std::shared_ptr<const std::vector<Complex>> unit_roots(std::uint32_t order);

/// Multiplicative character psi_t: generator^k -> zeta_{|F|-1}^{t k}, extended
/// to zero by psi_0(0) = 1 and psi_t(0) = 0 for t != 0.
class MultiplicativeCharacter {
 public:
  MultiplicativeCharacter(FieldPtr field, std::uint64_t exponent);

  const FiniteField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t exponent() const { return t_; }
  bool is_trivial() const { return t_ == 0; }

  Complex operator()(FieldElement x) const;
  // x is an encoding of an element of field(); no ownership check.
  Complex eval_raw(std::uint32_t x) const {
    if (x == 0) return t_ == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    const std::uint64_t k = field_->log_table()[x];
    return (*roots_)[k * t_ % field_->group_order()];
  }

  // Product in the character group; operands must share a field.
  MultiplicativeCharacter operator*(const MultiplicativeCharacter& other) const;
  MultiplicativeCharacter conjugate() const;

  friend bool operator==(const MultiplicativeCharacter& a, const MultiplicativeCharacter& b) {
    return a.field_->id() == b.field_->id() && a.t_ == b.t_;
  }

 private:
  FieldPtr field_;
  std::uint32_t t_;
  std::shared_ptr<const std::vector<Complex>> roots_;
};

inline MultiplicativeCharacter conjugate(const MultiplicativeCharacter& chi) {
  return chi.conjugate();
}

/// Additive character chi_a(x) = zeta_p^{Tr(a x)}.
class AdditiveCharacter {
 public:
  AdditiveCharacter(FieldPtr field, FieldElement a);

  const FiniteField& field() const { return *field_; }
  FieldElement parameter() const { return a_; }
  bool is_trivial() const { return a_.is_zero(); }

  Complex operator()(FieldElement x) const;

 private:
  FieldPtr field_;
  FieldElement a_;
  std::shared_ptr<const std::vector<Complex>> roots_;
};

}  // namespace jcb

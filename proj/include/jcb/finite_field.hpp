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

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

/**
 * Table-driven arithmetic in GF(p^n).
 *
 * Elements are identified by the base-p integer encoding of their coefficient
 * vector (constant term least significant). The encoding is also the total
 * order used for every deterministic choice in the library: the modulus is the
 * smallest monic irreducible, the generator the smallest primitive element and
 * subfield embeddings use the smallest root.
 *
 * Fields are immutable once built and are handed around as
 * std::shared_ptr<const FiniteField>; all member functions are safe to call
 * concurrently.
 */
namespace jcb {

// Coefficients over F_p, constant term first.
using Polynomial = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

// Returns (p, m) with q = p^m, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Monic irreducible polynomial of degree n over F_p whose lower coefficients
// encode the smallest base-p integer. The result has n + 1 entries.
Polynomial find_irreducible(std::uint32_t p, std::uint32_t n);

class FieldElement {
 public:
  FieldElement() = default;

  std::uint32_t encoding() const { return value_; }
  std::uint64_t field_id() const { return field_id_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;

 private:
  friend class FiniteField;
  FieldElement(std::uint64_t field_id, std::uint32_t value) : field_id_(field_id), value_(value) {}

  std::uint64_t field_id_ = 0;
  std::uint32_t value_ = 0;
};

class FiniteField {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

  // Use construct_field / construct_field_with_generator.
  FiniteField(std::uint32_t p, std::uint32_t n, Polynomial modulus,
              std::optional<std::uint32_t> generator_encoding);

  FiniteField(const FiniteField&) = delete;
  FiniteField& operator=(const FiniteField&) = delete;

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint32_t order() const { return order_; }
  // Order of the multiplicative group.
  std::uint32_t group_order() const { return order_ - 1; }
  const Polynomial& modulus() const { return modulus_; }
  std::uint64_t id() const { return id_; }

  FieldElement zero() const { return {id_, 0}; }
  FieldElement one() const { return {id_, 1}; }
  FieldElement generator() const { return {id_, exp_[order_ > 2 ? 1 : 0]}; }

  // Element with the given base-p encoding; throws UsageError when out of range.
  FieldElement element(std::uint32_t encoding) const;
  FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;
  // Length-n coefficient vector, constant term first.
  Polynomial coefficients(FieldElement x) const;
  bool contains(FieldElement x) const { return x.field_id() == id_; }

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement sub(FieldElement x, FieldElement y) const;
  FieldElement neg(FieldElement x) const;
  FieldElement mul(FieldElement x, FieldElement y) const;
  // Throws std::domain_error on zero.
  FieldElement inv(FieldElement x) const;
  // Any integer exponent; reduced mod (order - 1) for nonzero x. 0^0 = 1.
  FieldElement pow(FieldElement x, std::int64_t e) const;

  // Discrete log to the field generator, in [0, order - 2]. x must be nonzero.
  std::uint32_t log(FieldElement x) const;
  FieldElement exp(std::uint64_t k) const { return {id_, exp_[k % (order_ - 1)]}; }

  // Tr_{p^n/p}(x) as a residue in [0, p).
  std::uint32_t absolute_trace(FieldElement x) const;

  // Raw tables indexed by encoding / exponent. log_table()[0] is unused.
  std::span<const std::uint32_t> exp_table() const { return exp_; }
  std::span<const std::uint32_t> log_table() const { return log_; }

  // Encoding-level primitives for hot loops. Callers guarantee the encodings
  // belong to this field.
  std::uint32_t add_raw(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg_raw(std::uint32_t x) const;
  std::uint32_t mul_raw(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t frobenius_raw(std::uint32_t x, std::uint64_t power_of_p) const;

 private:
  void check(FieldElement x) const;
  void check(FieldElement x, FieldElement y) const;

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t order_;
  Polynomial modulus_;
  std::uint64_t id_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// GF(p^n) with the smallest irreducible modulus and smallest primitive element.
// Throws UsageError for non-prime p or n == 0, CapacityError when p^n > 2^24.
FieldPtr construct_field(std::uint32_t p, std::uint32_t n);

// Same modulus as construct_field(p, n) but with a caller-chosen primitive
// element. Throws UsageError if that element does not have full order.
FieldPtr construct_field_with_generator(std::uint32_t p, std::uint32_t n,
                                       std::uint32_t generator_encoding);

inline std::uint32_t absolute_trace(const FiniteField& field, FieldElement x) {
  return field.absolute_trace(x);
}

// Identification of GF(p^m) with a subfield of GF(p^{m d}). The indeterminate
// of the base field is sent to the smallest root of the base modulus in the
// extension; everything else follows by linearity.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr base, FieldPtr ext, std::uint32_t root_encoding);

  const FiniteField& base() const { return *base_; }
  const FiniteField& ext() const { return *ext_; }
  const FieldPtr& base_ptr() const { return base_; }
  const FieldPtr& ext_ptr() const { return ext_; }
  // [ext : base]
  std::uint32_t relative_degree() const { return ext_->degree() / base_->degree(); }

  // Image of the class of the indeterminate; a root of base().modulus().
  FieldElement root() const { return ext_->element(root_); }
  FieldElement image_of_base_generator() const { return map(base_->generator()); }

  FieldElement map(FieldElement x) const;
  std::uint32_t map_raw(std::uint32_t x) const { return image_[x]; }
  // Inverse image of an ext element, if it lies in the embedded subfield.
  std::optional<FieldElement> pullback(FieldElement y) const;
  std::optional<std::uint32_t> pullback_raw(std::uint32_t y) const;

 private:
  FieldPtr base_;
  FieldPtr ext_;
  std::uint32_t root_;
  std::vector<std::uint32_t> image_;     // base encoding -> ext encoding
  std::uint32_t stride_;                 // (|ext|-1)/(|base|-1)
  std::vector<std::uint32_t> pull_;      // ext log / stride -> base encoding
};

// Throws UsageError unless the degrees divide and characteristics agree.
SubfieldEmbedding build_embedding(FieldPtr base, FieldPtr ext);

// Tr_{Q/q}(x) = sum_{j < d} x^{q^j}, returned as an element of emb.base().
FieldElement relative_trace(const SubfieldEmbedding& emb, FieldElement x);

// Same computation on encodings; returns the base encoding.
std::uint32_t relative_trace_raw(const SubfieldEmbedding& emb, std::uint32_t x);

}  // namespace jcb

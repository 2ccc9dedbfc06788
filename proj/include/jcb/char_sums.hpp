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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jcb/characters.hpp"
#include "jcb/finite_field.hpp"

namespace jcb {

struct TowerOptions {
  // The base field uses generator^power as its primitive element; must be a
  // unit mod q - 1.
  std::uint32_t base_generator_power = 1;
  // Each extension uses the rank-th smallest compatible primitive element,
  // wrapping around when a level has fewer than rank + 1 of them.
  std::uint32_t ext_generator_rank = 0;
};

struct TowerLevel {
  std::uint32_t degree;  // m_i = [F_{q^{m_i}} : F_q]
  FieldPtr field;
  SubfieldEmbedding embedding;
  std::vector<std::uint32_t> trace;                 // element -> base encoding of Tr
  std::vector<std::vector<std::uint32_t>> by_trace;  // base encoding -> sorted preimages
};

/**
 * The canonical F_q = GF(p^m) together with extensions F_{q^{m_1}}, ...,
 * F_{q^{m_k}}, each carrying an embedding of F_q and a relative trace table.
 *
 * Extension generators are chosen so that their canonical characters restrict
 * to the canonical character of F_q: generator_i^{(q^{m_i}-1)/(q-1)} equals
 * the embedded base generator. Construction verifies this on every element of
 * F_q^* and throws InternalError otherwise.
 */
class Tower {
 public:
  static Tower build(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> ext_degrees,
                     TowerOptions options = {});

  std::uint32_t p() const { return base_->characteristic(); }
  std::uint32_t m() const { return base_->degree(); }
  std::uint32_t q() const { return base_->order(); }
  std::size_t k() const { return levels_.size(); }
  const std::vector<std::uint32_t>& ext_degrees() const { return degrees_; }
  std::uint32_t degree_sum() const;

  const FiniteField& base() const { return *base_; }
  const FieldPtr& base_ptr() const { return base_; }
  const TowerLevel& level(std::size_t i) const { return *levels_.at(i); }

  // Number of exponent tuples, prod (q^{m_i} - 1).
  std::uint64_t tuple_count() const;
  // Mixed-radix decoding with t_1 most significant.
  std::vector<std::uint32_t> exponents_at(std::uint64_t index) const;
  MultiplicativeCharacter character(std::size_t level, std::uint64_t exponent) const;

  // Tower over the listed positions only, sharing fields and tables.
  Tower restrict_to(std::span<const std::size_t> positions) const;

 private:
  Tower() = default;
  FieldPtr base_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::shared_ptr<const TowerLevel>> levels_;
};

enum class Variant { kHat, kTilde };

std::string to_string(Variant v);

class DefiningSet {
 public:
  DefiningSet(Variant variant, FieldElement a, std::size_t k, std::vector<std::uint32_t> coords);

  Variant variant() const { return variant_; }
  FieldElement a() const { return a_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return k_ == 0 ? 0 : coords_.size() / k_; }
  // Encodings (c_1, ..., c_k) of the i-th tuple.
  std::span<const std::uint32_t> tuple(std::size_t i) const {
    return {coords_.data() + i * k_, k_};
  }

 private:
  Variant variant_;
  FieldElement a_;
  std::size_t k_;
  std::vector<std::uint32_t> coords_;
};

// |S^| = q^{sum m_i - 1}.
std::uint64_t hat_cardinality(std::uint32_t q, std::span<const std::uint32_t> ext_degrees);
// |S~| for a != 0 or a == 0.
std::uint64_t tilde_cardinality(std::uint32_t q, std::span<const std::uint32_t> ext_degrees,
                                bool a_is_zero);

// Tuples in lexicographic order of encodings, c_1 most significant. The size
// is checked against the closed forms above.
DefiningSet enumerate_defining_set(const Tower& tower, Variant variant, FieldElement a);

Complex gauss_sum(const MultiplicativeCharacter& psi, const AdditiveCharacter& chi);
Complex extended_gauss_sum(const MultiplicativeCharacter& psi, const AdditiveCharacter& chi);
// J_a(lambda_1, ..., lambda_k) over all tuples of F_q with c_1 + ... + c_k = a.
Complex classical_jacobi(std::span<const MultiplicativeCharacter> lams, FieldElement a);

// sum over S of prod_i lambda_i(c_i), lambda_i = character(i, exponents[i]).
Complex character_sum(const Tower& tower, std::span<const std::uint32_t> exponents,
                      const DefiningSet& set);
// Generalized Jacobi sum over S^; a must be nonzero.
Complex generalized_jacobi(const Tower& tower, std::span<const std::uint32_t> exponents,
                           FieldElement a);
// Related sum over S~; any a.
Complex related_jacobi(const Tower& tower, std::span<const std::uint32_t> exponents,
                       FieldElement a);

enum class SumCase {
  kAllTrivial,
  kMixedVanishes,          // S^ only: some but not all trivial
  kPartialSumZero,         // S~ only: 1 <= h < k nontrivial, sum over them = 0 mod q-1
  kPartialSumNonzero,
  kAllNontrivialSumZero,
  kAllNontrivialSumNonzero,
};

std::string to_string(SumCase c);

struct Prediction {
  double magnitude;
  SumCase label;
};

// Closed-form |sum| for a != 0.
Prediction predicted_magnitude(const Tower& tower, std::span<const std::uint32_t> exponents,
                               Variant variant);

struct SumCheck {
  Complex value;
  double predicted = 0.0;
  SumCase label = SumCase::kAllTrivial;
  bool judged = true;  // false when no theorem covers the case (a = 0)
  double deviation = 0.0;
  bool pass = true;
};

struct CharSumReport {
  std::vector<std::uint32_t> exponents;
  FieldElement a;
  std::optional<SumCheck> hat;  // absent for a = 0
  SumCheck tilde;
  // |J~ - (-1)^{k-h} J^(nontrivial part)|; absent when no relation applies.
  std::optional<double> relation_deviation;
  bool relation_pass = true;
  bool pass = true;
};

struct VerifyOptions {
  double tolerance = 1e-9;
  // Limit on tuple_count * (|S^| + |S~|) character products.
  std::uint64_t budget = 1'000'000'000;
};

struct VerifyResult {
  std::vector<CharSumReport> reports;
  std::size_t passed = 0;
  bool all_pass() const { return passed == reports.size(); }
};

// Brute-force evaluation of both sums for every exponent tuple, judged against
// the magnitude theorems and the relation between them.
VerifyResult verify_all(const Tower& tower, FieldElement a, const VerifyOptions& options = {});

}  // namespace jcb

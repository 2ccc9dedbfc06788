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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jcb/char_sums.hpp"

namespace jcb {

struct CodebookProvenance {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::vector<std::uint32_t> ext_degrees;
  Variant variant = Variant::kHat;
  std::uint32_t a_log = 0;  // a = generator^a_log in F_q
};

/// N unit-norm rows of length K, stored row-major.
class Codebook {
 public:
  Codebook(std::size_t rows, std::size_t cols, std::vector<Complex> data,
           std::optional<CodebookProvenance> provenance = std::nullopt);

  std::size_t size() const { return rows_; }       // N
  std::size_t dimension() const { return cols_; }  // K
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Complex>& data() const { return data_; }
  const std::optional<CodebookProvenance>& provenance() const { return provenance_; }

  // Set when the construction is outside the hypotheses of its I_max theorem.
  std::vector<std::string> warnings;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
  std::optional<CodebookProvenance> provenance_;
};

// (lambda_1(c_1) ... lambda_k(c_k))_{c in S}, divided by the square root of its
// squared norm (the number of nonzero entries).
std::vector<Complex> build_codeword(const Tower& tower, std::span<const std::uint32_t> exponents,
                                    const DefiningSet& set);

inline constexpr std::uint64_t kDefaultMaxCodebookEntries = std::uint64_t{1} << 25;

// Character rows for every exponent tuple (t_1 outermost), then E_K.
Codebook build_codebook(const Tower& tower, Variant variant, FieldElement a,
                        std::uint64_t max_entries = kDefaultMaxCodebookEntries);

struct CoherenceResult {
  double imax = 0.0;
  std::size_t i = 0;  // argmax pair, smallest (i, j) on ties
  std::size_t j = 0;
};

// sum_k x_k conj(y_k)
Complex inner_product(std::span<const Complex> x, std::span<const Complex> y);

// Exhaustive max_{i<j} |<c_i, c_j>|. Requires N >= 2.
CoherenceResult compute_imax(const Codebook& cb);

// Complex multiply-adds performed by compute_imax.
std::uint64_t imax_scan_cost(std::uint64_t n, std::uint64_t k);

double welch_bound(std::uint64_t n, std::uint64_t k);
// nullopt unless N > K^2 (complex) or N > K(K+1)/2 (real).
std::optional<double> levenshtein_bound(std::uint64_t n, std::uint64_t k, bool real_valued);

// Closed-form (N, K) of the construction.
std::pair<std::uint64_t, std::uint64_t> codebook_shape(std::uint32_t q,
                                                       std::span<const std::uint32_t> ext_degrees,
                                                       Variant variant);

// q^{(sum m_i + 1)/2} / (prod (q^{m_i} - 1) + (-1)^{k+1}). Throws UsageError for
// the hat construction with q < 4, where the formula is not established.
double predicted_imax(std::uint32_t q, std::span<const std::uint32_t> ext_degrees, Variant variant);

enum class Classification { kNearOptimalWelch, kNearOptimalLevenshtein, kUnclassified };

std::string to_string(Classification c);

// Bound with respect to which the family is nearly optimal.
Classification designated_bound(std::uint32_t q, std::span<const std::uint32_t> ext_degrees,
                                Variant variant);

struct ClassifyInput {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> ext_degrees;
  Variant variant = Variant::kHat;
  std::optional<double> measured_imax;
  std::optional<double> predicted_imax;
};

struct CodebookReport {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::optional<double> measured_imax;
  std::optional<double> predicted_imax;
  double welch = 0.0;
  std::optional<double> levenshtein;       // complex-valued bound
  std::optional<double> levenshtein_real;  // real-valued bound
  double ratio_welch = 0.0;                // I_W / I_max
  std::optional<double> ratio_levenshtein;
  Classification classification = Classification::kUnclassified;
  bool beyond_complex_threshold = false;  // N > K^2
  bool beyond_real_threshold = false;     // N > K(K+1)/2

  // Measured when available, else predicted.
  double imax() const { return measured_imax ? *measured_imax : predicted_imax.value(); }
};

CodebookReport classify(const ClassifyInput& in);

}  // namespace jcb

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

#include "jcb/codebook.hpp"

#include <cmath>
#include <string>

#include "jcb/errors.hpp"
#include "jcb/parallel.hpp"

namespace jcb {

Codebook::Codebook(std::size_t rows, std::size_t cols, std::vector<Complex> data,
                   std::optional<CodebookProvenance> provenance)
    : rows_(rows), cols_(cols), data_(std::move(data)), provenance_(std::move(provenance)) {
  if (cols_ == 0 || data_.size() != rows_ * cols_) throw UsageError("codebook shape mismatch");
}

std::vector<Complex> build_codeword(const Tower& tower, std::span<const std::uint32_t> exponents,
                                    const DefiningSet& set) {
  if (set.size() == 0) throw UsageError("empty defining set");
  if (exponents.size() != tower.k() || set.k() != tower.k()) {
    throw UsageError("exponent tuple does not match the tower");
  }
  std::vector<MultiplicativeCharacter> chars;
  for (std::size_t i = 0; i < tower.k(); ++i) {
    if (exponents[i] >= tower.level(i).field->group_order()) {
      throw UsageError("exponent t_" + std::to_string(i + 1) + " out of range");
    }
    chars.push_back(tower.character(i, exponents[i]));
  }
  std::vector<Complex> word(set.size());
  std::size_t nonzero = 0;
  for (std::size_t r = 0; r < set.size(); ++r) {
    const auto tuple = set.tuple(r);
    Complex v = chars[0].eval_raw(tuple[0]);
    for (std::size_t i = 1; i < tuple.size(); ++i) v *= chars[i].eval_raw(tuple[i]);
    word[r] = v;
    if (v != Complex{0.0, 0.0}) ++nonzero;
  }
  if (nonzero == 0) throw InternalError("codeword has no nonzero entry");
  const double scale = 1.0 / std::sqrt(static_cast<double>(nonzero));
  for (auto& v : word) v *= scale;
  return word;
}

Codebook build_codebook(const Tower& tower, Variant variant, FieldElement a,
                        std::uint64_t max_entries) {
  if (!tower.base().contains(a) || a.is_zero()) {
    throw UsageError("a must be a nonzero element of the base field");
  }
  const auto [n, k] = codebook_shape(tower.q(), tower.ext_degrees(), variant);
  if (n > max_entries / k) {
    throw CapacityError("codebook with N*K = " + std::to_string(n) + "*" + std::to_string(k) +
                        " entries exceeds the limit of " + std::to_string(max_entries));
  }
  const DefiningSet set = enumerate_defining_set(tower, variant, a);
  if (set.size() != k) throw InternalError("defining set size disagrees with K");

  const std::uint64_t tuples = tower.tuple_count();
  std::vector<Complex> data(n * k, Complex{0.0, 0.0});
  parallel_chunks(tuples, 4 * worker_count(), [&](std::size_t, std::size_t begin,
                                                  std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto word = build_codeword(tower, tower.exponents_at(r), set);
      std::copy(word.begin(), word.end(), data.begin() + r * k);
    }
  });
  for (std::size_t i = 0; i < k; ++i) data[(tuples + i) * k + i] = Complex{1.0, 0.0};

  CodebookProvenance prov{tower.p(), tower.m(), tower.ext_degrees(), variant,
                          tower.base().log(a)};
  Codebook cb(n, k, std::move(data), std::move(prov));
  if (variant == Variant::kHat && tower.q() < 4) {
    cb.warnings.push_back("the hat construction's I_max formula assumes q >= 4");
  }
  return cb;
}

Complex inner_product(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw UsageError("inner product of vectors of different length");
  double re = 0.0, im = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double a = x[t].real(), b = x[t].imag();
    const double c = y[t].real(), d = y[t].imag();
    re += a * c + b * d;
    im += b * c - a * d;
  }
  return {re, im};
}

std::uint64_t imax_scan_cost(std::uint64_t n, std::uint64_t k) {
  return n < 2 ? 0 : n * (n - 1) / 2 * k;
}

CoherenceResult compute_imax(const Codebook& cb) {
  const std::size_t n = cb.size();
  if (n < 2) throw UsageError("I_max needs at least two codewords");

  const std::size_t chunks = std::min<std::size_t>(n - 1, 64 * worker_count());
  std::vector<CoherenceResult> best(chunks, CoherenceResult{-1.0, 0, 0});
  // Interleave rows over chunks so the triangular workload balances while the
  // per-pair arithmetic stays independent of the partition.
  parallel_chunks(chunks, chunks, [&](std::size_t c, std::size_t, std::size_t) {
    CoherenceResult& local = best[c];
    for (std::size_t i = c; i + 1 < n; i += chunks) {
      const auto ri = cb.row(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = std::abs(inner_product(ri, cb.row(j)));
        if (v > local.imax) local = {v, i, j};
      }
    }
  });
  CoherenceResult out = best[0];
  for (std::size_t c = 1; c < chunks; ++c) {
    const auto& b = best[c];
    if (b.imax > out.imax || (b.imax == out.imax && (b.i < out.i || (b.i == out.i && b.j < out.j)))) {
      out = b;
    }
  }
  const double mirrored = std::abs(inner_product(cb.row(out.j), cb.row(out.i)));
  if (mirrored != out.imax) throw InternalError("Gram matrix is not conjugate-symmetric");
  return out;
}

double welch_bound(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || n < k) throw UsageError("Welch bound requires N >= K >= 1");
  if (n < 2) throw UsageError("Welch bound requires N >= 2");
  const double N = static_cast<double>(n), K = static_cast<double>(k);
  return std::sqrt((N - K) / ((N - 1.0) * K));
}

std::optional<double> levenshtein_bound(std::uint64_t n, std::uint64_t k, bool real_valued) {
  if (k == 0) return std::nullopt;
  const double N = static_cast<double>(n), K = static_cast<double>(k);
  if (real_valued) {
    if (2 * n <= k * (k + 1)) return std::nullopt;
    return std::sqrt((3.0 * N - K * K - 2.0 * K) / ((N - K) * (K + 2.0)));
  }
  if (n <= k * k) return std::nullopt;
  return std::sqrt((2.0 * N - K * K - K) / ((N - K) * (K + 1.0)));
}

std::pair<std::uint64_t, std::uint64_t> codebook_shape(std::uint32_t q,
                                                       std::span<const std::uint32_t> ext_degrees,
                                                       Variant variant) {
  const std::uint64_t k = variant == Variant::kHat ? hat_cardinality(q, ext_degrees)
                                                   : tilde_cardinality(q, ext_degrees, false);
  std::uint64_t prod = 1;
  for (const auto d : ext_degrees) {
    std::uint64_t qd = 1;
    for (std::uint32_t i = 0; i < d; ++i) qd *= q;
    prod *= qd - 1;
  }
  return {prod + k, k};
}

double predicted_imax(std::uint32_t q, std::span<const std::uint32_t> ext_degrees,
                      Variant variant) {
  if (variant == Variant::kHat && q < 4) {
    throw UsageError("the I_max formula for the hat construction requires q >= 4, got q = " +
                     std::to_string(q));
  }
  std::uint32_t total = 0;
  long double prod = 1;
  for (const auto d : ext_degrees) {
    total += d;
    prod *= std::pow(static_cast<long double>(q), d) - 1;
  }
  const long double sign = ext_degrees.size() % 2 == 1 ? 1 : -1;
  const long double num = std::pow(static_cast<long double>(q), (total + 1.0L) / 2.0L);
  return static_cast<double>(num / (prod + sign));
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kNearOptimalWelch: return "near-optimal-welch";
    case Classification::kNearOptimalLevenshtein: return "near-optimal-levenshtein";
    case Classification::kUnclassified: return "unclassified";
  }
  return "unknown";
}

Classification designated_bound(std::uint32_t q, std::span<const std::uint32_t> ext_degrees,
                                 Variant variant) {
  const std::size_t k = ext_degrees.size();
  const bool single_quadratic = k == 1 && ext_degrees[0] == 2;
  if (variant == Variant::kHat) {
    if (q < 4 || (k == 1 && ext_degrees[0] == 1)) return Classification::kUnclassified;
    return single_quadratic ? Classification::kNearOptimalLevenshtein
                            : Classification::kNearOptimalWelch;
  }
  const bool two_linear = k == 2 && ext_degrees[0] == 1 && ext_degrees[1] == 1;
  return single_quadratic || two_linear ? Classification::kNearOptimalLevenshtein
                                        : Classification::kNearOptimalWelch;
}

CodebookReport classify(const ClassifyInput& in) {
  if (!in.measured_imax && !in.predicted_imax) {
    throw UsageError("classification needs a measured or predicted I_max");
  }
  CodebookReport r;
  r.n = in.n;
  r.k = in.k;
  r.measured_imax = in.measured_imax;
  r.predicted_imax = in.predicted_imax;
  r.welch = welch_bound(in.n, in.k);
  r.levenshtein = levenshtein_bound(in.n, in.k, false);
  r.levenshtein_real = levenshtein_bound(in.n, in.k, true);
  r.beyond_complex_threshold = in.n > in.k * in.k;
  r.beyond_real_threshold = 2 * in.n > in.k * (in.k + 1);
  const double imax = r.imax();
  r.ratio_welch = r.welch / imax;
  if (r.levenshtein) r.ratio_levenshtein = *r.levenshtein / imax;
  r.classification = designated_bound(in.q, in.ext_degrees, in.variant);
  return r;
}

}  // namespace jcb

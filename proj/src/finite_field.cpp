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

#include "jcb/finite_field.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include "jcb/errors.hpp"

namespace jcb {
namespace {

std::atomic<std::uint64_t> next_field_id{1};

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

// p^n, or nullopt once the value passes `limit`.
std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::uint32_t n, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (r > limit / p) return std::nullopt;
    r *= p;
  }
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

void trim(Polynomial& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// a mod f for monic f.
Polynomial poly_mod(Polynomial a, const Polynomial& f, std::uint32_t p) {
  const std::size_t df = f.size() - 1;
  trim(a);
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * f[i]) % p);
    }
    trim(a);
  }
  return a;
}

Polynomial poly_mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& f,
                       std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), f, p);
}

Polynomial poly_powmod(Polynomial base, std::uint64_t e, const Polynomial& f, std::uint32_t p) {
  Polynomial r{1};
  base = poly_mod(std::move(base), f, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
  }
  return r;
}

Polynomial poly_gcd(Polynomial a, Polynomial b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Make b monic, then reduce a by it.
    const std::uint64_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(c * li % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin-style test: no factor of degree <= n/2 iff gcd(x^{p^j} - x, f) = 1 for j <= n/2.
bool is_irreducible(const Polynomial& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return n == 1;
  Polynomial h{0, 1};
  for (std::size_t j = 1; j <= n / 2; ++j) {
    h = poly_powmod(h, p, f, p);
    Polynomial diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    const Polynomial g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Polynomial decode(std::uint64_t x, std::uint32_t p, std::uint32_t n) {
  Polynomial c(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    c[i] = static_cast<std::uint32_t>(x % p);
    x /= p;
  }
  return c;
}

std::uint32_t encode(const Polynomial& c, std::uint32_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * p + c[i];
  return static_cast<std::uint32_t>(r);
}

bool has_full_order(std::uint32_t candidate, const Polynomial& modulus, std::uint32_t p,
                    std::uint32_t n, std::uint64_t group_order) {
  if (candidate == 0) return false;
  const Polynomial g = decode(candidate, p, n);
  if (group_order == 1) return candidate == 1;
  for (const auto r : prime_factors(group_order)) {
    Polynomial t = poly_powmod(g, group_order / r, modulus, p);
    if (t == Polynomial{1}) return false;
  }
  return true;
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = prime_factors(q);
  if (factors.size() != 1 || factors[0] > UINT32_MAX) return std::nullopt;
  std::uint32_t m = 0;
  for (std::uint64_t r = q; r > 1; r /= factors[0]) ++m;
  return std::make_pair(static_cast<std::uint32_t>(factors[0]), m);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Polynomial find_irreducible(std::uint32_t p, std::uint32_t n) {
  require_prime(p);
  if (n == 0) throw UsageError("extension degree must be positive");
  const auto count = bounded_power(p, n, UINT64_MAX / p);
  if (!count) throw CapacityError("p^n overflows");
  for (std::uint64_t idx = 0; idx < *count; ++idx) {
    Polynomial f = decode(idx, p, n);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw InternalError("no irreducible polynomial of degree " + std::to_string(n));
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t n, Polynomial modulus,
                         std::optional<std::uint32_t> generator_encoding)
    : p_(p), n_(n), modulus_(std::move(modulus)), id_(next_field_id.fetch_add(1)) {
  order_ = static_cast<std::uint32_t>(pow_u64(p, n));
  const std::uint64_t group = order_ - 1;

  std::uint32_t g = 0;
  if (generator_encoding) {
    if (*generator_encoding >= order_ ||
        !has_full_order(*generator_encoding, modulus_, p_, n_, group)) {
      throw UsageError("element " + std::to_string(*generator_encoding) +
                       " is not a primitive element");
    }
    g = *generator_encoding;
  } else {
    for (std::uint32_t c = 1; c < order_; ++c) {
      if (has_full_order(c, modulus_, p_, n_, group)) {
        g = c;
        break;
      }
    }
    if (g == 0) throw InternalError("no primitive element found");
  }

  exp_.resize(group);
  log_.assign(order_, UINT32_MAX);
  const Polynomial gp = decode(g, p_, n_);
  Polynomial cur{1};
  for (std::uint64_t k = 0; k < group; ++k) {
    Polynomial padded = cur;
    padded.resize(n_, 0);
    const std::uint32_t e = encode(padded, p_);
    if (log_[e] != UINT32_MAX) throw InternalError("generator has short order");
    exp_[k] = e;
    log_[e] = static_cast<std::uint32_t>(k);
    cur = poly_mulmod(cur, gp, modulus_, p_);
  }
  if (cur != Polynomial{1}) throw InternalError("generator order mismatch");
  log_[0] = 0;
}

FieldElement FiniteField::element(std::uint32_t encoding) const {
  if (encoding >= order_) {
    throw UsageError("encoding " + std::to_string(encoding) + " outside GF(" +
                     std::to_string(order_) + ")");
  }
  return {id_, encoding};
}

FieldElement FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != n_) throw UsageError("coefficient vector length must equal the degree");
  for (const auto c : coeffs) {
    if (c >= p_) throw UsageError("coefficient out of range");
  }
  return {id_, encode(Polynomial(coeffs.begin(), coeffs.end()), p_)};
}

Polynomial FiniteField::coefficients(FieldElement x) const {
  check(x);
  return decode(x.encoding(), p_, n_);
}

void FiniteField::check(FieldElement x) const {
  if (x.field_id() != id_) throw UsageError("element belongs to a different field");
}

void FiniteField::check(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
}

std::uint32_t FiniteField::add_raw(std::uint32_t x, std::uint32_t y) const {
  if (p_ == 2) return x ^ y;
  std::uint32_t r = 0, pw = 1;
  while (x != 0 || y != 0) {
    r += ((x % p_ + y % p_) % p_) * pw;
    x /= p_;
    y /= p_;
    pw *= p_;
  }
  return r;
}

std::uint32_t FiniteField::neg_raw(std::uint32_t x) const {
  if (p_ == 2) return x;
  std::uint32_t r = 0, pw = 1;
  while (x != 0) {
    r += ((p_ - x % p_) % p_) * pw;
    x /= p_;
    pw *= p_;
  }
  return r;
}

std::uint32_t FiniteField::mul_raw(std::uint32_t x, std::uint32_t y) const {
  if (x == 0 || y == 0) return 0;
  const std::uint64_t s = std::uint64_t{log_[x]} + log_[y];
  return exp_[s % (order_ - 1)];
}

std::uint32_t FiniteField::frobenius_raw(std::uint32_t x, std::uint64_t power_of_p) const {
  if (x == 0) return 0;
  const std::uint64_t g = order_ - 1;
  return exp_[(std::uint64_t{log_[x]} * (power_of_p % g)) % g];
}

FieldElement FiniteField::add(FieldElement x, FieldElement y) const {
  check(x, y);
  return {id_, add_raw(x.encoding(), y.encoding())};
}

FieldElement FiniteField::sub(FieldElement x, FieldElement y) const {
  check(x, y);
  return {id_, add_raw(x.encoding(), neg_raw(y.encoding()))};
}

FieldElement FiniteField::neg(FieldElement x) const {
  check(x);
  return {id_, neg_raw(x.encoding())};
}

FieldElement FiniteField::mul(FieldElement x, FieldElement y) const {
  check(x, y);
  return {id_, mul_raw(x.encoding(), y.encoding())};
}

FieldElement FiniteField::inv(FieldElement x) const {
  check(x);
  if (x.is_zero()) throw std::domain_error("inverse of zero");
  const std::uint32_t g = order_ - 1;
  return {id_, exp_[(g - log_[x.encoding()]) % g]};
}

FieldElement FiniteField::pow(FieldElement x, std::int64_t e) const {
  check(x);
  if (x.is_zero()) {
    if (e < 0) throw std::domain_error("negative power of zero");
    return e == 0 ? one() : zero();
  }
  const std::int64_t g = order_ - 1;
  std::int64_t r = e % g;
  if (r < 0) r += g;
  const std::uint64_t k = (std::uint64_t{log_[x.encoding()]} * static_cast<std::uint64_t>(r)) % g;
  return {id_, exp_[k]};
}

std::uint32_t FiniteField::log(FieldElement x) const {
  check(x);
  if (x.is_zero()) throw std::domain_error("logarithm of zero");
  return log_[x.encoding()];
}

std::uint32_t FiniteField::absolute_trace(FieldElement x) const {
  check(x);
  std::uint32_t t = 0, y = x.encoding();
  for (std::uint32_t j = 0; j < n_; ++j) {
    t = add_raw(t, y);
    y = frobenius_raw(y, p_);
  }
  if (t >= p_) throw InternalError("absolute trace left the prime field");
  return t;
}

FieldPtr construct_field(std::uint32_t p, std::uint32_t n) {
  require_prime(p);
  if (n == 0) throw UsageError("extension degree must be positive");
  if (!bounded_power(p, n, FiniteField::kMaxOrder)) {
    throw CapacityError("GF(" + std::to_string(p) + "^" + std::to_string(n) +
                        ") exceeds the 2^24 element table limit");
  }
  return std::make_shared<const FiniteField>(p, n, find_irreducible(p, n), std::nullopt);
}

FieldPtr construct_field_with_generator(std::uint32_t p, std::uint32_t n,
                                       std::uint32_t generator_encoding) {
  require_prime(p);
  if (n == 0) throw UsageError("extension degree must be positive");
  if (!bounded_power(p, n, FiniteField::kMaxOrder)) {
    throw CapacityError("GF(" + std::to_string(p) + "^" + std::to_string(n) +
                        ") exceeds the 2^24 element table limit");
  }
  return std::make_shared<const FiniteField>(p, n, find_irreducible(p, n), generator_encoding);
}

SubfieldEmbedding::SubfieldEmbedding(FieldPtr base, FieldPtr ext, std::uint32_t root_encoding)
    : base_(std::move(base)), ext_(std::move(ext)), root_(root_encoding) {
  if (base_->characteristic() != ext_->characteristic() ||
      ext_->degree() % base_->degree() != 0) {
    throw UsageError("base field is not a subfield of the extension");
  }
  const FiniteField& B = *base_;
  const FiniteField& E = *ext_;
  const std::uint32_t p = B.characteristic();

  std::vector<std::uint32_t> root_powers(B.degree());
  std::uint32_t rp = 1;
  for (auto& r : root_powers) {
    r = rp;
    rp = E.mul_raw(rp, root_);
  }
  image_.resize(B.order());
  for (std::uint32_t y = 0; y < B.order(); ++y) {
    std::uint32_t acc = 0, rest = y;
    for (std::uint32_t j = 0; j < B.degree(); ++j, rest /= p) {
      // A constant c < p is encoded as c in any field of characteristic p.
      acc = E.add_raw(acc, E.mul_raw(rest % p, root_powers[j]));
    }
    image_[y] = acc;
  }

  // Multiplicativity on the generator's powers plus additivity by
  // construction makes this a field homomorphism.
  const std::uint64_t big = E.group_order();
  stride_ = static_cast<std::uint32_t>(big / B.group_order());
  if (image_[0] != 0 || image_[1] != 1) throw InternalError("embedding does not fix 0 and 1");
  const auto base_exp = B.exp_table();
  const auto ext_log = E.log_table();
  const std::uint64_t s = ext_log[image_[base_exp[B.group_order() > 1 ? 1 : 0]]];
  if (s % stride_ != 0) throw InternalError("image of the base generator has wrong order");
  pull_.assign(B.group_order(), UINT32_MAX);
  for (std::uint64_t k = 0; k < B.group_order(); ++k) {
    const std::uint32_t img = image_[base_exp[k]];
    const std::uint64_t L = k * s % big;
    if (img == 0 || ext_log[img] != L) throw InternalError("embedding is not multiplicative");
    auto& slot = pull_[L / stride_];
    if (slot != UINT32_MAX) throw InternalError("embedding is not injective");
    slot = base_exp[k];
  }
}

FieldElement SubfieldEmbedding::map(FieldElement x) const {
  if (!base_->contains(x)) throw UsageError("element is not in the base field");
  return ext_->element(image_[x.encoding()]);
}

std::optional<std::uint32_t> SubfieldEmbedding::pullback_raw(std::uint32_t y) const {
  if (y == 0) return 0u;
  const std::uint32_t L = ext_->log_table()[y];
  if (L % stride_ != 0) return std::nullopt;
  return pull_[L / stride_];
}

std::optional<FieldElement> SubfieldEmbedding::pullback(FieldElement y) const {
  if (!ext_->contains(y)) throw UsageError("element is not in the extension field");
  const auto r = pullback_raw(y.encoding());
  if (!r) return std::nullopt;
  return base_->element(*r);
}

SubfieldEmbedding build_embedding(FieldPtr base, FieldPtr ext) {
  if (base->characteristic() != ext->characteristic() || ext->degree() % base->degree() != 0) {
    throw UsageError("base field is not a subfield of the extension");
  }
  const FiniteField& E = *ext;
  const Polynomial& f = base->modulus();
  for (std::uint32_t z = 0; z < E.order(); ++z) {
    std::uint32_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = E.add_raw(E.mul_raw(acc, z), f[i]);
    if (acc == 0) return SubfieldEmbedding(std::move(base), std::move(ext), z);
  }
  throw InternalError("base modulus has no root in the extension");
}

std::uint32_t relative_trace_raw(const SubfieldEmbedding& emb, std::uint32_t x) {
  const FiniteField& E = emb.ext();
  const std::uint64_t q = emb.base().order();
  std::uint32_t t = 0, y = x;
  for (std::uint32_t j = 0; j < emb.relative_degree(); ++j) {
    t = E.add_raw(t, y);
    y = E.frobenius_raw(y, q);
  }
  const auto back = emb.pullback_raw(t);
  if (!back) throw InternalError("relative trace is not in the base field");
  return *back;
}

FieldElement relative_trace(const SubfieldEmbedding& emb, FieldElement x) {
  if (!emb.ext().contains(x)) throw UsageError("element is not in the extension field");
  return emb.base().element(relative_trace_raw(emb, x.encoding()));
}

}  // namespace jcb

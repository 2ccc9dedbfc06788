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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "jcb/char_sums.hpp"
#include "jcb/characters.hpp"
#include "jcb/errors.hpp"
#include "jcb/finite_field.hpp"

namespace jcb {
namespace {

constexpr double kTol = 1e-9;

std::vector<FieldPtr> fields_up_to(std::uint32_t limit) {
  std::vector<FieldPtr> out;
  for (std::uint32_t q = 2; q <= limit; ++q) {
    if (const auto pp = prime_power(q)) out.push_back(construct_field(pp->first, pp->second));
  }
  return out;
}

void expect_complex_near(Complex a, Complex b, double tol = kTol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

TEST(MultiplicativeCharacter, ExtendedConventionAtZero) {
  const auto f = construct_field(3, 2);
  EXPECT_EQ(MultiplicativeCharacter(f, 0)(f->zero()), Complex(1.0, 0.0));
  for (std::uint32_t t = 1; t < 8; ++t) {
    EXPECT_EQ(MultiplicativeCharacter(f, t)(f->zero()), Complex(0.0, 0.0));
  }
}

TEST(MultiplicativeCharacter, Examples) {
  const auto f5 = construct_field(5, 1);
  // 2 generates F_5^*, so psi_1(2) = exp(2 pi i / 4).
  const auto v = MultiplicativeCharacter(f5, 1)(f5->element(2));
  EXPECT_EQ(v, Complex(0.0, 1.0));
  EXPECT_EQ(MultiplicativeCharacter(f5, 1) * MultiplicativeCharacter(f5, 3),
            MultiplicativeCharacter(f5, 0));
  EXPECT_EQ(MultiplicativeCharacter(f5, 6).exponent(), 2u);
}

TEST(MultiplicativeCharacter, ValueMatchesDefinition) {
  const auto f = construct_field(2, 4);
  for (std::uint32_t t = 0; t < 15; ++t) {
    const MultiplicativeCharacter psi(f, t);
    for (std::uint32_t k = 0; k < 15; ++k) {
      const double angle = 2.0 * M_PI * static_cast<double>(k * t % 15) / 15.0;
      expect_complex_near(psi(f->exp(k)), std::polar(1.0, angle), 1e-12);
    }
  }
}

TEST(MultiplicativeCharacter, ConjugateIsInverse) {
  const auto f = construct_field(3, 2);
  for (std::uint32_t t = 0; t < 8; ++t) {
    const MultiplicativeCharacter psi(f, t);
    EXPECT_TRUE((psi * psi.conjugate()).is_trivial());
    for (std::uint32_t x = 1; x < 9; ++x) {
      expect_complex_near(psi.conjugate()(f->element(x)), std::conj(psi(f->element(x))), 1e-12);
    }
  }
}

TEST(MultiplicativeCharacter, RejectsForeignElement) {
  const auto f = construct_field(2, 2);
  const auto g = construct_field(2, 2);
  EXPECT_THROW(MultiplicativeCharacter(f, 1)(g->one()), UsageError);
  EXPECT_THROW(MultiplicativeCharacter(f, 1) * MultiplicativeCharacter(g, 1), UsageError);
}

TEST(MultiplicativeCharacter, Multiplicative) {
  for (const auto& f : fields_up_to(64)) {
    for (std::uint32_t t = 0; t < f->group_order(); ++t) {
      const MultiplicativeCharacter psi(f, t);
      for (std::uint32_t x = 0; x < f->order(); ++x) {
        for (std::uint32_t y = 0; y < f->order(); ++y) {
          const auto ex = f->element(x), ey = f->element(y);
          const Complex lhs = psi(f->mul(ex, ey));
          const Complex rhs = psi(ex) * psi(ey);
          if (t == 0) {
            // Extended convention: psi_0 is 1 everywhere, including 0.
            ASSERT_EQ(lhs, Complex(1.0, 0.0));
          } else {
            ASSERT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12) << f->order() << " t=" << t;
          }
        }
      }
    }
  }
}

TEST(MultiplicativeCharacter, Orthogonality) {
  for (const auto& f : fields_up_to(256)) {
    for (std::uint32_t t = 0; t < f->group_order(); ++t) {
      const MultiplicativeCharacter psi(f, t);
      Complex sum = 0.0;
      for (std::uint32_t x = 1; x < f->order(); ++x) sum += psi.eval_raw(x);
      const double expected = t == 0 ? f->group_order() : 0.0;
      ASSERT_NEAR(std::abs(sum - expected), 0.0, kTol) << f->order() << " t=" << t;
    }
  }
}

TEST(MultiplicativeCharacter, RepeatedEvaluationIsBitIdentical) {
  const auto f = construct_field(7, 2);
  const MultiplicativeCharacter a(f, 17);
  const MultiplicativeCharacter b(construct_field(7, 2), 17);
  for (std::uint32_t x = 0; x < f->order(); ++x) {
    EXPECT_EQ(a.eval_raw(x), a.eval_raw(x));
    EXPECT_EQ(a.eval_raw(x), b.eval_raw(x));
  }
}

TEST(AdditiveCharacter, Examples) {
  const auto f2 = construct_field(2, 1);
  EXPECT_EQ(AdditiveCharacter(f2, f2->one())(f2->one()), Complex(-1.0, 0.0));
  const auto f9 = construct_field(3, 2);
  const AdditiveCharacter trivial(f9, f9->zero());
  for (std::uint32_t x = 0; x < 9; ++x) EXPECT_EQ(trivial(f9->element(x)), Complex(1.0, 0.0));
}

TEST(AdditiveCharacter, Orthogonality) {
  for (const auto& f : fields_up_to(256)) {
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      const AdditiveCharacter chi(f, f->element(a));
      Complex sum = 0.0;
      for (std::uint32_t x = 0; x < f->order(); ++x) sum += chi(f->element(x));
      const double expected = a == 0 ? f->order() : 0.0;
      ASSERT_NEAR(std::abs(sum - expected), 0.0, kTol) << f->order() << " a=" << a;
    }
  }
}

TEST(AdditiveCharacter, Homomorphism) {
  for (const auto& f : fields_up_to(32)) {
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      const AdditiveCharacter chi(f, f->element(a));
      for (std::uint32_t x = 0; x < f->order(); ++x) {
        for (std::uint32_t y = 0; y < f->order(); ++y) {
          const auto ex = f->element(x), ey = f->element(y);
          ASSERT_NEAR(std::abs(chi(f->add(ex, ey)) - chi(ex) * chi(ey)), 0.0, 1e-12);
        }
      }
    }
  }
}

TEST(TowerCharacters, RestrictToBaseCharacter) {
  struct Case {
    std::uint32_t p, m;
    std::vector<std::uint32_t> degrees;
  };
  for (const auto& c : {Case{2, 2, {1, 2}}, Case{5, 1, {1, 2}}, Case{3, 2, {2}}, Case{2, 1, {3}},
                        Case{2, 2, {3}}, Case{7, 1, {2, 3}}}) {
    const auto tower = Tower::build(c.p, c.m, c.degrees);
    const auto& base = tower.base();
    for (std::size_t i = 0; i < tower.k(); ++i) {
      const auto& lvl = tower.level(i);
      for (std::uint32_t t = 0; t < base.group_order(); ++t) {
        const auto phi = tower.character(i, t);
        const MultiplicativeCharacter psi(tower.base_ptr(), t);
        for (std::uint32_t y = 0; y < base.order(); ++y) {
          const auto value = phi.eval_raw(lvl.embedding.map_raw(y));
          ASSERT_NEAR(std::abs(value - psi.eval_raw(y)), 0.0, 1e-12);
        }
      }
    }
  }
}

TEST(TowerCharacters, AlternativeGeneratorsAlsoRestrict) {
  const auto tower = Tower::build(2, 2, {1, 2}, TowerOptions{2, 1});
  const auto& base = tower.base();
  for (std::size_t i = 0; i < tower.k(); ++i) {
    const auto phi = tower.character(i, 1);
    const MultiplicativeCharacter psi(tower.base_ptr(), 1);
    for (std::uint32_t y = 1; y < base.order(); ++y) {
      ASSERT_NEAR(std::abs(phi.eval_raw(tower.level(i).embedding.map_raw(y)) - psi.eval_raw(y)),
                  0.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace jcb

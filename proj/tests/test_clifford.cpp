#include <gtest/gtest.h>

#include <random>

#include "slicecalc/clifford.hpp"

using namespace slicecalc;

namespace {

Multivector random_mv(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Multivector a(m);
  for (int i = 0; i < a.size(); ++i) a[i] = d(rng);
  return a;
}

Paravector random_para(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Paravector p(m);
  p.scalar() = d(rng);
  for (int i = 0; i < m; ++i) p.vector(i) = d(rng);
  return p;
}

// Independent product: expand both operands into words of generators and reduce
// each word by adjacent swaps, without the precomputed tables.
Multivector word_product(const Multivector& a, const Multivector& b) {
  const int m = a.dim();
  Multivector r(m);
  const auto& t = detail::tables(m);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      std::vector<int> word;
      for (int g = 0; g < m; ++g)
        if (t.mask[i] & (1u << g)) word.push_back(g);
      for (int g = 0; g < m; ++g)
        if (t.mask[j] & (1u << g)) word.push_back(g);
      double sign = 1.0;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < word.size(); ++k) {
          if (word[k] > word[k + 1]) {
            std::swap(word[k], word[k + 1]);
            sign = -sign;
            changed = true;
          } else if (word[k] == word[k + 1]) {
            word.erase(word.begin() + k, word.begin() + k + 2);
            sign = -sign;
            changed = true;
            break;
          }
        }
      }
      unsigned mask = 0;
      for (int g : word) mask |= 1u << g;
      r[t.index[mask]] += sign * a[i] * b[j];
    }
  return r;
}

}  // namespace

TEST(Clifford, CanonicalBladeOrder) {
  EXPECT_EQ(blade_label(2, 0), "1");
  EXPECT_EQ(blade_label(2, 1), "e1");
  EXPECT_EQ(blade_label(2, 2), "e2");
  EXPECT_EQ(blade_label(2, 3), "e12");
  EXPECT_EQ(blade_label(3, 4), "e12");
  EXPECT_EQ(blade_label(3, 5), "e13");
  EXPECT_EQ(blade_label(3, 6), "e23");
  EXPECT_EQ(blade_label(3, 7), "e123");
  EXPECT_EQ(blade_label(4, 11), "e123");
}

TEST(Clifford, DefiningRelations) {
  const Multivector e1 = Multivector::generator(2, 1), e2 = Multivector::generator(2, 2);
  EXPECT_EQ(e1 * e2, Multivector::blade(2, {1, 2}));
  EXPECT_EQ(e1 * e1, Multivector::scalar(2, -1.0));
  EXPECT_EQ(e2 * e1, -Multivector::blade(2, {1, 2}));
  const Multivector one = Multivector::scalar(2, 1.0);
  EXPECT_EQ((one + e1) * (one - e1), Multivector::scalar(2, 2.0));
  EXPECT_EQ(Multivector::blade(3, {2, 1}), -Multivector::blade(3, {1, 2}));
}

TEST(Clifford, ConjugationSigns) {
  EXPECT_EQ(clifford_conjugate(Multivector::scalar(2, 5.0)), Multivector::scalar(2, 5.0));
  EXPECT_EQ(clifford_conjugate(Multivector::generator(2, 1)), -Multivector::generator(2, 1));
  EXPECT_EQ(clifford_conjugate(Multivector::blade(2, {1, 2})), -Multivector::blade(2, {1, 2}));
  EXPECT_EQ(clifford_conjugate(Multivector::blade(3, {1, 2, 3})), Multivector::blade(3, {1, 2, 3}));
}

TEST(Clifford, Norms) {
  const Multivector e1 = Multivector::generator(2, 1), e2 = Multivector::generator(2, 2);
  EXPECT_DOUBLE_EQ(norm(Multivector::scalar(2, 1.0) + e1), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(norm(Multivector(2)), 0.0);
  EXPECT_DOUBLE_EQ(norm(Multivector::blade(2, {1, 2}) - e2), std::sqrt(2.0));
}

TEST(Clifford, DimensionMismatchThrows) {
  EXPECT_THROW(Multivector::generator(2, 1) * Multivector::generator(3, 1), DimensionMismatch);
  EXPECT_THROW(Multivector::generator(2, 1) + Multivector::generator(3, 1), DimensionMismatch);
  EXPECT_THROW(Multivector(7), ArgumentError);
  EXPECT_THROW(Multivector(0), ArgumentError);
}

TEST(Clifford, GradeDecompositionIsExact) {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 6; ++m) {
    const Multivector a = random_mv(m, rng);
    Multivector sum(m);
    for (int k = 0; k <= m; ++k) sum += a.grade_part(k);
    EXPECT_EQ(sum, a);
  }
}

TEST(Clifford, TablesAgreeWithWordReduction) {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 4; ++m)
    for (int trial = 0; trial < 5; ++trial) {
      const Multivector a = random_mv(m, rng), b = random_mv(m, rng);
      EXPECT_LT((a * b - word_product(a, b)).norm(), 1e-12 * (1.0 + a.norm() * b.norm()));
    }
}

TEST(Clifford, AlgebraProperties) {
  std::mt19937_64 rng(7);
  for (int m = 1; m <= 6; ++m) {
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) {
        const Multivector ei = Multivector::generator(m, i), ej = Multivector::generator(m, j);
        EXPECT_EQ(ei * ej + ej * ei, Multivector::scalar(m, i == j ? -2.0 : 0.0));
      }
    for (int trial = 0; trial < 20; ++trial) {
      const Multivector a = random_mv(m, rng), b = random_mv(m, rng), c = random_mv(m, rng);
      const double scale = a.norm() * b.norm() * c.norm();
      EXPECT_LT(((a * b) * c - a * (b * c)).norm(), 1e-12 * scale);
      EXPECT_LT(((a * b).conjugate() - b.conjugate() * a.conjugate()).norm(), 1e-12 * a.norm() * b.norm());
      EXPECT_EQ(a.conjugate().conjugate(), a);
      const Paravector p = random_para(m, rng);
      const Multivector pm = p.to_multivector(), pinv = paravector_inverse(p).to_multivector();
      EXPECT_LT((pm * pinv - Multivector::scalar(m, 1.0)).norm(), 1e-12);
      EXPECT_LT((pinv * pm - Multivector::scalar(m, 1.0)).norm(), 1e-12);
      const Multivector pp = pm * p.conjugate().to_multivector();
      EXPECT_NEAR(pp[0], p.norm_sq(), 1e-12 * p.norm_sq());
      EXPECT_LT((pp - pp.grade_part(0)).norm(), 1e-12 * p.norm_sq());
    }
  }
}

TEST(Clifford, ParavectorInverse) {
  EXPECT_DOUBLE_EQ(paravector_inverse(Paravector(2, 2.0, {0.0, 0.0})).scalar(), 0.5);
  const Paravector ie1 = paravector_inverse(Paravector(2, 0.0, {1.0, 0.0}));
  EXPECT_DOUBLE_EQ(ie1.vector(0), -1.0);
  const Paravector i2 = paravector_inverse(Paravector(2, 1.0, {1.0, 0.0}));
  EXPECT_DOUBLE_EQ(i2.scalar(), 0.5);
  EXPECT_DOUBLE_EQ(i2.vector(0), -0.5);
  EXPECT_THROW(paravector_inverse(Paravector(2)), SingularInput);
}

TEST(Clifford, SliceCoordinates) {
  const auto a = slice_coordinates(Paravector(2, 1.0, {2.0, 0.0}));
  EXPECT_DOUBLE_EQ(a.u, 1.0);
  EXPECT_DOUBLE_EQ(a.v, 2.0);
  ASSERT_TRUE(a.I);
  EXPECT_DOUBLE_EQ((*a.I)[0], 1.0);
  const auto b = slice_coordinates(Paravector(2, 3.0, {0.0, 0.0}));
  EXPECT_DOUBLE_EQ(b.v, 0.0);
  EXPECT_FALSE(b.I);
  const auto c = slice_coordinates(Paravector(2, 0.0, {1.0, 1.0}));
  EXPECT_DOUBLE_EQ(c.v, std::sqrt(2.0));
  EXPECT_NEAR((*c.I)[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Clifford, UnitSliceVectorValidation) {
  const double bad[2] = {1.0, 1.0};
  EXPECT_THROW(UnitSliceVector(2, bad), ArgumentError);
  const UnitSliceVector I = UnitSliceVector::normalized(2, {3.0, 4.0});
  EXPECT_NEAR(I[0], 0.6, 1e-15);
  const Multivector Im = I.to_multivector();
  EXPECT_LT((Im * Im + Multivector::scalar(2, 1.0)).norm(), 1e-15);
}

TEST(Clifford, ParavectorEmbedding) {
  const Paravector p(3, 1.5, {0.5, -2.0, 0.25});
  EXPECT_EQ(Paravector::from_multivector(p.to_multivector()).to_multivector(), p.to_multivector());
  EXPECT_THROW(Paravector::from_multivector(Multivector::blade(3, {1, 2})), ArgumentError);
}

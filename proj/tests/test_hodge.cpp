#include <gtest/gtest.h>

#include <random>

#include "slicecalc/hodge.hpp"

using namespace slicecalc;

namespace {

double dist(const Multivector& a, const Multivector& b) { return (a - b).norm(); }

const AxialDomain& domain() {
  static const AxialDomain d = build_domain(ProfileRegion::disk(0.0, 2.0, 0.5, 24), 2);
  return d;
}

SliceFunction constant(const Multivector& c) { return make_polynomial(c.dim(), {c}); }

}  // namespace

TEST(Hodge, InnerProductOfConstants) {
  const auto& d = domain();
  const int m = d.dim;
  const Multivector one = Multivector::scalar(m, 1.0), e1 = Multivector::generator(m, 1);
  EXPECT_LT(dist(inner_product(constant(one), constant(one), d), one * d.volume()), 1e-12);
  EXPECT_LT(dist(inner_product(constant(e1), constant(one), d), -e1 * d.volume()), 1e-12);
}

TEST(Hodge, InnerProductAgainstSphereQuadrature) {
  // Direct evaluation: integral over D+ and the full sphere of conj(f(x)) g(x) v^(m-1).
  const auto& d = domain();
  const int m = d.dim;
  const auto f = make_named(m, "exp") * Multivector::blade(m, {1, 2});
  const auto g = make_named(m, "conjugate") + make_named(m, "square") * Multivector::generator(m, 2);
  Multivector direct(m);
  for (std::size_t k = 0; k < d.slice_quad.size(); ++k) {
    const auto [u, v] = d.slice_quad.nodes[k];
    for (std::size_t j = 0; j < d.sphere_quad.size(); ++j)
      for (int side : {1, -1}) {
        const Paravector x = Paravector::from_slice(u, side * v, d.sphere_quad.nodes[j]);
        direct.add_scaled(f(x).conjugate() * g(x), d.slice_quad.weights[k] * d.sphere_quad.weights[j] * v);
      }
  }
  EXPECT_LT(dist(inner_product(f, g, d), direct), 1e-10 * direct.norm());
}

TEST(Hodge, ScalarPartIsARealInnerProduct) {
  const auto& d = domain();
  const int m = d.dim;
  const auto f = make_named(m, "exp") * Multivector::blade(m, {1, 2}) + make_named(m, "conjugate");
  const Multivector ff = inner_product(f, f, d);
  EXPECT_GT(ff[0], 0.0);
  EXPECT_NEAR(ff[0], std::pow(lp_norm(f, d, 2.0), 2), 1e-10 * ff[0]);
  EXPECT_EQ(inner_product(make_polynomial(m, {Multivector(m)}), f, d).norm(), 0.0);
}

TEST(Hodge, BasisStructure) {
  const auto& d = domain();
  const auto b0 = build_basis(d, 0);
  EXPECT_EQ(b0.size(), 4u);
  const auto b = build_basis(d, 3);
  EXPECT_EQ(b.size(), 16u);
  std::vector<std::pair<double, double>> probes = {{0.1, 2.0}, {-0.2, 1.8}, {0.3, 2.2}};
  for (const auto& phi : b.functions) EXPECT_TRUE(is_slice_monogenic(phi, probes).monogenic) << phi.label();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      EXPECT_LT(dist(b.gram(i, j), b.gram(j, i).conjugate()), 1e-10 * (1.0 + b.gram(i, j).norm()));
      if (i % 5 == 0 && j % 3 == 0) {
        const Multivector direct = inner_product(b.functions[i], b.functions[j], d);
        EXPECT_LT(dist(b.gram(i, j), direct), 1e-10 * (1.0 + direct.norm()));
      }
    }
  EXPECT_THROW(build_basis(d, -1), ArgumentError);
}

TEST(Hodge, IllConditionedBasisIsRejected) {
  // A thin disk far from the origin makes high powers nearly collinear.
  const auto d = build_domain(ProfileRegion::disk(0.0, 20.0, 0.05, 16), 1);
  try {
    build_basis(d, 12);
    FAIL() << "expected IllConditioned";
  } catch (const IllConditioned& e) {
    EXPECT_GT(e.condition(), kMaxGramCondition);
  }
}

TEST(Hodge, ProjectionOfSpanElementIsExact) {
  const auto& d = domain();
  const int m = d.dim;
  const auto b = build_basis(d, 3);
  const auto f = make_named(m, "square") * Multivector::generator(m, 1);
  const HodgeSplit s = project_P(f, b, d);
  double qmax = 0.0;
  for (const auto& q : s.q_part) qmax = std::max(qmax, q.norm());
  EXPECT_LT(qmax, 1e-8);
}

TEST(Hodge, ComplementarityOrthogonalityAndIdempotence) {
  const auto& d = domain();
  const int m = d.dim;
  const auto b = build_basis(d, 6);
  const auto f = make_named(m, "conjugate");
  const HodgeSplit s = project_P(f, b, d);
  const SliceQuadrature rule = regular_rule(d);
  double qnorm = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const StemValue fk = f.stem_at(rule.nodes[k].u, rule.nodes[k].v);
    EXPECT_LE((s.p_part[k] + s.q_part[k] - fk).norm(), 1e-15 * (1.0 + fk.norm()));  // one rounding
    qnorm = std::max(qnorm, s.q_part[k].norm());
  }
  EXPECT_GT(qnorm, 1e-3);
  EXPECT_LT(s.max_orthogonality, 1e-8);
  // Direct check of Clifford orthogonality against every basis element.
  const FieldSample q = FieldSample::tabulated(m, s.q_part);
  for (const auto& phi : b.functions) EXPECT_LT(inner_product(phi, q, d).norm(), 1e-8);
  const HodgeSplit again = project_P(FieldSample::tabulated(m, s.p_part), b, d);
  for (std::size_t i = 0; i < s.coefficients.size(); ++i) EXPECT_NEAR(again.coefficients[i], s.coefficients[i], 1e-10);
}

TEST(Hodge, ZeroSplitsToZero) {
  const auto& d = domain();
  const HodgeSplit s = project_P(make_polynomial(d.dim, {Multivector(d.dim)}), build_basis(d, 2), d);
  for (double c : s.coefficients) EXPECT_EQ(c, 0.0);
  for (const auto& q : s.q_part) EXPECT_EQ(q.norm(), 0.0);
}

TEST(Hodge, WeightMap) {
  const int m = 3;
  const auto f = make_named(m, "exp");
  const auto w0 = weight_map(f, 0);
  const Paravector q(m, 0.2, {0.3, -0.4, 1.2});
  EXPECT_EQ(w0(q), f(q));
  const auto one = weight_map(make_named(m, "one"), m - 1);
  const double v = std::sqrt(0.09 + 0.16 + 1.44);
  EXPECT_NEAR(one(q)[0], v * v, 1e-14);
  EXPECT_LT(weight_map(f, 2).stem().even_odd_defect(), 1e-12);
  // Analytic partials agree with finite differences.
  const auto w2 = weight_map(f, 2);
  const StemPartials a = w2.stem().partials(0.3, 0.7), fd = w2.stem().fd_partials(0.3, 0.7, 1e-5);
  EXPECT_TRUE(a.analytic);
  EXPECT_LT((a.dv - fd.dv).norm(), 1e-8);
}

TEST(Hodge, TraceCheckOfSpanElementIsVacuous) {
  const auto& d = domain();
  const int m = d.dim;
  const auto b = build_basis(d, 2);
  const auto t = q_image_trace_check(make_named(m, "identity"), b, d);
  EXPECT_LT(t.q_trace.max_residual, 1e-8);
  EXPECT_GT(t.p_trace.max_residual, 1e-2);
  const auto z = q_image_trace_check(make_polynomial(m, {Multivector(m)}), b, d);
  EXPECT_EQ(z.q_trace.max_residual, 0.0);
}

#include <gtest/gtest.h>

#include <complex>
#include <numbers>
#include <random>

#include "slicecalc/verify.hpp"

using namespace slicecalc;

namespace {

constexpr double pi = std::numbers::pi;
using C = std::complex<double>;

double dist(const Multivector& a, const Multivector& b) { return (a - b).norm(); }

AxialDomain disk_domain(int m, int n, double u0 = 0.0, double v0 = 2.0, double R = 0.5) {
  return build_domain(ProfileRegion::disk(u0, v0, R, n), m);
}

// Direct Clifford-form slice transform: -(1/2pi) sum over the upper half (I) and the
// mirrored lower half of S^-1(q, x) f(x), on a polar rule centered at q's slice point.
Multivector direct_teodorescu_slice(const SliceFunction& f, const AxialDomain& d, const UnitSliceVector& I,
                                    const Paravector& q) {
  const auto s = slice_coordinates(q);
  const AxialDomain pd = with_singular_patch(d, {s.u, s.v}, default_patch_radius(d, {s.u, s.v}));
  Multivector sum(d.dim);
  for (std::size_t k = 0; k < pd.slice_quad.size(); ++k) {
    const auto [u, v] = pd.slice_quad.nodes[k];
    for (int side : {1, -1}) {
      const Paravector x = Paravector::from_slice(u, side * v, I);
      try {
        sum.add_scaled(cauchy_kernel(q, x) * f(x), pd.slice_quad.weights[k]);
      } catch (const SingularInput&) {
      }
    }
  }
  return sum * (-0.5 / pi);
}

// Direct Clifford-form boundary operator over both halves of each slice.
Multivector direct_cauchy_boundary(const SliceFunction& f, const AxialDomain& d, const Paravector& q) {
  Multivector total(d.dim);
  const auto& b = d.boundary_quad;
  for (std::size_t j = 0; j < d.sphere_quad.size(); ++j) {
    const UnitSliceVector& I = d.sphere_quad.nodes[j];
    for (std::size_t k = 0; k < b.size(); ++k)
      for (int side : {1, -1}) {
        const Paravector x = Paravector::from_slice(b.nodes[k].u, side * b.nodes[k].v, I);
        const Paravector n = Paravector::from_slice(b.normals[k].u, side * b.normals[k].v, I);
        total.add_scaled(cauchy_kernel(q, x) * (n.to_multivector() * f(x)), b.weights[k] * d.sphere_quad.weights[j]);
      }
  }
  return total * (1.0 / (pi * sphere_area(d.dim)));
}

// Closed-form m = 1 transform of f = 1 on the disk pair D+ u D-, for w inside D+.
C closed_form_t1(C c, double R, C w) {
  return -(1.0 / (2.0 * pi)) * (pi * (std::conj(c) - std::conj(w)) + pi * R * R / (std::conj(c) - w));
}

UnitSliceVector direction(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> c(m);
  for (auto& x : c) x = g(rng);
  return UnitSliceVector::normalized(m, c);
}

}  // namespace

TEST(Operators, ZeroFieldGivesZero) {
  const int m = 2;
  const auto d = disk_domain(m, 16);
  const SliceFunction zero = make_polynomial(m, {Multivector(m)});
  const Paravector q = Paravector::from_slice(0.1, 2.0, UnitSliceVector::basis(m, 1));
  EXPECT_EQ(teodorescu(zero, d, q).norm(), 0.0);
  EXPECT_EQ(cauchy_boundary(zero, d, q).norm(), 0.0);
  const Paravector qb = Paravector::from_slice(d.boundary_quad.nodes[3].u, d.boundary_quad.nodes[3].v,
                                               UnitSliceVector::basis(m, 2));
  EXPECT_EQ(plemelj_singular(zero, d, qb).norm(), 0.0);
}

TEST(Operators, OneDimensionalClosedForm) {
  const auto d = disk_domain(1, 64, 0.3, 1.0, 0.5);
  const SliceFunction one = make_named(1, "one");
  const UnitSliceVector e1 = UnitSliceVector::basis(1, 1);
  for (C w : {C(0.3, 1.0), C(0.5, 1.2), C(0.1, 0.7), C(0.72, 1.1)}) {
    const C t = closed_form_t1(C(0.3, 1.0), 0.5, w);
    const Multivector expect = complex_lift(t, e1.to_multivector());
    const Paravector q = Paravector::from_slice(w.real(), w.imag(), e1);
    EXPECT_LT(dist(teodorescu(one, d, q), expect), 1e-9) << w;
    EXPECT_LT(dist(teodorescu_slice(one, d, e1, q), teodorescu(one, d, q)), 1e-15);
  }
  // Negative vector part: the point sits on the -e1 half of the same slice.
  const Paravector qm = Paravector::from_slice(0.4, -1.1, e1);
  const C tm = std::conj(closed_form_t1(C(0.3, 1.0), 0.5, C(0.4, 1.1)));
  EXPECT_LT(dist(teodorescu(one, d, qm), complex_lift(tm, e1.to_multivector())), 1e-9);
}

TEST(Operators, SliceTransformMatchesDirectCliffordSum) {
  std::mt19937_64 rng(3);
  for (int m : {2, 3}) {
    const auto d = disk_domain(m, 24);
    const auto f = make_named(m, "exp") + make_named(m, "conjugate") * Multivector::blade(m, {1, 2});
    for (int trial = 0; trial < 3; ++trial) {
      const UnitSliceVector Iq = direction(m, rng), I = direction(m, rng);
      const Paravector q = Paravector::from_slice(0.1, 1.85, Iq);
      const Multivector a = teodorescu_slice(f, d, I, q), b = direct_teodorescu_slice(f, d, I, q);
      EXPECT_LT(dist(a, b), 1e-11 * (1.0 + b.norm()));
    }
  }
}

TEST(Operators, VolumeTransformAgainstSolidOfRevolution) {
  // m = 2: -(1/2pi) int K dV with K = S^-1 / (pi r), dV = r dr dx0 dphi, so the integrand
  // over the profile is (1/pi) int_0^2pi S^-1(q, x(phi)) dphi on a polar rule around q.
  const int m = 2;
  const auto d = disk_domain(m, 48);
  const Paravector q = Paravector::from_slice(0.05, 2.1, UnitSliceVector::normalized(m, {0.6, 0.8}));
  const auto pd = with_singular_patch(d, {0.05, 2.1}, default_patch_radius(d, {0.05, 2.1}));
  const int nphi = 1024;
  Multivector sum(m);
  for (std::size_t k = 0; k < pd.slice_quad.size(); ++k) {
    const auto [u, v] = pd.slice_quad.nodes[k];
    Multivector ring(m);
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * pi * (j + 0.5) / nphi;
      ring += cauchy_kernel(q, Paravector(m, u, {v * std::cos(phi), v * std::sin(phi)}));
    }
    sum.add_scaled(ring, pd.slice_quad.weights[k] * (2.0 * pi / nphi) / pi);
  }
  const Multivector oracle = sum * (-0.5 / pi);
  EXPECT_LT(dist(teodorescu(make_named(m, "one"), d, q), oracle), 1e-5);
}

TEST(Operators, RightLinearity) {
  const int m = 2;
  const auto d = disk_domain(m, 16);
  const Multivector c = Multivector::blade(m, {1, 2});
  const auto f = make_named(m, "square");
  const UnitSliceVector I = UnitSliceVector::basis(m, 2);
  const Paravector q = Paravector::from_slice(0.2, 1.9, UnitSliceVector::basis(m, 1));
  EXPECT_LT(dist(teodorescu_slice(f * c, d, I, q), teodorescu_slice(f, d, I, q) * c), 1e-13);
}

TEST(Operators, TabulatedAndFunctionInputsAgreeAwayFromTheDomain) {
  const int m = 2;
  const auto d = disk_domain(m, 32);
  const auto f = make_named(m, "exp");
  const FieldSample t = tabulate(f, d);
  const Paravector q = Paravector::from_slice(1.5, 2.5, UnitSliceVector::basis(m, 1));
  EXPECT_LT(dist(teodorescu(t, d, q), teodorescu(f, d, q)), 1e-14);
  EXPECT_LT(dist(cauchy_boundary(t, d, q), cauchy_boundary(f, d, q)), 1e-14);
  EXPECT_THROW(teodorescu(FieldSample::tabulated(m, {StemValue(m)}), d, q), ArgumentError);
}

TEST(Operators, SlicenessOfTheTransform) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  const int m = 3;
  const auto d = disk_domain(m, 24);
  const SliceQuadrature rule = regular_rule(d);
  std::vector<StemValue> values;
  const Multivector a = Multivector::blade(m, {1, 3}) + Multivector::generator(m, 2);
  for (const auto& z : rule.nodes) {
    const double r = g(rng);  // noise, made even-odd by construction through stem storage
    values.push_back(StemValue(a * (r + z.u), Multivector::scalar(m, z.v * r)));
  }
  const FieldSample f = FieldSample::tabulated(m, values);
  for (int trial = 0; trial < 5; ++trial) {
    const UnitSliceVector Iq = direction(m, rng), J = direction(m, rng);
    const double u = 0.1 * g(rng), v = 2.0 + 0.1 * g(rng);
    const Multivector lhs = teodorescu(f, d, Paravector::from_slice(u, v, Iq));
    const Multivector rhs = representation_combine(teodorescu(f, d, Paravector::from_slice(u, v, J)),
                                                   teodorescu(f, d, Paravector::from_slice(u, -v, J)), J, Iq);
    EXPECT_LT(dist(lhs, rhs), 1e-12 * (1.0 + lhs.norm()));
  }
}

TEST(Operators, CauchyFormulaInsideAndTheoremOutside) {
  for (int m : {1, 2, 3}) {
    const auto d = disk_domain(m, 32);
    std::mt19937_64 rng(m);
    const UnitSliceVector I = direction(m, rng);
    const Paravector inside = Paravector::from_slice(0.1, 2.15, I);
    const Paravector outside = Paravector::from_slice(1.0, 2.6, I);
    const auto id = make_named(m, "identity");
    EXPECT_LT(dist(cauchy_boundary(id, d, inside), inside.to_multivector()), 1e-10) << m;
    EXPECT_LT(cauchy_boundary(make_named(m, "one"), d, outside).norm(), 1e-10) << m;
    EXPECT_LT(dist(cauchy_boundary(make_named(m, "exp"), d, inside), make_named(m, "exp")(inside)), 1e-10) << m;
  }
}

TEST(Operators, BoundaryOperatorMatchesDirectCliffordSum) {
  const int m = 2;
  const auto d = disk_domain(m, 16);
  const auto f = make_named(m, "conjugate") * Multivector::generator(m, 2) + make_named(m, "square");
  for (const Paravector& q : {Paravector::from_slice(0.1, 2.1, UnitSliceVector::normalized(m, {1.0, 1.0})),
                              Paravector::from_slice(-0.8, 1.5, UnitSliceVector::basis(m, 2))}) {
    const Multivector a = cauchy_boundary(f, d, q), b = direct_cauchy_boundary(f, d, q);
    EXPECT_LT(dist(a, b), 1e-12 * (1.0 + b.norm()));
  }
}

TEST(Operators, NearBoundaryIsFlagged) {
  const int m = 2;
  const auto d = disk_domain(m, 16);
  EvalDiagnostics diag;
  const Paravector q = Paravector::from_slice(0.0, 2.0 + 0.5 - 0.5 * d.boundary_spacing(), UnitSliceVector::basis(m, 1));
  cauchy_boundary(make_named(m, "one"), d, q, &diag);
  EXPECT_TRUE(diag.near_boundary);
  const Paravector onb = Paravector::from_slice(d.boundary_quad.nodes[0].u, d.boundary_quad.nodes[0].v,
                                                UnitSliceVector::basis(m, 1));
  EXPECT_THROW(cauchy_boundary(make_named(m, "one"), d, onb), SingularInput);
  EXPECT_THROW(cauchy_boundary(make_named(m, "one"), d, Paravector(m, 0.0, {0.0, 0.0})), SingularInput);
}

TEST(Operators, PrincipalValueOfMonogenicTraces) {
  for (int m : {1, 2}) {
    const auto d = disk_domain(m, 32);
    std::mt19937_64 rng(5);
    for (const char* name : {"identity", "square", "exp"}) {
      const auto f = make_named(m, name);
      for (std::size_t k : {std::size_t{0}, std::size_t{37}, std::size_t{100}}) {
        const auto z = d.boundary_quad.nodes[k];
        const Paravector q = Paravector::from_slice(z.u, z.v, direction(m, rng));
        EXPECT_LT(dist(plemelj_singular(f, d, q), f(q) * 0.5), 1e-9) << name;
        // Off-node boundary point.
        const auto piece = d.profile.pieces()[0];
        const Point2 y = piece.at(0.123);
        const Paravector qy = Paravector::from_slice(y.u, y.v, direction(m, rng));
        EXPECT_LT(dist(plemelj_singular(f, d, qy), f(qy) * 0.5), 1e-9) << name;
      }
    }
  }
}

TEST(Operators, PrincipalValueOfSampledTraces) {
  const int m = 2;
  const auto d = disk_domain(m, 48);
  const auto f = make_named(m, "square");
  const FieldSample t = tabulate(f, d);
  const auto z = d.boundary_quad.nodes[11];
  const Paravector q = Paravector::from_slice(z.u, z.v, UnitSliceVector::basis(m, 1));
  EXPECT_LT(dist(plemelj_singular(t, d, q), f(q) * 0.5), 1e-9);
  const Point2 y = d.profile.pieces()[0].at(0.4321);
  EXPECT_THROW(plemelj_singular(t, d, Paravector::from_slice(y.u, y.v, UnitSliceVector::basis(m, 1))), ArgumentError);
  EXPECT_THROW(plemelj_singular(f, d, Paravector::from_slice(0.0, 2.0, UnitSliceVector::basis(m, 1))), ArgumentError);
}

TEST(Operators, ConjugateTracePrincipalValueClosedForm) {
  // m = 1: for g = conj on the circle |z - c| = R, S g(w) = conj(c) - conj(w)/2 + R^2/(conj(c) - w).
  const auto d = disk_domain(1, 64, 0.2, 1.0, 0.5);
  const auto z = d.boundary_quad.nodes[40];
  const C w(z.u, z.v), c(0.2, 1.0);
  const C expect = std::conj(c) - std::conj(w) / 2.0 + 0.25 / (std::conj(c) - w);
  const UnitSliceVector e1 = UnitSliceVector::basis(1, 1);
  const Multivector got = plemelj_singular(make_named(1, "conjugate"), d, Paravector::from_slice(z.u, z.v, e1));
  EXPECT_LT(dist(got, complex_lift(expect, e1.to_multivector())), 1e-9);
}

TEST(Operators, DerivativeCauchyFormula) {
  const int m = 2;
  const auto d = build_domain(ProfileRegion::disk(1.0, 1.0, 0.6, 32), m);
  const Paravector q(m, 1.0, {1.0, 0.0});
  const Multivector one = Multivector::scalar(m, 1.0), e1 = Multivector::generator(m, 1);
  EXPECT_LT(dist(derivative_cauchy(make_named(m, "identity"), d, q, unit_index(m, 0)), one), 1e-9);
  EXPECT_LT(dist(derivative_cauchy(make_named(m, "square"), d, q, unit_index(m, 0)), one * 2.0 + e1 * 2.0), 1e-9);
  // Against finite differences of exp along each coordinate.
  const auto f = make_named(m, "exp");
  for (int j = 0; j <= m; ++j) {
    const double h = 1e-4;
    Paravector qp = q, qm = q;
    if (j == 0) {
      qp.scalar() += h;
      qm.scalar() -= h;
    } else {
      qp.vector(j - 1) += h;
      qm.vector(j - 1) -= h;
    }
    const Multivector fd = (f(qp) - f(qm)) * (0.5 / h);
    EXPECT_LT(dist(derivative_cauchy(f, d, q, unit_index(m, j)), fd), 1e-7) << j;
  }
  MultiIndex l2(m + 1, 0);
  l2[0] = 2;  // d^2/dq0^2 exp(q) = exp(q)
  EXPECT_LT(dist(derivative_cauchy(f, d, q, l2), f(q)), 1e-4);
  EXPECT_THROW(derivative_cauchy(f, d, Paravector(m, 5.0, {1.0, 0.0}), unit_index(m, 0)), DomainError);
}

TEST(Operators, LpNorms) {
  const int m = 2;
  const auto d = disk_domain(m, 32);
  EXPECT_NEAR(lp_norm(make_named(m, "one"), d, 4.0), std::pow(d.volume(), 0.25), 1e-12);
  EXPECT_EQ(lp_norm(make_polynomial(m, {Multivector(m)}), d, 2.0), 0.0);
  // |x_vec| on a rectangle: int v^2 dV = 2pi int int v^3 du dv.
  const auto r = build_domain(ProfileRegion::rectangle(-1.0, 0.5, 1.0, 2.0, 16), m);
  const Multivector one = Multivector::scalar(m, 1.0);
  const SliceFunction absv(StemFunction(m, [one](double, double v) { return StemValue(one * std::abs(v), one * 0.0); }));
  const double exact = 2.0 * pi * 1.5 * (16.0 - 1.0) / 4.0;
  EXPECT_NEAR(lp_norm(absv, r, 2.0), std::sqrt(exact), 1e-12);
  EXPECT_THROW(lp_norm(make_named(m, "one"), d, 0.5), ArgumentError);
}

TEST(Operators, TransformOfGImageRecoversCompactlySupportedFunction) {
  // A stem supported inside the disk: f = b(z) c with the bump b(z) = exp(-1/(1 - s)),
  // s = |z - c0|^2 / r^2, extended by even-odd symmetry through its F1/F2 split.
  const int m = 2;
  const auto d = disk_domain(m, 64);
  const double r2 = 0.4 * 0.4;
  const Multivector one = Multivector::scalar(m, 1.0);
  auto bump = [r2](double u, double v) {
    const double s = (u * u + (v - 2.0) * (v - 2.0)) / r2;
    return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0;
  };
  // Even-odd in v: F1(u, v) = b(u, |v|), F2 = 0.
  const SliceFunction f(StemFunction(m, [one, bump](double u, double v) {
    return StemValue(one * bump(u, std::abs(v)), one * 0.0);
  }));
  const SliceFunction gf = g_image(f);
  for (const Paravector& q : {Paravector::from_slice(0.05, 2.02, UnitSliceVector::basis(m, 1)),
                              Paravector::from_slice(-0.1, 1.9, UnitSliceVector::normalized(m, {1.0, -2.0}))}) {
    EXPECT_LT(dist(teodorescu(gf, d, q), f(q)), 2e-3);
  }
}

TEST(Verify, ProbePlacement) {
  for (const auto& profile : {ProfileRegion::disk(0.0, 2.0, 0.5, 16), ProfileRegion::rectangle(-1.0, 1.0, 0.5, 1.5, 8),
                              ProfileRegion::annulus_sector(0.0, 0.5, 1.0, 1.6, 0.3, 2.5, 8)}) {
    const auto d = build_domain(profile, 2);
    const double inr = profile.inradius();
    const auto in = interior_probes(d);
    ASSERT_EQ(in.size(), 8u);
    for (const auto& q : in) {
      const auto s = slice_coordinates(q);
      EXPECT_TRUE(profile.contains({s.u, s.v}));
      EXPECT_GE(profile.distance_to_boundary({s.u, s.v}), 0.2 * inr - 1e-12);
    }
    const auto out = exterior_probes(d);
    EXPECT_GE(out.size(), 4u);
    for (const auto& q : out) {
      const auto s = slice_coordinates(q);
      EXPECT_FALSE(profile.contains({s.u, s.v}));
      EXPECT_GE(profile.distance_to_boundary({s.u, s.v}), 0.5 * inr - 1e-12);
    }
    for (const auto& q : boundary_probes(d)) {
      const auto s = slice_coordinates(q);
      EXPECT_LT(profile.distance_to_boundary({s.u, s.v}), 1e-12);
    }
  }
}

TEST(Verify, ExtrapolationRecoversPolynomialLimit) {
  const int m = 1;
  std::vector<double> t;
  std::vector<Multivector> v;
  for (int k = 0; k < 6; ++k) {
    const double tk = 0.4 / std::pow(2.0, k);
    t.push_back(tk);
    v.push_back(Multivector::scalar(m, 3.0 + 2.0 * tk - tk * tk + 0.5 * tk * tk * tk));
  }
  const auto lim = extrapolate_to_zero(t, v);
  EXPECT_NEAR(lim.value[0], 3.0, 1e-13);
  EXPECT_TRUE(lim.converged);
}

TEST(Verify, EmpiricalOrders) {
  const auto e = empirical_orders({32, 64}, {1e-3, 2.5e-4});
  EXPECT_NEAR(e.orders[0], 2.0, 1e-12);
  const auto r = empirical_orders({32, 48, 64}, {1e-14, 3e-14, 2e-14});
  EXPECT_TRUE(r.at_roundoff);
  EXPECT_TRUE(std::isinf(r.min_order));
  EXPECT_THROW(empirical_orders({32}, {1.0}), ArgumentError);
}

TEST(Verify, IdentitiesOnTheReferenceDisk) {
  const int m = 2;
  const auto d = disk_domain(m, 32);
  const auto probes = interior_probes(d);
  EXPECT_LT(cauchy_reproduction_residual(make_named(m, "exp"), d, probes).max_residual, 1e-10);
  const auto bp = borel_pompeiu_residual(make_named(m, "conjugate"), d, probes);
  EXPECT_LT(bp.max_residual, 1e-8);
  EXPECT_EQ(bp.residuals.size(), probes.size());
  EXPECT_EQ(bp.resolution, 32);
  const auto ri = right_inverse_residual(make_named(m, "square"), d, probes);
  EXPECT_LT(ri.full.max_residual, 1e-8);
  EXPECT_LT(ri.slice_form.max_residual, 1e-8);
  EXPECT_EQ(borel_pompeiu_residual(make_polynomial(m, {Multivector(m)}), d, probes).max_residual, 0.0);
}

TEST(Verify, RightInverseSkipsProbesNearTheBoundary) {
  const int m = 2;
  const auto d = disk_domain(m, 16);
  const auto z = d.boundary_quad.nodes[5];
  std::vector<Paravector> probes = {Paravector::from_slice(0.0, 2.0, UnitSliceVector::basis(m, 1)),
                                    Paravector::from_slice(z.u, z.v, UnitSliceVector::basis(m, 1))};
  const auto r = right_inverse_residual(make_named(m, "one"), d, probes);
  EXPECT_EQ(r.full.probes.size(), 1u);
  EXPECT_EQ(r.full.flags.size(), 1u);
  EXPECT_THROW(right_inverse_residual(make_named(m, "one"), d, {}), ArgumentError);
}

TEST(Verify, ExteriorMonogenicityForNoise) {
  const int m = 2;
  const auto d = disk_domain(m, 24);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<StemValue> noise;
  for (std::size_t k = 0; k < regular_rule(d).size(); ++k) {
    Multivector a(m), b(m);
    for (int i = 0; i < a.size(); ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    noise.emplace_back(a, b);
  }
  auto probes = exterior_probes(d);
  probes.push_back(Paravector(m, 0.0, {0.0, 0.0}));  // real axis
  const auto r = exterior_monogenicity_check(FieldSample::tabulated(m, noise), d, probes);
  EXPECT_LT(r.max_residual, 1e-8);
  EXPECT_EQ(r.flags.size(), 1u);
}

TEST(Verify, PlemeljLimits) {
  const int m = 2;
  const auto d = disk_domain(m, 48);
  const auto r = plemelj_jump_check(make_named(m, "identity"), d, boundary_probes(d, 4));
  EXPECT_LT(r.interior.max_residual, 1e-5);
  EXPECT_LT(r.exterior.max_residual, 1e-5);
  EXPECT_LT(r.jump.max_residual, 1e-5);
  EXPECT_TRUE(r.jump.flags.empty());
  const auto z = plemelj_jump_check(make_polynomial(m, {Multivector(m)}), d, boundary_probes(d, 2));
  EXPECT_EQ(z.jump.max_residual, 0.0);
}

TEST(Verify, ExtensionCriterion) {
  const int m = 2;
  const auto d = disk_domain(m, 32);
  const auto sq = extension_criterion_check(tabulate(make_named(m, "square"), d), d);
  EXPECT_TRUE(sq.interior_extendable);
  EXPECT_FALSE(sq.exterior_extendable);
  const auto cj = extension_criterion_check(make_named(m, "conjugate"), d);
  EXPECT_FALSE(cj.interior_extendable);
  EXPECT_FALSE(cj.exterior_extendable);
  const auto zero = extension_criterion_check(make_polynomial(m, {Multivector(m)}), d);
  EXPECT_TRUE(zero.interior_extendable && zero.exterior_extendable);
  // Pole on the real axis outside the domain: monogenic across D.
  EXPECT_TRUE(extension_criterion_check(make_inv_shift(m, -5.0), d).interior_extendable);
}

TEST(Verify, BoundednessProbe) {
  const int m = 2;
  const auto d = disk_domain(m, 12);
  const auto b = boundedness_probe(d, 4.0, 3, 7);
  ASSERT_EQ(b.ratios.size(), 3u);
  EXPECT_GT(b.ratios[0], 0.0);
  EXPECT_EQ(b.max_ratio, *std::max_element(b.ratios.begin(), b.ratios.end()));
  // Trial 0 is f = 1: compare with the operator route.
  const SliceQuadrature rule = regular_rule(d);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto z = rule.nodes[k];
    const StemValue t = teodorescu_stem(make_named(m, "one"), d, z, {true, 2 * d.profile.resolution});
    double acc = 0.0;
    for (std::size_t j = 0; j < d.sphere_quad.size(); ++j) {
      const Multivector Fi = d.sphere_quad.nodes[j].to_multivector() * t.F2;
      acc += d.sphere_quad.weights[j] * (std::pow((t.F1 + Fi).norm(), 4) + std::pow((t.F1 - Fi).norm(), 4));
    }
    sum += rule.weights[k] * z.v * acc;
  }
  EXPECT_NEAR(b.ratios[0], std::pow(sum, 0.25) / std::pow(d.volume(), 0.25), 1e-12);
  EXPECT_THROW(boundedness_probe(d, 2.0, 3, 7), HypothesisViolation);
  EXPECT_THROW(boundedness_probe(disk_domain(3, 8), 3.0, 3, 7), HypothesisViolation);
  EXPECT_THROW(boundedness_probe(d, 4.0, 0, 7), ArgumentError);
}

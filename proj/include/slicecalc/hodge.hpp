#pragma once

// Discrete Bergman projection onto slice monogenic polynomials, its complement,
// and the boundary-trace test for the complement.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "operators.hpp"
#include "verify.hpp"

namespace slicecalc {

namespace detail {

inline std::vector<StemValue> interior_values(const FieldSample& f, const SliceQuadrature& rule) {
  if (f.is_function()) {
    std::vector<StemValue> out;
    out.reserve(rule.size());
    for (const auto& z : rule.nodes) out.push_back(f.function().stem_at(z.u, z.v));
    return out;
  }
  if (f.interior().size() != rule.size())
    throw ArgumentError("tabulated interior values do not match the regular slice rule");
  return f.interior();
}

// omega * w_k * v_k^(m-1): the volume weight of regular node k.
inline std::vector<double> volume_weights(const AxialDomain& d, const SliceQuadrature& rule) {
  std::vector<double> w(rule.size());
  const double omega = sphere_area(d.dim);
  for (std::size_t k = 0; k < rule.size(); ++k) w[k] = omega * rule.weights[k] * std::pow(rule.nodes[k].v, d.dim - 1);
  return w;
}

// conj(F1) G1 + conj(F2) G2 summed with volume weights.
inline Multivector stem_pairing(const std::vector<StemValue>& F, const std::vector<StemValue>& G,
                                const std::vector<double>& w) {
  Multivector s(F.front().dim());
  for (std::size_t k = 0; k < w.size(); ++k)
    s.add_scaled(F[k].F1.conjugate() * G[k].F1 + F[k].F2.conjugate() * G[k].F2, w[k]);
  return s;
}

}  // namespace detail

// <f, g> = integral of conj(f) g dV. Summing the integrand over I and -I removes the
// terms odd in I, so the sphere integral reduces to the factor omega.
inline Multivector inner_product(const FieldSample& f, const FieldSample& g, const AxialDomain& d) {
  detail::check_field(f, d);
  detail::check_field(g, d);
  const SliceQuadrature rule = regular_rule(d);
  const auto w = detail::volume_weights(d, rule);
  return detail::stem_pairing(detail::interior_values(f, rule), detail::interior_values(g, rule), w);
}

// Basis q^n e_A, n = 0..degree, over all blades A, ordered by n then blade index.
struct BergmanBasis {
  int dim = 0;
  int degree = 0;
  std::vector<SliceFunction> functions;
  Eigen::MatrixXd scalar_gram;  // <q^n, q^k>, real because both stems are scalar
  double condition = 0.0;       // of scalar_gram; the real Gram is block diagonal in it

  std::size_t size() const { return functions.size(); }
  int power(std::size_t i) const { return static_cast<int>(i) / (1 << dim); }
  int blade(std::size_t i) const { return static_cast<int>(i) % (1 << dim); }
  // <phi_i, phi_j> = conj(e_A) <q^n, q^k> e_B.
  Multivector gram(std::size_t i, std::size_t j) const {
    const Multivector ea = Multivector::basis_blade(dim, blade(i)), eb = Multivector::basis_blade(dim, blade(j));
    return ea.conjugate() * eb * scalar_gram(power(i), power(j));
  }
};

inline constexpr double kMaxGramCondition = 1e12;

inline BergmanBasis build_basis(const AxialDomain& d, int degree) {
  if (degree < 0) throw ArgumentError("basis degree must be nonnegative");
  BergmanBasis b;
  b.dim = d.dim;
  b.degree = degree;
  const int m = d.dim;
  for (int n = 0; n <= degree; ++n)
    for (int a = 0; a < (1 << m); ++a) {
      std::vector<Multivector> coeffs(static_cast<std::size_t>(n) + 1, Multivector(m));
      coeffs.back() = Multivector::basis_blade(m, a);
      b.functions.push_back(make_polynomial(m, coeffs, "q^" + std::to_string(n) + " " + blade_label(m, a)));
    }
  const SliceQuadrature rule = regular_rule(d);
  const auto w = detail::volume_weights(d, rule);
  b.scalar_gram = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Complex z(rule.nodes[k].u, rule.nodes[k].v);
    std::vector<Complex> zn(static_cast<std::size_t>(degree) + 1, 1.0);
    for (int n = 1; n <= degree; ++n) zn[n] = zn[n - 1] * z;
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; j <= degree; ++j) b.scalar_gram(i, j) += w[k] * (std::conj(zn[i]) * zn[j]).real();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.scalar_gram);
  const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  b.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (b.condition > kMaxGramCondition)
    throw IllConditioned("Gram matrix of degree " + std::to_string(degree) + " has condition " +
                             std::to_string(b.condition) + "; reduce the degree",
                         b.condition);
  return b;
}

struct HodgeSplit {
  std::vector<StemValue> p_part;   // at the regular slice nodes
  std::vector<StemValue> q_part;   // input minus p_part
  std::vector<double> coefficients;  // real coordinates, ordered like the basis
  SliceFunction p_function;         // the polynomial sum_n q^n a_n
  std::vector<double> orthogonality;  // |<phi_i, q_part>| / (||f|| ||phi_i||)
  double max_orthogonality = 0.0;
};

// Real least-squares projection onto the real span of the basis, with the scalar part
// of the inner product as the metric. Blade components decouple, so one QR of the
// weighted power design serves every blade.
inline HodgeSplit project_P(const FieldSample& f, const BergmanBasis& basis, const AxialDomain& d) {
  detail::check_field(f, d);
  if (basis.dim != d.dim) throw DimensionMismatch("basis and domain live in different algebras");
  const int m = d.dim, N = basis.degree, nb = 1 << m;
  const SliceQuadrature rule = regular_rule(d);
  const auto w = detail::volume_weights(d, rule);
  const auto F = detail::interior_values(f, rule);
  const auto K = static_cast<Eigen::Index>(rule.size());

  Eigen::MatrixXd A(2 * K, N + 1), rhs(2 * K, nb);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double s = std::sqrt(w[static_cast<std::size_t>(k)]);
    const Complex z(rule.nodes[static_cast<std::size_t>(k)].u, rule.nodes[static_cast<std::size_t>(k)].v);
    Complex zn(1.0, 0.0);
    for (int n = 0; n <= N; ++n) {
      A(2 * k, n) = s * zn.real();
      A(2 * k + 1, n) = s * zn.imag();
      zn *= z;
    }
    for (int a = 0; a < nb; ++a) {
      rhs(2 * k, a) = s * F[static_cast<std::size_t>(k)].F1[a];
      rhs(2 * k + 1, a) = s * F[static_cast<std::size_t>(k)].F2[a];
    }
  }
  const Eigen::MatrixXd c = A.colPivHouseholderQr().solve(rhs);

  HodgeSplit out;
  std::vector<Multivector> an(static_cast<std::size_t>(N) + 1, Multivector(m));
  for (int n = 0; n <= N; ++n)
    for (int a = 0; a < nb; ++a) {
      out.coefficients.push_back(c(n, a));
      an[static_cast<std::size_t>(n)][a] = c(n, a);
    }
  out.p_function = make_polynomial(m, an, "P(" + (f.is_function() ? f.function().label() : std::string("field")) + ")");
  out.p_part.reserve(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) {
    out.p_part.push_back(out.p_function.stem_at(rule.nodes[k].u, rule.nodes[k].v));
    out.q_part.push_back(F[k] - out.p_part.back());
  }

  // <q^n e_A, q_part> = conj(e_A) <q^n, q_part>, so its norm is |<q^n, q_part>|.
  const double fnorm = std::sqrt(std::max(0.0, detail::stem_pairing(F, F, w)[0]));
  std::vector<double> per_power(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    Multivector s(m);
    for (std::size_t k = 0; k < F.size(); ++k) {
      const Complex zn = std::pow(Complex(rule.nodes[k].u, rule.nodes[k].v), n);
      s.add_scaled(out.q_part[k].F1, w[k] * zn.real()).add_scaled(out.q_part[k].F2, w[k] * zn.imag());
    }
    const double denom = fnorm * std::sqrt(basis.scalar_gram(n, n));
    per_power[static_cast<std::size_t>(n)] = denom > 0.0 ? s.norm() / denom : s.norm();
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.orthogonality.push_back(per_power[static_cast<std::size_t>(basis.power(i))]);
    out.max_orthogonality = std::max(out.max_orthogonality, out.orthogonality.back());
  }
  return out;
}

// Slice function with stem |v|^exponent (F1, F2); |v| is even, so the even-odd
// conditions survive.
inline SliceFunction weight_map(const SliceFunction& f, int exponent) {
  if (exponent == 0) return f;
  if (exponent < 0) throw ArgumentError("weight exponent must be nonnegative");
  const SliceFunction src = f;
  const double e = exponent;
  StemPartialsMap partials;
  if (f.stem().has_analytic_partials())
    partials = [src, e](double u, double v) {
      const StemPartials p = src.stem().partials(u, v);
      const double av = std::abs(v), wv = std::pow(av, e);
      const double dw = e * std::pow(av, e - 1.0) * (v < 0.0 ? -1.0 : 1.0);
      return StemPartials{p.du * wv, p.dv * wv + src.stem_at(u, v) * dw, true};
    };
  return SliceFunction(StemFunction(
      f.dim(), [src, e](double u, double v) { return src.stem_at(u, v) * std::pow(std::abs(v), e); },
      std::move(partials), f.stem().support(), "|v|^" + std::to_string(exponent) + " " + f.label()));
}

struct QImageTrace {
  ResidualReport q_trace;  // |trace of T(|x|^(m-1) Q f)|
  ResidualReport p_trace;  // the same for P f, the control
};

// Boundary trace of T(|x_vec|^(m-1) g) at boundary-node probes, extrapolated from
// q - t n with t = t0, t0/2, t0/4 and t0 = 0.2 * inradius. Q f is evaluated as
// f - P f when f is a slice function and from the tabulated split otherwise.
inline QImageTrace q_image_trace_check(const FieldSample& f, const BergmanBasis& basis, const AxialDomain& d,
                                       std::size_t count = 8, unsigned seed = 7) {
  const auto start = detail::Clock::now();
  const HodgeSplit split = project_P(f, basis, d);
  const int m = d.dim;
  std::optional<FieldSample> qf, pf;
  if (f.is_function()) {
    qf = FieldSample(weight_map(f.function() - split.p_function, m - 1));
  } else {
    const SliceQuadrature rule = regular_rule(d);
    std::vector<StemValue> q = split.q_part;
    for (std::size_t k = 0; k < q.size(); ++k) q[k] *= std::pow(rule.nodes[k].v, m - 1);
    qf = FieldSample::tabulated(m, std::move(q));
  }
  pf = FieldSample(weight_map(split.p_function, m - 1));

  const auto probes = boundary_probes(d, count, seed);
  const auto& b = d.boundary_quad;
  const double t0 = 0.2 * d.profile.inradius();
  const std::vector<double> ts{t0, 0.5 * t0, 0.25 * t0};
  std::vector<detail::ProbeOutcome> qo(probes.size()), po(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    const auto p = detail::probe_point(probes[i]);
    const std::size_t k = detail::node_index(d, i, count);
    const Point2 w{p->u, p->v}, n = b.normals[k];
    for (auto [field, outcome] : {std::pair{&*qf, &qo[i]}, std::pair{&*pf, &po[i]}}) {
      std::vector<Multivector> vals;
      for (double t : ts) vals.push_back(sphere_combine(teodorescu_stem(*field, d, w - t * n), p->I, d.sphere_quad));
      const OneSidedLimit lim = extrapolate_to_zero(ts, vals);
      outcome->residual = lim.value.norm();
      if (!lim.converged) outcome->flag = "extrapolation ratio test failed";
    }
  });
  return {detail::assemble("q_image_trace", d, probes, qo, start),
          detail::assemble("p_image_trace_control", d, probes, po, start)};
}

}  // namespace slicecalc

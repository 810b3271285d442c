#pragma once

// Slice Cauchy kernel S^-1(q, x) = -(q^2 - 2 Re[x] q + |x|^2)^{-1} (q - conj(x)), the global kernel
// K = 2 S^-1 / (omega_{m-1} |x_vec|^{m-1}) and its q-derivatives.

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "slicecalc/clifford.hpp"
#include "slicecalc/geometry.hpp"
#include "slicecalc/slicefn.hpp"

namespace slicecalc {

// a + I b for a complex number a + ib.
inline Multivector complex_lift(Complex c, const Multivector& I) {
  Multivector r = I * c.imag();
  r[0] += c.real();
  return r;
}

inline Multivector cauchy_kernel(const Paravector& q, const Paravector& x) {
  if (q.dim() != x.dim()) throw DimensionMismatch("kernel arguments from different algebras");
  const int m = q.dim();
  const double zeta2 = q.vector_norm() * q.vector_norm();
  const double x0 = x.scalar(), q0 = q.scalar();
  // P = q^2 - 2 x0 q + |x|^2 is again a paravector.
  Paravector P(m);
  P.scalar() = q0 * q0 - zeta2 - 2.0 * x0 * q0 + x.norm_sq();
  for (int i = 0; i < m; ++i) P.vector(i) = 2.0 * (q0 - x0) * q.vector(i);
  if (P.norm() < 1e-13 * (1.0 + q.norm_sq() + x.norm_sq())) {
    std::ostringstream os;
    os << "q lies on the sphere [x] with center " << x0 << " and radius " << x.vector_norm();
    throw SingularInput(os.str());
  }
  return -(paravector_inverse(P) * (q - x.conjugate()));
}

struct KernelValue {
  Multivector value;
  double q_distance_I = 0.0;   // |x - q_I| with I = I_x
  double q_distance_mI = 0.0;  // |x - q_{-I}|
};

inline KernelValue cauchy_kernel_value(const Paravector& q, const Paravector& x) {
  const double du = x.scalar() - q.scalar(), xv = x.vector_norm(), zeta = q.vector_norm();
  KernelValue k;
  k.q_distance_I = std::hypot(du, xv - zeta);
  k.q_distance_mI = std::hypot(du, xv + zeta);
  k.value = cauchy_kernel(q, x);
  return k;
}

struct SliceDecomposition {
  AlphaBeta ab;
  Multivector value;
};

// S^-1(q, x) = alpha (x - q_I)^{-1} + beta (x - q_{-I})^{-1} for x = u + I v on C_I.
inline SliceDecomposition kernel_slice_decomposition(const Paravector& q, const UnitSliceVector& I, double u,
                                                     double v) {
  const SliceCoordinates s = slice_coordinates(q);
  if (!s.I) throw SingularInput("slice decomposition needs q off the real axis");
  const Complex z(u, v), w(s.u, s.v);
  if (z == w || z == std::conj(w)) throw SingularInput("x coincides with q_I or q_{-I}");
  const Multivector Im = I.to_multivector();
  SliceDecomposition d{alpha_beta(*s.I, I), Multivector(q.dim())};
  d.value = d.ab.alpha * complex_lift(1.0 / (z - w), Im) + d.ab.beta * complex_lift(1.0 / (z - std::conj(w)), Im);
  return d;
}

inline Multivector global_kernel(const Paravector& q, const Paravector& x) {
  const double xv = x.vector_norm();
  if (xv == 0.0) throw SingularInput("global kernel needs x off the real axis");
  const int m = x.dim();
  return cauchy_kernel(q, x) * (2.0 / (sphere_area(m) * std::pow(xv, m - 1)));
}

// Multi-index over the m+1 coordinates (q0, q1, ..., qm).
using MultiIndex = std::vector<int>;

inline MultiIndex unit_index(int m, int coordinate) {
  MultiIndex l(m + 1, 0);
  l.at(coordinate) = 1;
  return l;
}

namespace detail {

inline int check_multi_index(const MultiIndex& l, int m) {
  if (static_cast<int>(l.size()) != m + 1)
    throw ArgumentError("multi-index needs " + std::to_string(m + 1) + " entries");
  int order = 0;
  for (int a : l) {
    if (a < 0) throw ArgumentError("multi-index entries must be nonnegative");
    order += a;
  }
  if (order > 2) throw UnsupportedOrder("derivative kernels are available for |l| <= 2, got " + std::to_string(order));
  return order;
}

// d/dq_j S^-1(q, x) via the slice form. Differentiating alpha and beta accounts for the
// movement of I_q when j >= 1.
inline Multivector cauchy_kernel_partial(const Paravector& q, const Paravector& x, int j) {
  const int m = q.dim();
  if (j == 0) {
    // P = q^2 - 2 x0 q + |x|^2 and dP/dq0 = 2(q - x0) commute, so
    // d/dq0 S^-1 = P^-1 dP P^-1 (q - x-bar) - P^-1.
    const Multivector k = cauchy_kernel(q, x);  // singularity check
    Paravector P(m), dP(m);
    const double x0 = x.scalar(), q0 = q.scalar(), zeta2 = q.vector_norm() * q.vector_norm();
    P.scalar() = q0 * q0 - zeta2 - 2.0 * x0 * q0 + x.norm_sq();
    dP.scalar() = 2.0 * (q0 - x0);
    for (int i = 0; i < m; ++i) {
      P.vector(i) = 2.0 * (q0 - x0) * q.vector(i);
      dP.vector(i) = 2.0 * q.vector(i);
    }
    const Multivector Pi = paravector_inverse(P).to_multivector();
    return -(Pi * dP.to_multivector() * k) - Pi;
  }
  const SliceCoordinates sq = slice_coordinates(q), sx = slice_coordinates(x);
  if (!sq.I) throw SingularInput("derivative kernels need q off the real axis");
  if (!sx.I) throw SingularInput("derivative kernels need x off the real axis");
  cauchy_kernel(q, x);  // singularity check
  const Multivector I = sx.I->to_multivector(), Iq = sq.I->to_multivector();
  const AlphaBeta ab = alpha_beta(*sq.I, *sx.I);
  const Complex z(sx.u, sx.v), w(sq.u, sq.v), wb = std::conj(w);
  const Complex a1 = 1.0 / (z - w), b1 = 1.0 / (z - wb);
  const double zeta = sq.v, qj = q.vector(j - 1);
  const Complex i(0.0, 1.0);
  Multivector r = (ab.alpha * complex_lift(i * a1 * a1, I) + ab.beta * complex_lift(-i * b1 * b1, I)) * (qj / zeta);
  const Multivector dIq = (Multivector::generator(m, j) - Iq * (qj / zeta)) * (1.0 / zeta);
  const Multivector dalpha = dIq * I * (-0.5);
  r += dalpha * complex_lift(a1, I) - dalpha * complex_lift(b1, I);  // d beta = -d alpha
  return r;
}

}  // namespace detail

// d^l S^-1(q, x) / dq^l for |l| <= 2; second order by central differences of the first.
inline Multivector cauchy_kernel_derivative(const Paravector& q, const Paravector& x, const MultiIndex& l) {
  const int m = q.dim();
  const int order = detail::check_multi_index(l, m);
  if (order == 0) return cauchy_kernel(q, x);
  int first = -1, second = -1;
  for (int j = 0; j <= m; ++j)
    for (int k = 0; k < l[j]; ++k) (first < 0 ? first : second) = j;
  if (order == 1) return detail::cauchy_kernel_partial(q, x, first);
  constexpr double h = 1e-5;
  Paravector qp = q, qm = q;
  if (second == 0) {
    qp.scalar() += h;
    qm.scalar() -= h;
  } else {
    qp.vector(second - 1) += h;
    qm.vector(second - 1) -= h;
  }
  return (detail::cauchy_kernel_partial(qp, x, first) - detail::cauchy_kernel_partial(qm, x, first)) * (0.5 / h);
}

// K_l(q, x) = d^l K(q, x) / dq^l.
inline Multivector derivative_kernel(const Paravector& q, const Paravector& x, const MultiIndex& l) {
  const double xv = x.vector_norm();
  if (xv == 0.0) throw SingularInput("global kernel needs x off the real axis");
  const int m = x.dim();
  return cauchy_kernel_derivative(q, x, l) * (2.0 / (sphere_area(m) * std::pow(xv, m - 1)));
}

}  // namespace slicecalc

#include "cayley/curvature.hpp"

namespace cayley {

double curvature_full(const CayleyVector& x, const CayleyVector& y, const CayleyVector& z,
                      const CayleyVector& w, const CurvatureScale& scale) {
  const Octonion &a = x.u, &b = x.v;
  const Octonion &c = y.u, &d = y.v;
  const Octonion &e = z.u, &f = z.v;
  const Octonion &g = w.u, &h = w.v;

  double t = -4.0 * inner(a, e) * inner(c, g) + 4.0 * inner(c, e) * inner(a, g)
             - 4.0 * inner(b, f) * inner(d, h) + 4.0 * inner(d, f) * inner(b, h);
  t += inner(e * d.conjugate(), g * b.conjugate()) - inner(e * b.conjugate(), g * d.conjugate());
  t += inner(c * f.conjugate(), a * h.conjugate()) - inner(a * f.conjugate(), c * h.conjugate());
  const Octonion left = a * d.conjugate() - c * b.conjugate();
  const Octonion right = g * f.conjugate() - e * h.conjugate();
  t += inner(left, right);
  return 0.25 * scale.lambda_sq() * t;
}

double curvature_diag(const CayleyVector& x, const CayleyVector& y, const CurvatureScale& scale) {
  const Octonion &a = x.u, &b = x.v;
  const Octonion &c = y.u, &d = y.v;

  const Octonion ad = a * d.conjugate();
  const Octonion cb = c * b.conjugate();
  const Octonion diff = ad - cb;
  double t = -4.0 * a.norm_sq() * c.norm_sq() + 4.0 * inner(a, c) * inner(a, c)
             - 4.0 * b.norm_sq() * d.norm_sq() + 4.0 * inner(b, d) * inner(b, d);
  t += 2.0 * inner(ad, cb) - 2.0 * inner(a * b.conjugate(), c * d.conjugate());
  t -= diff.norm_sq();
  return 0.25 * scale.lambda_sq() * t;
}

double gauss_2ff_inner(const CayleyVector& x, const CayleyVector& y, const CayleyVector& z,
                       const CayleyVector& w, const CurvatureScale& scale) {
  const double curvature_terms = curvature_full(x, z, w, y, scale) + curvature_full(x, w, z, y, scale);
  const double metric_terms = inner(x, y) * inner(z, w) + inner(x, w) * inner(y, z) +
                              inner(x, z) * inner(w, y);
  return (curvature_terms + scale.lambda_sq() * metric_terms) / 3.0;
}

double sectional_curvature(const CayleyVector& x, const CayleyVector& y,
                           const CurvatureScale& scale) {
  const double cross = inner(x, y);
  const double area_sq = x.norm_sq() * y.norm_sq() - cross * cross;
  return -curvature_diag(x, y, scale) / area_sq;
}

}  // namespace cayley

#include "walker4/immersion.hpp"

#include <cmath>

#include "walker4/errors.hpp"

namespace walker4 {

namespace {

ChartPoint ambient(const Vec4& pos) { return {pos[0], pos[1], pos[2], pos[3]}; }

// Index pairs for the packed (11,12,13,22,23,33) layout.
constexpr int kPairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};

double degeneracy_threshold(const Mat3& g) {
  double scale = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(g[i][j]));
  return 1e-9 * scale * scale * scale;
}

}  // namespace

std::array<Vec4, 6> covariant_second_partials(const ScalarField2& field, const Immersion& im,
                                              const DomainPoint& p) {
  const Vec4 pos = im.position(p);
  const ScalarField2::Partials fp = field.eval(pos[2], pos[3]);
  Vec4 d[3];
  for (int i = 0; i < 3; ++i) d[i] = im.first_partial(p, i);

  std::array<Vec4, 6> out;
  for (int k = 0; k < 6; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    Vec4 v = im.second_partial(p, i, j);
    // Only Gamma^1_44 and Gamma^2_33 survive for this metric family.
    v[0] += fp.f4 * d[i][3] * d[j][3];
    v[1] += fp.f3 * d[i][2] * d[j][2];
    out[k] = v;
  }
  return out;
}

GaussMap gauss_map_generic(const ScalarField2& field, const Immersion& im,
                           const DomainPoint& p) {
  const Vec4 pos = im.position(p);
  const double f = field.value(pos[2], pos[3]);
  const Vec4 d1 = im.first_partial(p, 0);
  const Vec4 d2 = im.first_partial(p, 1);
  const Vec4 d3 = im.first_partial(p, 2);

  const Vec4 n = triple_product_with_f(f, d1, d2, d3);

  const double tangent_scale = norm_euclid(d1) * norm_euclid(d2) * norm_euclid(d3);
  if (norm_euclid(n) <= 1e-10 * std::max(1.0, tangent_scale))
    throw RankDeficient("coordinate tangents are linearly dependent");

  const double q = inner_with_f(f, n, n);
  if (std::abs(q) <= kNullTolerance * norm2_euclid(n))
    throw DegenerateNormal("normal direction is lightlike");

  GaussMap gm;
  gm.raw = n;
  gm.norm = std::sqrt(std::abs(q));
  gm.unit = n / gm.norm;
  gm.character = q > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
  return gm;
}

FirstForm first_form(const ScalarField2& field, const Immersion& im, const DomainPoint& p) {
  const Vec4 pos = im.position(p);
  const double f = field.value(pos[2], pos[3]);
  Vec4 d[3];
  for (int i = 0; i < 3; ++i) d[i] = im.first_partial(p, i);

  FirstForm ff;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) ff.g[i][j] = ff.g[j][i] = inner_with_f(f, d[i], d[j]);

  ff.det = det3(ff.g);
  if (std::abs(ff.det) <= degeneracy_threshold(ff.g))
    throw DegenerateMetric("induced metric is degenerate");

  const Mat3 adj = adjugate3(ff.g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ff.inv[i][j] = adj[i][j] / ff.det;
  return ff;
}

SecondForm second_form(const ScalarField2& field, const Immersion& im, const DomainPoint& p) {
  const GaussMap gm = gauss_map_generic(field, im, p);
  const Vec4 pos = im.position(p);
  const double f = field.value(pos[2], pos[3]);
  const std::array<Vec4, 6> cov = covariant_second_partials(field, im, p);

  SecondForm sf;
  for (int k = 0; k < 6; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    sf.h[i][j] = sf.h[j][i] = inner_with_f(f, cov[k], gm.unit);
  }
  return sf;
}

Curvatures curvatures(const FirstForm& first, const SecondForm& second) {
  Curvatures c;
  c.shape = mul3(first.inv, second.h);
  c.gaussian = det3(second.h) / first.det;
  c.mean = trace3(c.shape) / 3.0;
  return c;
}

InvariantBundle invariant_bundle(const ScalarField2& field, const Immersion& im,
                                 const DomainPoint& p) {
  InvariantBundle b;
  b.first = first_form(field, im, p);
  b.gauss = gauss_map_generic(field, im, p);
  b.second = second_form(field, im, p);
  const Curvatures c = curvatures(b.first, b.second);
  b.shape = c.shape;
  b.gaussian = c.gaussian;
  b.mean = c.mean;
  return b;
}

namespace {

// sqrt|det g| * g^kj * d_j(phi_i) for all (k, i): the flux whose outer divergence the
// stencil differentiates.
std::array<Vec4, 3> divergence_flux(const ScalarField2& field, const Immersion& im,
                                    const DomainPoint& p) {
  const FirstForm ff = first_form(field, im, p);
  const double w = std::sqrt(std::abs(ff.det));
  Vec4 d[3];
  for (int j = 0; j < 3; ++j) d[j] = im.first_partial(p, j);

  std::array<Vec4, 3> flux{};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) flux[k] = flux[k] + (w * ff.inv[k][j]) * d[j];
  return flux;
}

Vec4 lb_fd_step(const ScalarField2& field, const Immersion& im, const DomainPoint& p,
                double h) {
  const double w0 = std::sqrt(std::abs(first_form(field, im, p).det));
  Vec4 sum{};
  for (int k = 0; k < 3; ++k) {
    DomainPoint fwd = p, bwd = p;
    (k == 0 ? fwd.u1 : k == 1 ? fwd.u2 : fwd.u3) += h;
    (k == 0 ? bwd.u1 : k == 1 ? bwd.u2 : bwd.u3) -= h;
    const Vec4 fp = divergence_flux(field, im, fwd)[k];
    const Vec4 fm = divergence_flux(field, im, bwd)[k];
    sum = sum + (1.0 / (2.0 * h)) * (fp - fm);
  }
  return (1.0 / w0) * sum;
}

}  // namespace

Vec4 laplace_beltrami_fd(const ScalarField2& field, const Immersion& im, const DomainPoint& p,
                         const LaplaceFdOptions& opts) {
  const Vec4 base = lb_fd_step(field, im, p, opts.step);
  if (!opts.richardson) return base;
  const Vec4 half = lb_fd_step(field, im, p, opts.step / 2.0);
  return (1.0 / 3.0) * (4.0 * half - base);
}

}  // namespace walker4

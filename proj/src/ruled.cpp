#include "walker4/ruled.hpp"

#include <cmath>

#include "walker4/errors.hpp"

namespace walker4 {

double director_target(RuledType type) {
  switch (type) {
    case RuledType::Type1: return 1.0;
    case RuledType::Type2: return -1.0;
    case RuledType::Type3: return 0.0;
  }
  return 0.0;
}

namespace {

class RuledImmersion final : public Immersion {
 public:
  RuledImmersion(CurveJet alpha, CurveJet beta, CurveJet gamma)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {}

  Vec4 position(const DomainPoint& p) const override {
    const auto a = alpha_.jet(p.u1), b = beta_.jet(p.u1), g = gamma_.jet(p.u1);
    return a.p + p.u2 * b.p + p.u3 * g.p;
  }

  Vec4 first_partial(const DomainPoint& p, int i) const override {
    const auto a = alpha_.jet(p.u1), b = beta_.jet(p.u1), g = gamma_.jet(p.u1);
    switch (i) {
      case 0: return a.d1 + p.u2 * b.d1 + p.u3 * g.d1;
      case 1: return b.p;
      case 2: return g.p;
    }
    throw ArgumentError("partial index out of range");
  }

  Vec4 second_partial(const DomainPoint& p, int i, int j) const override {
    if (i > j) std::swap(i, j);
    const auto a = alpha_.jet(p.u1), b = beta_.jet(p.u1), g = gamma_.jet(p.u1);
    if (i == 0 && j == 0) return a.d2 + p.u2 * b.d2 + p.u3 * g.d2;
    if (i == 0 && j == 1) return b.d1;
    if (i == 0 && j == 2) return g.d1;
    return Vec4{};  // rulings are planes
  }

 private:
  CurveJet alpha_, beta_, gamma_;
};

// Everything the closed forms consume at one domain point.
struct Frame {
  CurveJet::Jet A, B, G;
  Vec4 D;    // tangent along u1
  Vec4 Dp;   // d D / d u1
  Vec4 pos;
  ScalarField2::Partials fp;  // field partials at (pos3, pos4)
};

Frame frame_at(const RuledHypersurface& h, const DomainPoint& p) {
  Frame fr;
  fr.A = h.alpha().jet(p.u1);
  fr.B = h.beta().jet(p.u1);
  fr.G = h.gamma().jet(p.u1);
  fr.D = fr.A.d1 + p.u2 * fr.B.d1 + p.u3 * fr.G.d1;
  fr.Dp = fr.A.d2 + p.u2 * fr.B.d2 + p.u3 * fr.G.d2;
  fr.pos = fr.A.p + p.u2 * fr.B.p + p.u3 * fr.G.p;
  fr.fp = h.field().eval(fr.pos[2], fr.pos[3]);
  return fr;
}

CoefficientSet coefficients_from(const Frame& fr) {
  CoefficientSet cs;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cs.E[i][j] = fr.G.p[i] * fr.D[j];
      cs.F[i][j] = fr.B.p[i] * fr.D[j];
    }
  const double f = fr.fp.f;
  const Vec4& D = fr.D;
  const Vec4& B = fr.B.p;
  const Vec4& G = fr.G.p;
  cs.a = 2 * f * D[2] * D[3] + 2 * (D[0] * D[2] + D[1] * D[3]);
  cs.b = f * (cs.F[2][3] + cs.F[3][2]) + (cs.F[0][2] + cs.F[2][0]) + (cs.F[1][3] + cs.F[3][1]);
  cs.c = f * (cs.E[2][3] + cs.E[3][2]) + (cs.E[0][2] + cs.E[2][0]) + (cs.E[1][3] + cs.E[3][1]);
  cs.e = f * (B[2] * G[3] + B[3] * G[2]) + (B[0] * G[2] + B[2] * G[0]) +
         (B[1] * G[3] + B[3] * G[1]);
  return cs;
}

ClosedGaussMap gauss_from(const Frame& fr, double tau_rel = kNullTolerance) {
  // 1-based views keep the component algebra readable.
  const auto E = [&fr](int i, int j) { return fr.G.p[i - 1] * fr.D[j - 1]; };
  const auto B = [&fr](int i) { return fr.B.p[i - 1]; };
  const double f = fr.fp.f;

  const double g3 = B(2) * (E(3, 4) - E(4, 3)) + B(3) * (E(4, 2) - E(2, 4)) +
                    B(4) * (E(2, 3) - E(3, 2));
  const double g4 = B(1) * (E(4, 3) - E(3, 4)) + B(3) * (E(1, 4) - E(4, 1)) +
                    B(4) * (E(3, 1) - E(1, 3));
  const double g1 = -f * g4 + B(1) * (E(2, 4) - E(4, 2)) + B(2) * (E(4, 1) - E(1, 4)) +
                    B(4) * (E(1, 2) - E(2, 1));
  const double g2 = -f * g3 + B(1) * (E(3, 2) - E(2, 3)) + B(2) * (E(1, 3) - E(3, 1)) +
                    B(3) * (E(2, 1) - E(1, 2));

  ClosedGaussMap gm;
  gm.components = {g1, g2, g3, g4};
  const double radicand = 2 * g1 * g3 + 2 * g2 * g4 + 2 * f * g3 * g4;
  if (std::abs(radicand) <= tau_rel * std::max(1e-300, norm2_euclid(gm.components)))
    throw DegenerateNormal("closed-form normal direction is lightlike");
  gm.norm = std::sqrt(std::abs(radicand));
  gm.unit = gm.components / gm.norm;
  gm.character = radicand > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
  return gm;
}

// Second-form numerators: h_ij = n_ij / norm. Shared by the second form, the
// minimality residual and the flatness check.
struct SecondFormTerms {
  double n11, n12, n13, n22, n23, n33;
  ClosedGaussMap gm;
};

SecondFormTerms second_form_terms(const Frame& fr) {
  SecondFormTerms t{.n11 = 0, .n12 = 0, .n13 = 0, .n22 = 0, .n23 = 0, .n33 = 0,
                    .gm = gauss_from(fr)};
  const Vec4& G = t.gm.components;
  const double f = fr.fp.f, f3 = fr.fp.f3, f4 = fr.fp.f4;
  const Vec4& D = fr.D;
  const Vec4& Dp = fr.Dp;
  const Vec4& B = fr.B.p;
  const Vec4& Bp = fr.B.d1;
  const Vec4& Gc = fr.G.p;
  const Vec4& Gp = fr.G.d1;

  // Pairing of a candidate covariant-derivative vector v with the unnormalized
  // normal: v1 G3 + v3 G1 + v2 G4 + v4 G2 + f (v3 G4 + v4 G3).
  const auto pair = [&](const Vec4& v) {
    return v[0] * G[2] + v[2] * G[0] + v[1] * G[3] + v[3] * G[1] +
           f * (v[2] * G[3] + v[3] * G[2]);
  };

  t.n11 = f3 * G[3] * D[2] * D[2] + f4 * G[2] * D[3] * D[3] + pair(Dp);
  t.n12 = f3 * B[2] * G[3] * D[2] + f4 * B[3] * G[2] * D[3] + pair(Bp);
  t.n13 = f3 * Gc[2] * G[3] * D[2] + f4 * Gc[3] * G[2] * D[3] + pair(Gp);
  t.n22 = f3 * B[2] * B[2] * G[3] + f4 * B[3] * B[3] * G[2];
  t.n23 = f3 * B[2] * Gc[2] * G[3] + f4 * B[3] * Gc[3] * G[2];
  t.n33 = f3 * Gc[2] * Gc[2] * G[3] + f4 * Gc[3] * Gc[3] * G[2];
  return t;
}

struct AdjugateWeights {
  double w11, w12, w13, w22, w23, w33;
};

AdjugateWeights minimality_weights(RuledType type, const CoefficientSet& cs, bool orthogonal) {
  const double a = cs.a, b = cs.b, c = cs.c, e = orthogonal ? 0.0 : cs.e;
  switch (type) {
    case RuledType::Type1:
      return {1 - e * e, c * e - b, b * e - c, a - c * c, b * c - a * e, a - b * b};
    case RuledType::Type2:
      return {1 - e * e, c * e + b, b * e + c, -a - c * c, b * c - a * e, -a - b * b};
    case RuledType::Type3:
      return {-e * e, c * e, b * e, -c * c, b * c - a * e, -b * b};
  }
  return {};
}

constexpr double kOrthogonalityTol = 1e-6;

// Forward-mode scalar carrying the gradient with respect to (u1, u2, u3).
struct Grad3 {
  double v = 0;
  std::array<double, 3> d{};

  Grad3() = default;
  Grad3(double value) : v(value) {}
  Grad3(double value, double d1, double d2, double d3) : v(value), d{d1, d2, d3} {}

  friend Grad3 operator+(const Grad3& x, const Grad3& y) {
    return {x.v + y.v, x.d[0] + y.d[0], x.d[1] + y.d[1], x.d[2] + y.d[2]};
  }
  friend Grad3 operator-(const Grad3& x, const Grad3& y) {
    return {x.v - y.v, x.d[0] - y.d[0], x.d[1] - y.d[1], x.d[2] - y.d[2]};
  }
  friend Grad3 operator-(const Grad3& x) { return {-x.v, -x.d[0], -x.d[1], -x.d[2]}; }
  friend Grad3 operator*(const Grad3& x, const Grad3& y) {
    return {x.v * y.v, x.d[0] * y.v + x.v * y.d[0], x.d[1] * y.v + x.v * y.d[1],
            x.d[2] * y.v + x.v * y.d[2]};
  }
};

// Coefficient functions and tangents lifted to Grad3.
struct GradFrame {
  Grad3 D[4], B[4], G[4];
  Grad3 a, b, c, e;
};

GradFrame grad_frame(const Frame& fr) {
  GradFrame gf;
  for (int i = 0; i < 4; ++i) {
    gf.D[i] = {fr.D[i], fr.Dp[i], fr.B.d1[i], fr.G.d1[i]};
    gf.B[i] = {fr.B.p[i], fr.B.d1[i], 0, 0};
    gf.G[i] = {fr.G.p[i], fr.G.d1[i], 0, 0};
  }
  // f along the surface: chain rule through (phi3, phi4).
  const Grad3 f = {fr.fp.f,
                   fr.fp.f3 * fr.D[2] + fr.fp.f4 * fr.D[3],
                   fr.fp.f3 * fr.B.p[2] + fr.fp.f4 * fr.B.p[3],
                   fr.fp.f3 * fr.G.p[2] + fr.fp.f4 * fr.G.p[3]};

  const auto inner_g = [&f](const Grad3 u[4], const Grad3 v[4]) {
    return u[0] * v[2] + u[2] * v[0] + u[1] * v[3] + u[3] * v[1] +
           f * (u[2] * v[3] + u[3] * v[2]);
  };
  gf.a = inner_g(gf.D, gf.D);
  gf.b = inner_g(gf.D, gf.B);
  gf.c = inner_g(gf.D, gf.G);
  gf.e = inner_g(gf.B, gf.G);
  return gf;
}

}  // namespace

RuledHypersurface::RuledHypersurface(RuledType type, CurveJet alpha, CurveJet beta,
                                     CurveJet gamma, ScalarField2 field)
    : type_(type),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      gamma_(std::move(gamma)),
      field_(std::move(field)),
      immersion_(std::make_shared<RuledImmersion>(alpha_, beta_, gamma_)) {}

RuledHypersurface RuledHypersurface::construct(RuledType type, CurveJet alpha, CurveJet beta,
                                               CurveJet gamma, ScalarField2 field,
                                               const ConstructOptions& opts) {
  if (opts.samples < 1) throw ArgumentError("construct needs at least one sample");
  const double target = director_target(type);

  double worst_err = 0, worst_t = 0, worst_val = target;
  const auto check = [&](double t, double f_value, const Vec4& d) {
    const double q = inner_with_f(f_value, d, d);
    const double err = std::abs(q - target);
    if (err > worst_err) {
      worst_err = err;
      worst_t = t;
      worst_val = q;
    }
  };

  for (int s = 0; s < opts.samples; ++s) {
    const double t = opts.samples == 1
                         ? opts.t_min
                         : opts.t_min + (opts.t_max - opts.t_min) * s / (opts.samples - 1);
    const auto a = alpha.jet(t), b = beta.jet(t), g = gamma.jet(t);
    const double f_foot = field.value(a.p[2], a.p[3]);
    check(t, f_foot, b.p);
    check(t, f_foot, g.p);
    if (opts.strict_surface) {
      for (int i = 0; i < opts.surface_samples; ++i)
        for (int j = 0; j < opts.surface_samples; ++j) {
          const double u2 =
              opts.u2_min + (opts.u2_max - opts.u2_min) * i /
                                std::max(1, opts.surface_samples - 1);
          const double u3 =
              opts.u3_min + (opts.u3_max - opts.u3_min) * j /
                                std::max(1, opts.surface_samples - 1);
          const Vec4 pos = a.p + u2 * b.p + u3 * g.p;
          const double f_surf = field.value(pos[2], pos[3]);
          check(t, f_surf, b.p);
          check(t, f_surf, g.p);
        }
    }
  }
  if (worst_err > opts.tau_dir)
    throw DirectorConstraintViolated(worst_t, worst_val, target);

  return RuledHypersurface(type, std::move(alpha), std::move(beta), std::move(gamma),
                           std::move(field));
}

CoefficientSet coefficients(const RuledHypersurface& h, const DomainPoint& p) {
  return coefficients_from(frame_at(h, p));
}

double first_form_det_closed(RuledType type, const CoefficientSet& cs) {
  const double a = cs.a, b = cs.b, c = cs.c, e = cs.e;
  switch (type) {
    case RuledType::Type1: return -b * b + 2 * c * b * e - c * c - a * e * e + a;
    case RuledType::Type2: return b * b + 2 * c * b * e + c * c - a * e * e + a;
    case RuledType::Type3: return 2 * b * c * e - a * e * e;
  }
  return 0;
}

FirstForm first_form_closed(const RuledHypersurface& h, const DomainPoint& p) {
  const CoefficientSet cs = coefficients(h, p);
  const double eps = director_target(h.type());

  FirstForm ff;
  ff.g = {{{cs.a, cs.b, cs.c}, {cs.b, eps, cs.e}, {cs.c, cs.e, eps}}};
  ff.det = first_form_det_closed(h.type(), cs);

  double scale = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(ff.g[i][j]));
  if (std::abs(ff.det - det3(ff.g)) > 1e-10 * scale * scale * scale)
    throw Error("closed determinant disagrees with the direct determinant");
  if (std::abs(ff.det) <= 1e-9 * scale * scale * scale)
    throw DegenerateMetric("closed first form is degenerate");

  const Mat3 adj = adjugate3(ff.g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ff.inv[i][j] = adj[i][j] / ff.det;
  return ff;
}

ClosedGaussMap gauss_map_closed(const RuledHypersurface& h, const DomainPoint& p) {
  return gauss_from(frame_at(h, p));
}

SecondForm second_form_closed(const RuledHypersurface& h, const DomainPoint& p) {
  const SecondFormTerms t = second_form_terms(frame_at(h, p));
  const double A = t.gm.norm;
  SecondForm sf;
  sf.h = {{{t.n11 / A, t.n12 / A, t.n13 / A},
           {t.n12 / A, t.n22 / A, t.n23 / A},
           {t.n13 / A, t.n23 / A, t.n33 / A}}};
  return sf;
}

MinimalityResidual minimality_residual(const RuledHypersurface& h, const DomainPoint& p,
                                       MinimalityVariant variant) {
  const Frame fr = frame_at(h, p);
  const CoefficientSet cs = coefficients_from(fr);
  const bool orthogonal = variant == MinimalityVariant::OrthogonalDirectors;
  if (orthogonal && std::abs(cs.e) > kOrthogonalityTol)
    throw OrthogonalityViolated("directors are not orthogonal: e = " + std::to_string(cs.e));

  const SecondFormTerms t = second_form_terms(fr);
  const AdjugateWeights w = minimality_weights(h.type(), cs, orthogonal);
  MinimalityResidual r;
  r.value = w.w11 * t.n11 + 2 * w.w12 * t.n12 + 2 * w.w13 * t.n13 + w.w22 * t.n22 +
            2 * w.w23 * t.n23 + w.w33 * t.n33;
  r.variant = variant;
  r.type = h.type();
  return r;
}

FlatnessResult flatness_check(const RuledHypersurface& h, const DomainPoint& p) {
  const SecondForm sf = second_form_closed(h, p);
  const CoefficientSet cs = coefficients(h, p);
  const double det_g = first_form_det_closed(h.type(), cs);

  FlatnessResult r;
  r.det_h = det3(sf.h);
  r.is_flat = std::abs(r.det_h) <= 1e-9 * std::max(1.0, std::abs(det_g));
  return r;
}

Vec4 lb_closed(const RuledHypersurface& h, const DomainPoint& p) {
  const Frame fr = frame_at(h, p);
  const GradFrame gf = grad_frame(fr);
  const Grad3 a = gf.a, b = gf.b, c = gf.c, e = gf.e;

  if (h.type() != RuledType::Type3 && std::abs(e.v) > kOrthogonalityTol)
    throw OrthogonalityViolated("directors are not orthogonal: e = " + std::to_string(e.v));

  // Weight and inverse-matrix rows, per type. Types 1/2 use the orthogonal-director
  // specialization; type 3 keeps its full row structure (e enters the determinant).
  Grad3 det;
  Grad3 row[3][3];  // row[k] dotted with (D_i, beta_i, gamma_i)
  switch (h.type()) {
    case RuledType::Type1:
      det = a - b * b - c * c;
      row[0][0] = 1;      row[0][1] = -b;          row[0][2] = -c;
      row[1][0] = -b;     row[1][1] = a - c * c;   row[1][2] = b * c;
      row[2][0] = -c;     row[2][1] = b * c;       row[2][2] = a - b * b;
      break;
    case RuledType::Type2:
      det = a + b * b + c * c;
      row[0][0] = 1;      row[0][1] = b;           row[0][2] = c;
      row[1][0] = b;      row[1][1] = -a - c * c;  row[1][2] = b * c;
      row[2][0] = c;      row[2][1] = b * c;       row[2][2] = -a - b * b;
      break;
    case RuledType::Type3:
      det = Grad3(2) * b * c * e - a * e * e;
      row[0][0] = -e * e; row[0][1] = c * e;         row[0][2] = b * e;
      row[1][0] = c * e;  row[1][1] = -c * c;        row[1][2] = b * c - a * e;
      row[2][0] = b * e;  row[2][1] = b * c - a * e; row[2][2] = -b * b;
      break;
  }

  const double coeff_scale =
      std::max(1.0, std::abs(a.v) + b.v * b.v + c.v * c.v + std::abs(a.v) * e.v * e.v +
                        2 * std::abs(b.v * c.v * e.v));
  if (std::abs(det.v) <= 1e-9 * coeff_scale)
    throw DegenerateDenominator("closed Laplace-Beltrami weight is degenerate");

  // Delta phi_i = sum_k [ d_k N_k / det - N_k d_k(det) / (2 det^2) ], where
  // N_k = row[k] . (D_i, beta_i, gamma_i). The signed det absorbs the orientation
  // of sqrt|det| without a square root.
  Vec4 out{};
  for (int i = 0; i < 4; ++i) {
    double acc = 0;
    for (int k = 0; k < 3; ++k) {
      const Grad3 n = row[k][0] * gf.D[i] + row[k][1] * gf.B[i] + row[k][2] * gf.G[i];
      acc += n.d[static_cast<std::size_t>(k)] / det.v -
             0.5 * n.v * det.d[static_cast<std::size_t>(k)] / (det.v * det.v);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace walker4

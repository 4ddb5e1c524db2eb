#pragma once

#include <memory>

#include "walker4/curve.hpp"
#include "walker4/field.hpp"
#include "walker4/immersion.hpp"

namespace walker4 {

/// Which quadric the director curves live on: g(d,d) = +1, -1 or 0.
enum class RuledType { Type1 = 1, Type2 = 2, Type3 = 3 };

double director_target(RuledType type);

struct ConstructOptions {
  double t_min = -1.0;
  double t_max = 1.0;
  int samples = 33;          // director-constraint sample count along [t_min, t_max]
  double tau_dir = 1e-8;

  // Strict mode additionally validates the constraints with the field evaluated
  // across the ruling plane, not just at the base curve.
  bool strict_surface = false;
  double u2_min = -1.0, u2_max = 1.0;
  double u3_min = -1.0, u3_max = 1.0;
  int surface_samples = 5;
};

/// phi(u1,u2,u3) = alpha(u1) + u2*beta(u1) + u3*gamma(u1), with beta and gamma
/// constrained to the type's quadric. Immutable after construction.
class RuledHypersurface {
 public:
  /// Validates the director constraints at `samples` parameters (throwing
  /// DirectorConstraintViolated with the worst offender) and returns the surface.
  static RuledHypersurface construct(RuledType type, CurveJet alpha, CurveJet beta,
                                     CurveJet gamma, ScalarField2 field,
                                     const ConstructOptions& opts = {});

  RuledType type() const { return type_; }
  const CurveJet& alpha() const { return alpha_; }
  const CurveJet& beta() const { return beta_; }
  const CurveJet& gamma() const { return gamma_; }
  const ScalarField2& field() const { return field_; }

  /// Adapter exposing the surface to the generic pipeline.
  const Immersion& immersion() const { return *immersion_; }

 private:
  RuledHypersurface(RuledType type, CurveJet alpha, CurveJet beta, CurveJet gamma,
                    ScalarField2 field);

  RuledType type_;
  CurveJet alpha_, beta_, gamma_;
  ScalarField2 field_;
  std::shared_ptr<const Immersion> immersion_;
};

/// First-form coefficients a = g11, b = g12, c = g13, e = g23 together with the
/// director-by-tangent product tables E[i][j] = gamma_i * D_j, F[i][j] = beta_i * D_j
/// (D = d phi / d u1).
struct CoefficientSet {
  double a = 0, b = 0, c = 0, e = 0;
  double E[4][4] = {};
  double F[4][4] = {};
};

CoefficientSet coefficients(const RuledHypersurface& h, const DomainPoint& p);

/// Assembles [[a,b,c],[b,eps,e],[c,e,eps]] with eps = +1/-1/0 by type. The
/// determinant is evaluated both by the per-type closed formula and directly; the
/// closed value is returned.
FirstForm first_form_closed(const RuledHypersurface& h, const DomainPoint& p);

/// Per-type closed determinant formula (checked against the direct 3x3 determinant).
double first_form_det_closed(RuledType type, const CoefficientSet& cs);

struct ClosedGaussMap {
  Vec4 components;          // unnormalized, assembled from the E tables
  double norm = 0;          // sqrt|2 G1 G3 + 2 G2 G4 + 2 f G3 G4|
  Vec4 unit;
  CausalCharacter character = CausalCharacter::Null;
};

ClosedGaussMap gauss_map_closed(const RuledHypersurface& h, const DomainPoint& p);

SecondForm second_form_closed(const RuledHypersurface& h, const DomainPoint& p);

enum class MinimalityVariant { General, OrthogonalDirectors };

/// Left side of the minimality condition: sum of adjugate-weighted second-form
/// numerators. Vanishes exactly where the mean curvature does (the scale factor is
/// 3 * det[g_ij] * norm of the unnormalized normal).
struct MinimalityResidual {
  double value = 0;
  MinimalityVariant variant = MinimalityVariant::General;
  RuledType type = RuledType::Type1;
};

MinimalityResidual minimality_residual(const RuledHypersurface& h, const DomainPoint& p,
                                       MinimalityVariant variant);

struct FlatnessResult {
  double det_h = 0;
  bool is_flat = false;
};

FlatnessResult flatness_check(const RuledHypersurface& h, const DomainPoint& p);

/// Closed-form Laplace-Beltrami of the surface components. Types 1 and 2 require
/// orthogonal directors (|e| <= 1e-6, else OrthogonalityViolated); type 3 uses its
/// full inverse-matrix rows. All coefficient derivatives are exact.
Vec4 lb_closed(const RuledHypersurface& h, const DomainPoint& p);

}  // namespace walker4

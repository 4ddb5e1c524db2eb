#pragma once

#include <array>

#include "walker4/field.hpp"
#include "walker4/metric.hpp"
#include "walker4/vec.hpp"

namespace walker4 {

/// A map I1 x I2 x I3 -> ambient chart, queried pointwise for exact partials.
/// second_partial returns the raw coordinate second derivative (no connection term);
/// it must be symmetric in (i,j).
class Immersion {
 public:
  virtual ~Immersion() = default;

  virtual Vec4 position(const DomainPoint& p) const = 0;
  virtual Vec4 first_partial(const DomainPoint& p, int i) const = 0;       // i in 0..2
  virtual Vec4 second_partial(const DomainPoint& p, int i, int j) const = 0;
};

/// Induced metric: entries, determinant, adjugate-based inverse.
struct FirstForm {
  Mat3 g{};
  double det = 0;
  Mat3 inv{};
};

struct SecondForm {
  Mat3 h{};
};

struct GaussMap {
  Vec4 raw;                 // unnormalized normal (triple product of the tangents)
  Vec4 unit;                // raw / sqrt|g(raw,raw)|
  double norm = 0;          // sqrt|g(raw,raw)|
  CausalCharacter character = CausalCharacter::Null;
};

struct Curvatures {
  Mat3 shape{};             // [g^ij][h_ij]
  double gaussian = 0;      // det h / det g
  double mean = 0;          // trace(shape) / 3
};

/// Everything the pipeline produces at a point.
struct InvariantBundle {
  FirstForm first;
  SecondForm second;
  Mat3 shape{};
  double gaussian = 0;
  double mean = 0;
  GaussMap gauss;
};

/// Raw second partials plus the connection correction evaluated at the ambient image
/// of p. Order: (11, 12, 13, 22, 23, 33).
std::array<Vec4, 6> covariant_second_partials(const ScalarField2& field, const Immersion& im,
                                              const DomainPoint& p);

/// Unit normal via the triple product of the coordinate tangents.
/// Throws RankDeficient if the tangents are dependent, DegenerateNormal if the
/// normal direction is lightlike.
GaussMap gauss_map_generic(const ScalarField2& field, const Immersion& im,
                           const DomainPoint& p);

/// Throws DegenerateMetric when |det| <= 1e-9 * max(1, max|g_ij|)^3.
FirstForm first_form(const ScalarField2& field, const Immersion& im, const DomainPoint& p);

SecondForm second_form(const ScalarField2& field, const Immersion& im, const DomainPoint& p);

Curvatures curvatures(const FirstForm& first, const SecondForm& second);

InvariantBundle invariant_bundle(const ScalarField2& field, const Immersion& im,
                                 const DomainPoint& p);

struct LaplaceFdOptions {
  double step = 1e-4;
  bool richardson = false;  // one extrapolation level (step and step/2)
};

/// Laplace-Beltrami of the immersion components, computed as central differences of
/// the divergence form (1/sqrt|det g|) d_k( sqrt|det g| g^kj d_j phi ). The inner
/// quantities are exact; only the outer d_k is numeric.
Vec4 laplace_beltrami_fd(const ScalarField2& field, const Immersion& im, const DomainPoint& p,
                         const LaplaceFdOptions& opts = {});

}  // namespace walker4

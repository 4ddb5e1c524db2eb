#pragma once

#include <iosfwd>
#include <string>

#include "walker4/scene.hpp"
#include "walker4/verify.hpp"

namespace walker4 {

struct InvariantsOptions {
  std::string format = "csv";  // csv | json
  std::string plot_path;       // optional PPM heatmap of K over the (u1,u3) slice
};

/// One row per grid point (u1 outer, u3 inner): u1,u2,u3,det_g,K,H,normal_char,
/// min_residual,error. Per-point degeneracies land in the error column; returns 0.
int run_invariants(const SceneConfig& cfg, std::ostream& out, const InvariantsOptions& opts);

struct VerifyCmdOptions {
  int samples = 100;
  unsigned long long seed = 42;
  double tol_scale = 1.0;
  bool inject_fault = false;  // test hook: corrupts one closed value
};

/// Samples admissible points (deterministic under seed), runs the fixture audit and
/// prints the report. Returns 0 iff no mismatch.
int run_verify(const SceneConfig& cfg, std::ostream& out, const VerifyCmdOptions& opts);

/// Single-point report: closed and generic normals, the normalization factor and the
/// causal character. Returns 0, or 1 on a degenerate configuration.
int run_gaussmap(const SceneConfig& cfg, const DomainPoint& p, std::ostream& out);

/// Writes golden oracle data for the scene (refuses on any mismatch).
int run_pin(const SceneConfig& cfg, const std::string& out_path, int samples,
            unsigned long long seed, std::ostream& err);

/// Deterministic admissible-point sampler shared by verify and pin.
std::vector<DomainPoint> sample_points(const RuledHypersurface& h, const SceneConfig& cfg,
                                       int samples, unsigned long long seed);

}  // namespace walker4

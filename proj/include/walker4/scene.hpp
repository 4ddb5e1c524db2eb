#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "walker4/ruled.hpp"

namespace walker4 {

struct GridSpec {
  double start = 0;
  double stop = 0;
  int count = 1;
};

/// Scene description loaded from the sectioned plain-text config:
///
///   [field]
///   f = u3*u4
///   [curves]
///   type  = 1
///   alpha = t, 0, 0, 0
///   beta  = 1/2, 0, 1, 0
///   gamma = 0, 1/2, 0, 1
///   [grid]
///   u1 = -0.5 0.5 5        # start stop count
///   u2 = -0.5 0.5 3
///   u3 = -0.5 0.5 3
///   [tolerances]           # optional
///   tau_dir = 1e-8
///   fd_step = 1e-4
///   tol     = 1.0
///
/// '#' starts a comment; keys outside a known section are errors.
struct SceneConfig {
  std::string field_text = "0";
  int type = 1;
  std::string alpha_text = "0,0,0,0";
  std::string beta_text = "0,0,0,0";
  std::string gamma_text = "0,0,0,0";
  std::array<GridSpec, 3> grid{};
  double tau_dir = 1e-8;
  double fd_step = 1e-4;
  double tol_scale = 1.0;
  bool strict_directors = false;

  static SceneConfig load(std::istream& in);
  static SceneConfig load_file(const std::string& path);

  /// Parses the expressions and runs the director validation over the u1 grid range.
  RuledHypersurface build() const;

  std::vector<double> grid_values(int axis) const;
};

}  // namespace walker4

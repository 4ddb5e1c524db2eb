#include "walker4/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "walker4/errors.hpp"

namespace walker4 {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, std::size_t lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + tok + "'", lineno);
  }
}

GridSpec parse_grid(const std::string& value, std::size_t lineno) {
  std::istringstream ss(value);
  std::string a, b, c, extra;
  if (!(ss >> a >> b >> c) || (ss >> extra))
    throw ParseError("grid spec needs 'start stop count'", lineno);
  GridSpec g;
  g.start = parse_double(a, lineno);
  g.stop = parse_double(b, lineno);
  const double count = parse_double(c, lineno);
  g.count = static_cast<int>(count);
  if (g.count < 1 || g.count != count)
    throw ParseError("grid count must be a positive integer", lineno);
  return g;
}

}  // namespace

SceneConfig SceneConfig::load(std::istream& in) {
  SceneConfig cfg;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  bool saw_grid[3] = {false, false, false};

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineno);
      section = line.substr(1, line.size() - 2);
      if (section != "field" && section != "curves" && section != "grid" &&
          section != "tolerances")
        throw ParseError("unknown section [" + section + "]", lineno);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError("empty value for '" + key + "'", lineno);

    if (section == "field") {
      if (key == "f") cfg.field_text = value;
      else throw ParseError("unknown key '" + key + "' in [field]", lineno);
    } else if (section == "curves") {
      if (key == "type") {
        const double t = parse_double(value, lineno);
        if (t != 1 && t != 2 && t != 3) throw ParseError("type must be 1, 2 or 3", lineno);
        cfg.type = static_cast<int>(t);
      } else if (key == "alpha") cfg.alpha_text = value;
      else if (key == "beta") cfg.beta_text = value;
      else if (key == "gamma") cfg.gamma_text = value;
      else throw ParseError("unknown key '" + key + "' in [curves]", lineno);
    } else if (section == "grid") {
      int axis = -1;
      if (key == "u1") axis = 0;
      else if (key == "u2") axis = 1;
      else if (key == "u3") axis = 2;
      else throw ParseError("unknown key '" + key + "' in [grid]", lineno);
      cfg.grid[static_cast<std::size_t>(axis)] = parse_grid(value, lineno);
      saw_grid[axis] = true;
    } else if (section == "tolerances") {
      if (key == "tau_dir") cfg.tau_dir = parse_double(value, lineno);
      else if (key == "fd_step") cfg.fd_step = parse_double(value, lineno);
      else if (key == "tol") cfg.tol_scale = parse_double(value, lineno);
      else if (key == "strict_directors")
        cfg.strict_directors = value == "true" || value == "1";
      else throw ParseError("unknown key '" + key + "' in [tolerances]", lineno);
    } else {
      throw ParseError("key '" + key + "' outside any section", lineno);
    }
  }

  for (int axis = 0; axis < 3; ++axis)
    if (!saw_grid[axis])
      throw ParseError("missing [grid] entry for u" + std::to_string(axis + 1), 0);
  return cfg;
}

SceneConfig SceneConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file '" + path + "'");
  return load(in);
}

RuledHypersurface SceneConfig::build() const {
  const ScalarField2 field = ScalarField2::parse(field_text);
  const CurveJet alpha = CurveJet::parse(alpha_text);
  const CurveJet beta = CurveJet::parse(beta_text);
  const CurveJet gamma = CurveJet::parse(gamma_text);

  ConstructOptions opts;
  opts.t_min = grid[0].start;
  opts.t_max = grid[0].stop;
  opts.samples = std::max(17, grid[0].count);
  opts.tau_dir = tau_dir;
  opts.strict_surface = strict_directors;
  opts.u2_min = grid[1].start;
  opts.u2_max = grid[1].stop;
  opts.u3_min = grid[2].start;
  opts.u3_max = grid[2].stop;

  const RuledType rt = type == 1   ? RuledType::Type1
                       : type == 2 ? RuledType::Type2
                                   : RuledType::Type3;
  return RuledHypersurface::construct(rt, alpha, beta, gamma, field, opts);
}

std::vector<double> SceneConfig::grid_values(int axis) const {
  const GridSpec& g = grid[static_cast<std::size_t>(axis)];
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(g.count));
  for (int i = 0; i < g.count; ++i)
    vals.push_back(g.count == 1 ? g.start
                                : g.start + (g.stop - g.start) * i / (g.count - 1));
  return vals;
}

}  // namespace walker4

#include "walker4/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "walker4/immersion.hpp"

namespace walker4 {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* error_name(const Error& e) {
  if (dynamic_cast<const DegenerateNormal*>(&e)) return "DegenerateNormal";
  if (dynamic_cast<const DegenerateMetric*>(&e)) return "DegenerateMetric";
  if (dynamic_cast<const RankDeficient*>(&e)) return "RankDeficient";
  if (dynamic_cast<const OrthogonalityViolated*>(&e)) return "OrthogonalityViolated";
  if (dynamic_cast<const DegenerateDenominator*>(&e)) return "DegenerateDenominator";
  if (dynamic_cast<const EvaluationDomainError*>(&e)) return "EvaluationDomainError";
  return "Error";
}

struct Row {
  double u1, u2, u3;
  std::optional<double> det_g, gaussian, mean, min_residual;
  std::string normal_char;
  std::string error;
};

Row evaluate_row(const RuledHypersurface& h, const DomainPoint& p) {
  Row row{p.u1, p.u2, p.u3, {}, {}, {}, {}, "", ""};
  const Immersion& im = h.immersion();
  try {
    const FirstForm ff = first_form(h.field(), im, p);
    row.det_g = ff.det;
    const GaussMap gm = gauss_map_generic(h.field(), im, p);
    row.normal_char = to_string(gm.character);
    const SecondForm sf = second_form(h.field(), im, p);
    const Curvatures cv = curvatures(ff, sf);
    row.gaussian = cv.gaussian;
    row.mean = cv.mean;
    row.min_residual = minimality_residual(h, p, MinimalityVariant::General).value;
  } catch (const Error& e) {
    row.error = error_name(e);
  }
  return row;
}

std::string opt_str(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << "u1,u2,u3,det_g,K,H,normal_char,min_residual,error\n";
  for (const Row& r : rows) {
    out << fmt(r.u1) << ',' << fmt(r.u2) << ',' << fmt(r.u3) << ',' << opt_str(r.det_g)
        << ',' << opt_str(r.gaussian) << ',' << opt_str(r.mean) << ',' << r.normal_char
        << ',' << opt_str(r.min_residual) << ',' << r.error << "\n";
  }
}

void write_json(std::ostream& out, const std::vector<Row>& rows) {
  const auto field = [](const std::optional<double>& v) {
    return v ? fmt(*v) : std::string("null");
  };
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    out << "  {\"u1\": " << fmt(r.u1) << ", \"u2\": " << fmt(r.u2) << ", \"u3\": "
        << fmt(r.u3) << ", \"det_g\": " << field(r.det_g) << ", \"K\": " << field(r.gaussian)
        << ", \"H\": " << field(r.mean) << ", \"normal_char\": \"" << r.normal_char
        << "\", \"min_residual\": " << field(r.min_residual) << ", \"error\": \"" << r.error
        << "\"}" << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
}

// Diverging blue-white-red map of K over the (u1,u3) slice at the middle u2 value.
void write_plot(const std::string& path, const RuledHypersurface& h, const SceneConfig& cfg) {
  constexpr int kRes = 256;
  const GridSpec& g1 = cfg.grid[0];
  const GridSpec& g3 = cfg.grid[2];
  const std::vector<double> u2s = cfg.grid_values(1);
  const double u2 = u2s[u2s.size() / 2];

  std::vector<double> k(kRes * kRes, std::nan(""));
  double max_abs = 0;
  for (int iy = 0; iy < kRes; ++iy)
    for (int ix = 0; ix < kRes; ++ix) {
      const double u1 = g1.start + (g1.stop - g1.start) * ix / (kRes - 1);
      const double u3 = g3.start + (g3.stop - g3.start) * iy / (kRes - 1);
      try {
        const FirstForm ff = first_form(h.field(), h.immersion(), {u1, u2, u3});
        const SecondForm sf = second_form(h.field(), h.immersion(), {u1, u2, u3});
        const double v = curvatures(ff, sf).gaussian;
        k[static_cast<std::size_t>(iy * kRes + ix)] = v;
        max_abs = std::max(max_abs, std::abs(v));
      } catch (const Error&) {
      }
    }
  if (max_abs == 0) max_abs = 1;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot open plot file '" + path + "'");
  out << "P6\n" << kRes << " " << kRes << "\n255\n";
  for (double v : k) {
    unsigned char rgb[3];
    if (std::isnan(v)) {
      rgb[0] = rgb[1] = rgb[2] = 0;
    } else {
      const double t = std::clamp(v / max_abs, -1.0, 1.0);
      const double w = 1.0 - std::abs(t);
      rgb[0] = static_cast<unsigned char>(255 * (t > 0 ? 1.0 : w));
      rgb[1] = static_cast<unsigned char>(255 * w);
      rgb[2] = static_cast<unsigned char>(255 * (t < 0 ? 1.0 : w));
    }
    out.write(reinterpret_cast<const char*>(rgb), 3);
  }
}

double next_uniform(std::mt19937_64& rng) {
  // 53-bit mantissa; identical across platforms, unlike the distribution adaptors
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<DomainPoint> sample_points(const RuledHypersurface& h, const SceneConfig& cfg,
                                       int samples, unsigned long long seed) {
  if (samples < 1) throw ArgumentError("need at least one sample");
  std::mt19937_64 rng(seed);
  std::vector<DomainPoint> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  const long long max_attempts = 1000LL * samples;
  for (long long attempt = 0; attempt < max_attempts &&
                              pts.size() < static_cast<std::size_t>(samples);
       ++attempt) {
    DomainPoint p;
    p.u1 = cfg.grid[0].start + (cfg.grid[0].stop - cfg.grid[0].start) * next_uniform(rng);
    p.u2 = cfg.grid[1].start + (cfg.grid[1].stop - cfg.grid[1].start) * next_uniform(rng);
    p.u3 = cfg.grid[2].start + (cfg.grid[2].stop - cfg.grid[2].start) * next_uniform(rng);
    // Screen out near-degenerate draws so the audit compares meaningful values.
    try {
      const CoefficientSet cs = coefficients(h, p);
      const double det = first_form_det_closed(h.type(), cs);
      double scale = std::max(
          1.0, std::max(std::abs(cs.a), std::max(std::abs(cs.b), std::abs(cs.c))));
      if (std::abs(det) < 1e-4 * scale * scale * scale) continue;
      const ClosedGaussMap gm = gauss_map_closed(h, p);
      if (gm.norm * gm.norm < 1e-4 * std::max(1.0, norm2_euclid(gm.components))) continue;
    } catch (const Error&) {
      continue;
    }
    pts.push_back(p);
  }
  if (pts.size() < static_cast<std::size_t>(samples))
    throw ArgumentError("could not sample enough admissible points; scene looks degenerate");
  return pts;
}

int run_invariants(const SceneConfig& cfg, std::ostream& out, const InvariantsOptions& opts) {
  const RuledHypersurface h = cfg.build();

  std::vector<Row> rows;
  for (double u1 : cfg.grid_values(0))
    for (double u2 : cfg.grid_values(1))
      for (double u3 : cfg.grid_values(2)) rows.push_back(evaluate_row(h, {u1, u2, u3}));

  if (opts.format == "json") write_json(out, rows);
  else write_csv(out, rows);

  if (!opts.plot_path.empty()) write_plot(opts.plot_path, h, cfg);
  return 0;
}

int run_verify(const SceneConfig& cfg, std::ostream& out, const VerifyCmdOptions& opts) {
  const RuledHypersurface h = cfg.build();
  const std::vector<DomainPoint> pts = sample_points(h, cfg, opts.samples, opts.seed);

  VerifyOptions vo;
  vo.fd_step = cfg.fd_step;
  vo.tol_scale = cfg.tol_scale * opts.tol_scale;
  vo.inject_fault = opts.inject_fault;

  const DiscrepancyReport rep = verify_fixture(h, pts, vo);
  out << "scene: type=" << static_cast<int>(h.type()) << " f=\"" << h.field().source()
      << "\" samples=" << pts.size() << " seed=" << opts.seed << "\n";
  rep.print(out);
  out << (rep.all_match() ? "verdict: PASS\n" : "verdict: FAIL\n");
  return rep.all_match() ? 0 : 1;
}

int run_gaussmap(const SceneConfig& cfg, const DomainPoint& p, std::ostream& out) {
  if (!std::isfinite(p.u1) || !std::isfinite(p.u2) || !std::isfinite(p.u3))
    throw ArgumentError("point coordinates must be finite");
  const RuledHypersurface h = cfg.build();
  try {
    const ClosedGaussMap cgm = gauss_map_closed(h, p);
    const GaussMap ggm = gauss_map_generic(h.field(), h.immersion(), p);
    out << "point: (" << fmt(p.u1) << "," << fmt(p.u2) << "," << fmt(p.u3) << ")\n";
    out << "closed components: (" << fmt(cgm.components[0]) << "," << fmt(cgm.components[1])
        << "," << fmt(cgm.components[2]) << "," << fmt(cgm.components[3]) << ")\n";
    out << "normalization A: " << fmt(cgm.norm) << "\n";
    out << "closed unit: (" << fmt(cgm.unit[0]) << "," << fmt(cgm.unit[1]) << ","
        << fmt(cgm.unit[2]) << "," << fmt(cgm.unit[3]) << ")\n";
    out << "generic unit: (" << fmt(ggm.unit[0]) << "," << fmt(ggm.unit[1]) << ","
        << fmt(ggm.unit[2]) << "," << fmt(ggm.unit[3]) << ")\n";
    out << "character: " << to_string(cgm.character) << "\n";
  } catch (const Error& e) {
    out << "error: " << error_name(e) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_pin(const SceneConfig& cfg, const std::string& out_path, int samples,
            unsigned long long seed, std::ostream& err) {
  const RuledHypersurface h = cfg.build();
  const std::vector<DomainPoint> pts = sample_points(h, cfg, samples, seed);

  VerifyOptions vo;
  vo.fd_step = cfg.fd_step;
  vo.tol_scale = cfg.tol_scale;

  std::ostringstream buf;
  try {
    pin_golden(h, pts, buf, vo);
  } catch (const Error& e) {
    err << "pin refused: " << e.what() << "\n";
    return 1;
  }
  std::ofstream out(out_path);
  if (!out) throw ArgumentError("cannot open output file '" + out_path + "'");
  out << buf.str();
  return 0;
}

}  // namespace walker4

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "walker4/commands.hpp"

namespace {

walker4::DomainPoint parse_point(const std::string& text) {
  double v[3];
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ',' || c2 != ',')
    throw walker4::ArgumentError("point must be 'u1,u2,u3'");
  std::string rest;
  if (ss >> rest) throw walker4::ArgumentError("trailing input after point");
  return {v[0], v[1], v[2]};
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw walker4::ArgumentError("cannot open output file '" + path + "'");
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-ruled hypersurfaces of a neutral-signature 4-manifold family:\n"
               "curvature invariants, closed forms and their numerical audit"};
  app.require_subcommand(1);
  app.footer("exit codes: 0 ok, 1 verification mismatch / degenerate result, "
             "2 usage or config error");

  std::string config_path, out_path, format = "csv", plot_path, point_text;
  int samples = 100;
  unsigned long long seed = 42;
  double tol = 1.0;
  bool inject_fault = false;

  CLI::App* inv = app.add_subcommand("invariants", "evaluate invariants over the grid");
  inv->add_option("--config", config_path, "scene config file")->required();
  inv->add_option("--out", out_path, "output file (default stdout)");
  inv->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  inv->add_option("--plot", plot_path, "write a PPM heatmap of K over the (u1,u3) slice");

  CLI::App* ver = app.add_subcommand("verify", "audit the closed forms against the oracle");
  ver->add_option("--config", config_path, "scene config file")->required();
  ver->add_option("--out", out_path, "report file (default stdout)");
  ver->add_option("--samples", samples, "number of sample points");
  ver->add_option("--seed", seed, "sampler seed");
  ver->add_option("--tol", tol, "tolerance scale factor");
  ver->add_flag("--inject-fault", inject_fault, "test hook: corrupt one closed value")
      ->group("");  // hidden

  CLI::App* gm = app.add_subcommand("gaussmap", "single-point normal report");
  gm->add_option("--config", config_path, "scene config file")->required();
  gm->add_option("--point", point_text, "domain point 'u1,u2,u3'")->required();
  gm->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* pin = app.add_subcommand("pin", "write golden oracle data for the scene");
  pin->add_option("--config", config_path, "scene config file")->required();
  pin->add_option("--out", out_path, "golden file path")->required();
  pin->add_option("--samples", samples, "number of sample points");
  pin->add_option("--seed", seed, "sampler seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const walker4::SceneConfig cfg = walker4::SceneConfig::load_file(config_path);

    if (inv->parsed()) {
      walker4::InvariantsOptions opts;
      opts.format = format;
      opts.plot_path = plot_path;
      return with_output(out_path, [&](std::ostream& os) {
        return walker4::run_invariants(cfg, os, opts);
      });
    }
    if (ver->parsed()) {
      walker4::VerifyCmdOptions opts;
      opts.samples = samples;
      opts.seed = seed;
      opts.tol_scale = tol;
      opts.inject_fault = inject_fault;
      return with_output(out_path, [&](std::ostream& os) {
        return walker4::run_verify(cfg, os, opts);
      });
    }
    if (gm->parsed()) {
      const walker4::DomainPoint p = parse_point(point_text);
      return with_output(out_path, [&](std::ostream& os) {
        return walker4::run_gaussmap(cfg, p, os);
      });
    }
    if (pin->parsed())
      return walker4::run_pin(cfg, out_path, samples, seed, std::cerr);
  } catch (const walker4::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const walker4::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const walker4::DirectorConstraintViolated& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const walker4::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

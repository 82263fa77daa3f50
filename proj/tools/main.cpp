// Command-line front end: point generation, interpolation and the analysis
// reports. Every output is written atomically after all inputs validate.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "manifold_splines/analysis.hpp"
#include "manifold_splines/error.hpp"
#include "manifold_splines/io.hpp"
#include "manifold_splines/kernels.hpp"
#include "manifold_splines/quadrature.hpp"
#include "manifold_splines/targets.hpp"

namespace fs = std::filesystem;
using namespace manifold_splines;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_validation = 3;
constexpr int exit_numerical = 4;

// Probe seeds are derived from the command seed so one flag controls all
// randomness.
constexpr std::uint64_t probe_stream = 0x70726f6265ULL;

kernel_spec resolve_kernel(const std::string& arg) {
  static const std::regex preset_name(R"((rss-s[12]|so3-ss)-m\d+)");
  if (std::regex_match(arg, preset_name)) return preset(arg);
  if (!fs::exists(arg)) throw io_error("kernel '" + arg + "' is neither a preset nor an existing file");
  return parse_kernel_spec(read_file(arg));
}

int default_quad_level(manifold m, std::size_t n) {
  // Roughly 8 nodes per center keeps the Lagrange Gram matrix well conditioned.
  const double target = 8.0 * static_cast<double>(n);
  switch (m) {
    case manifold::sphere1:
      return std::max(64, static_cast<int>(std::ceil(target / 2.0)));
    case manifold::sphere2:
      return std::max(32, static_cast<int>(std::ceil(std::sqrt(target / 2.0))));
    case manifold::so3:
      return std::max(8, static_cast<int>(std::ceil(std::cbrt(target / 4.0))));
  }
  return 32;
}

point_set load_or_make_probe(const std::string& file, manifold m, std::size_t count, std::uint64_t seed) {
  if (!file.empty()) {
    point_set p = read_point_csv(file);
    if (p.on() != m) throw invalid_input("probe file lives on another manifold");
    return p;
  }
  return default_probe(m, count, seed ^ probe_stream);
}

void write_report(const std::string& prefix, const std::string& json_text, const std::string& csv_text) {
  atomic_write(prefix + ".json", json_text);
  atomic_write(prefix + ".csv", csv_text);
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw invalid_input("--ns expects a comma-separated list of positive integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw invalid_input("--ns is empty");
  return out;
}

struct common_opts {
  std::string points;
  std::string kernel;
  std::string out;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, common_opts& o, bool needs_points) {
  if (needs_points) cmd->add_option("--points", o.points, "Center CSV file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--kernel", o.kernel, "Kernel preset (rss-s2-m2, so3-ss-m2, ...) or JSON spec file")->required();
  cmd->add_option("--out", o.out, "Output path prefix; writes <prefix>.json and <prefix>.csv")->required();
  cmd->add_option("--seed", o.seed, "Seed for every random draw")->default_val(0);
}

struct loaded {
  kernel_spec kernel;
  point_set centers;
};

loaded load_inputs(const common_opts& o) {
  loaded l{resolve_kernel(o.kernel), read_point_csv(o.points)};
  if (l.centers.on() != l.kernel.on) throw invalid_input("centers and kernel live on different manifolds");
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel interpolation on S^1, S^2 and SO(3)"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: MANIFOLD_SPLINES_THREADS or all cores)");

  // gen-points
  auto* gen = app.add_subcommand("gen-points", "Generate a point set");
  std::string gen_manifold;
  std::string gen_method_arg = "fibonacci";
  std::size_t gen_n = 0;
  double gen_eps = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::size_t gen_probe_factor = 20;
  gen->add_option("--manifold", gen_manifold, "sphere1, sphere2 or so3")->required();
  gen->add_option("--method", gen_method_arg, "fibonacci, random or greedy_net");
  auto* n_opt = gen->add_option("--n", gen_n, "Point count");
  auto* eps_opt = gen->add_option("--epsilon", gen_eps, "Covering radius for greedy_net");
  n_opt->excludes(eps_opt);
  gen->add_option("--seed", gen_seed, "Seed")->default_val(0);
  gen->add_option("--out", gen_out, "Output CSV")->required();
  gen->add_option("--probe-factor", gen_probe_factor, "Probe size for h, as a multiple of N")->default_val(20);

  // interpolate
  auto* interp = app.add_subcommand("interpolate", "Interpolate a target on the centers");
  common_opts io;
  std::string interp_target;
  std::string interp_probe;
  std::size_t interp_probe_factor = 20;
  int interp_quad = 0;
  add_common(interp, io, true);
  interp->add_option("--target", interp_target, "const, linear, exp-dot-u or a CSV of values at the centers")
      ->required();
  interp->add_option("--probe", interp_probe, "Probe CSV for the sup error")->check(CLI::ExistingFile);
  interp->add_option("--probe-factor", interp_probe_factor, "Default probe size as a multiple of N")
      ->default_val(20);
  interp->add_option("--quad-level", interp_quad, "Quadrature level for the L2 error (0 = automatic)");

  // lebesgue
  auto* leb = app.add_subcommand("lebesgue", "Lebesgue constant on a probe");
  common_opts lo;
  std::string leb_probe;
  std::size_t leb_probe_factor = 10;
  add_common(leb, lo, true);
  leb->add_option("--probe", leb_probe, "Probe CSV")->check(CLI::ExistingFile);
  leb->add_option("--probe-factor", leb_probe_factor, "Probe size as a multiple of N")->default_val(10);

  // decay
  auto* dec = app.add_subcommand("decay", "Lagrange function decay profile");
  common_opts dco;
  std::string dec_probe;
  std::size_t dec_probe_factor = 10;
  std::size_t dec_center = 0;
  decay_options dopt;
  std::string dec_precision = "extended";
  add_common(dec, dco, true);
  dec->add_option("--probe", dec_probe, "Probe CSV")->check(CLI::ExistingFile);
  dec->add_option("--probe-factor", dec_probe_factor, "Probe size as a multiple of N")->default_val(10);
  dec->add_option("--center", dec_center, "Index of the Lagrange function's center")->default_val(0);
  dec->add_option("--bins", dopt.bins, "Number of distance bins")->default_val(40);
  dec->add_option("--r-cut", dopt.r_cut, "Upper end of the fit window (radians)");
  dec->add_option("--precision", dec_precision, "standard or extended")
      ->check(CLI::IsMember({"standard", "extended"}));

  // converge
  auto* conv = app.add_subcommand("converge", "Convergence study over nested densities");
  common_opts co;
  std::string conv_ns = "100,400,1600";
  std::string conv_target = "exp-dot-u";
  std::string conv_method = "fibonacci";
  std::size_t conv_probe_size = 20000;
  int conv_quad = 0;
  add_common(conv, co, false);
  conv->add_option("--ns", conv_ns, "Comma-separated point counts");
  conv->add_option("--target", conv_target, "const, linear or exp-dot-u");
  conv->add_option("--method", conv_method, "fibonacci or random");
  conv->add_option("--probe-size", conv_probe_size, "Probe size for the sup error");
  conv->add_option("--quad-level", conv_quad, "Quadrature level for the L2 error (0 = automatic)");

  // stability
  auto* stab = app.add_subcommand("stability", "L_p stability ratios of the Lagrange basis");
  common_opts so;
  std::string stab_p = "2";
  int stab_trials = 200;
  int stab_quad = 0;
  add_common(stab, so, true);
  stab->add_option("--p", stab_p, "1, 2 or inf");
  stab->add_option("--trials", stab_trials, "Random coefficient draws")->default_val(200);
  stab->add_option("--quad-level", stab_quad, "Quadrature level (0 = automatic)");

  // kernel-check
  auto* kc = app.add_subcommand("kernel-check", "Closed form vs spectral expansion, plus a CPD check");
  std::string kc_kernel;
  std::string kc_out;
  int kc_lmax = 500;
  int kc_samples = 2001;
  double kc_gap = 1e-3;
  std::size_t kc_cpd_points = 20;
  int kc_cpd_trials = 200;
  std::uint64_t kc_seed = 0;
  kc->add_option("--kernel", kc_kernel, "Kernel preset or JSON spec file")->required();
  kc->add_option("--out", kc_out, "Output path prefix")->required();
  kc->add_option("--lmax", kc_lmax, "Spectral truncation degree")->default_val(500);
  kc->add_option("--samples", kc_samples, "Samples of the zonal variable")->default_val(2001);
  kc->add_option("--gap", kc_gap, "Distance kept from the diagonal")->default_val(1e-3);
  kc->add_option("--cpd-points", kc_cpd_points, "Random points for the CPD check (0 skips it)")->default_val(20);
  kc->add_option("--cpd-trials", kc_cpd_trials, "Random constrained directions")->default_val(200);
  kc->add_option("--seed", kc_seed, "Seed")->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  if (threads <= 0) {
    if (const char* env = std::getenv("MANIFOLD_SPLINES_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*gen) {
      const manifold m = parse_manifold(gen_manifold);
      const gen_method method = parse_gen_method(gen_method_arg);
      double size_or_eps = 0.0;
      if (method == gen_method::greedy_net) {
        if (eps_opt->count() == 0) throw invalid_input("greedy_net needs --epsilon");
        size_or_eps = gen_eps;
      } else {
        if (n_opt->count() == 0 || gen_n == 0) throw invalid_input(std::string(gen_method_arg) + " needs --n > 0");
        size_or_eps = static_cast<double>(gen_n);
      }
      const point_set pts = generate_points(m, method, size_or_eps, gen_seed);
      const point_set probe = default_probe(m, gen_probe_factor * pts.size(), gen_seed ^ probe_stream);
      const mesh_stats stats = compute_mesh_stats(pts, probe);
      atomic_write(gen_out, point_csv(pts));
      std::cout << mesh_stats_json(pts, stats);
    } else if (*interp) {
      const loaded in = load_inputs(io);
      const manifold m = in.kernel.on;
      const auto sys = saddle_system::assemble(in.kernel, aux_for(in.kernel), in.centers);
      const bool preset_target_given = is_preset_target(interp_target);
      Eigen::VectorXd data;
      target_fn f;
      if (preset_target_given) {
        f = preset_target(m, interp_target);
        data.resize(static_cast<Eigen::Index>(in.centers.size()));
        for (std::size_t i = 0; i < in.centers.size(); ++i) data(static_cast<Eigen::Index>(i)) = f(in.centers[i]);
      } else {
        if (!fs::exists(interp_target)) throw io_error("target '" + interp_target + "' is neither a preset nor a file");
        data = parse_values_csv(read_file(interp_target));
      }
      const interpolant s = solve_interpolant(sys, data);
      std::string errors = "# report=interpolation_errors\n";
      std::ostringstream summary;
      summary << "{\n  \"residual\": " << format_double(s.residual)
              << ",\n  \"side_residual\": " << format_double(s.side_residual)
              << ",\n  \"condition\": " << format_double(sys->condition());
      if (preset_target_given) {
        const point_set probe =
            load_or_make_probe(interp_probe, m, interp_probe_factor * in.centers.size(), io.seed);
        const Eigen::VectorXd fp = eval_interpolant(s, probe);
        double sup = 0.0;
        for (std::size_t i = 0; i < probe.size(); ++i) {
          sup = std::max(sup, std::abs(fp(static_cast<Eigen::Index>(i)) - f(probe[i])));
        }
        const auto quad = quadrature(m, interp_quad > 0 ? interp_quad : default_quad_level(m, in.centers.size()));
        const Eigen::VectorXd fq = eval_interpolant(s, quad.node_set());
        double l2 = 0.0;
        for (std::size_t i = 0; i < quad.size(); ++i) {
          const double e = fq(static_cast<Eigen::Index>(i)) - f(quad.nodes[i]);
          l2 += quad.weights[i] * e * e;
        }
        l2 = std::sqrt(l2);
        summary << ",\n  \"sup_error\": " << format_double(sup) << ",\n  \"l2_error\": " << format_double(l2)
                << ",\n  \"probe_size\": " << probe.size() << ",\n  \"quadrature_level\": " << quad.level;
        errors += "N,sup_error,l2_error,residual,side_residual\n" + std::to_string(in.centers.size()) + "," +
                  format_double(sup) + "," + format_double(l2) + ",";
      } else {
        errors += "N,residual,side_residual\n" + std::to_string(in.centers.size()) + ",";
      }
      errors += format_double(s.residual) + "," + format_double(s.side_residual) + "\n";
      summary << "\n}\n";
      write_report(io.out, interpolant_json(s, io.points), errors);
      std::cout << summary.str();
    } else if (*leb) {
      const loaded in = load_inputs(lo);
      const point_set probe =
          load_or_make_probe(leb_probe, in.kernel.on, leb_probe_factor * in.centers.size(), lo.seed);
      const auto sys = saddle_system::assemble(in.kernel, aux_for(in.kernel), in.centers);
      const lebesgue_report r = lebesgue_constant(*sys, probe);
      write_report(lo.out, report_json(r), report_csv(r));
      std::cout << report_json(r);
    } else if (*dec) {
      const loaded in = load_inputs(dco);
      const point_set probe =
          load_or_make_probe(dec_probe, in.kernel.on, dec_probe_factor * in.centers.size(), dco.seed);
      const auto sys = saddle_system::assemble(in.kernel, aux_for(in.kernel), in.centers);
      dopt.prec = dec_precision == "standard" ? precision::standard : precision::extended;
      const decay_report r = decay_profile(*sys, dec_center, probe, dopt);
      write_report(dco.out, report_json(r), report_csv(r));
      std::cout << report_json(r);
    } else if (*conv) {
      const kernel_spec kernel = resolve_kernel(co.kernel);
      const manifold m = kernel.on;
      const gen_method method = parse_gen_method(conv_method);
      if (method == gen_method::greedy_net) throw invalid_input("converge takes point counts; use fibonacci or random");
      const auto sizes = parse_sizes(conv_ns);
      const target_fn f = preset_target(m, conv_target);
      std::vector<point_set> sets;
      for (const std::size_t n : sizes) sets.push_back(generate_points(m, method, static_cast<double>(n), co.seed));
      const point_set probe = default_probe(m, conv_probe_size, co.seed ^ probe_stream);
      const auto quad = quadrature(m, conv_quad > 0 ? conv_quad : default_quad_level(m, 1000));
      const convergence_report r = convergence_study(kernel, aux_for(kernel), f, conv_target, sets, probe, quad);
      write_report(co.out, report_json(r), report_csv(r));
      std::cout << report_json(r);
    } else if (*stab) {
      const loaded in = load_inputs(so);
      const double p = parse_norm_exponent(stab_p);
      const auto sys = saddle_system::assemble(in.kernel, aux_for(in.kernel), in.centers);
      const auto quad =
          quadrature(in.kernel.on, stab_quad > 0 ? stab_quad : default_quad_level(in.kernel.on, in.centers.size()));
      const stability_report r = stability_ratios(*sys, quad, p, stab_trials, so.seed);
      write_report(so.out, report_json(r), report_csv(r));
      std::cout << report_json(r);
    } else if (*kc) {
      const kernel_spec kernel = resolve_kernel(kc_kernel);
      kernel_check_report r;
      r.kernel = kernel;
      const manifold m = kernel.on;
      r.fit = fit_closed_to_spectral(m, kernel.m, kc_lmax, kc_samples, kc_gap);
      r.fit_window_lo = r.fit.grid.front();
      r.fit_window_hi = r.fit.grid.back();
      if (kc_cpd_points > 0) {
        const aux_basis aux = aux_for(kernel);
        const point_set pts = random_points(m, std::max<std::size_t>(kc_cpd_points, static_cast<std::size_t>(aux.dim())),
                                            kc_seed);
        r.cpd = cpd_check(kernel, pts, aux, kc_cpd_trials, kc_seed);
      }
      write_report(kc_out, report_json(r), report_csv(r));
      std::cout << report_json(r);
    }
  } catch (const assembly_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const cpd_violation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const spectrum_violation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const insufficient_data& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << " (condition estimate " << e.condition() << ")\n";
    return exit_numerical;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return exit_usage;
  }
  return 0;
}

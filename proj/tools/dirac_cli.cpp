// dirac: command-line front end for Dirac-operator signal processing on
// 2-dimensional simplicial complexes.
//
// Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dirac/complex.hpp"
#include "dirac/error.hpp"
#include "dirac/experiments.hpp"
#include "dirac/filters.hpp"
#include "dirac/io.hpp"
#include "dirac/manifest.hpp"
#include "dirac/operators.hpp"
#include "dirac/spectral.hpp"

namespace {

using namespace dirac;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

Normalization parse_normalization(const std::string& s) {
  if (s == "spectral") return Normalization::spectral;
  if (s == "none") return Normalization::none;
  throw InvalidArgument("normalization must be 'none' or 'spectral'");
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("invalid number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument(std::string(what) + " is empty");
  return out;
}

std::string render(auto&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

struct GenerateArgs {
  std::size_t triangles = 0;
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  RunManifest manifest;
  manifest.command = "generate";
  SimplicialComplex2 complex;
  if (a.grid_rows || a.grid_cols) {
    complex = triangulated_grid(a.grid_rows, a.grid_cols);
    manifest.parameters["grid_rows"] = a.grid_rows;
    manifest.parameters["grid_cols"] = a.grid_cols;
  } else {
    if (a.triangles == 0) throw InvalidArgument("--triangles must be >= 1");
    complex = ngf_generate({-1, 0.0, a.triangles, a.seed});
    manifest.parameters["triangles"] = a.triangles;
    manifest.parameters["flavor"] = -1;
    manifest.parameters["beta"] = 0.0;
    manifest.seeds["ngf"] = a.seed;
  }
  io::write_complex(a.out, complex);
  manifest.write_beside(a.out);
  std::cout << "N=" << complex.num_vertices() << " E=" << complex.num_edges()
            << " T=" << complex.num_triangles() << '\n';
  return kOk;
}

struct SpectrumArgs {
  std::string complex;
  std::string normalization = "none";
  std::string out;
};

int run_spectrum(const SpectrumArgs& a) {
  const auto complex = io::read_complex(a.complex);
  const auto op = assemble_dirac(complex, parse_normalization(a.normalization));
  const auto basis = compute_basis(op);
  io::write_text_file(a.out, render([&](std::ostream& o) { io::write_spectrum(o, complex, basis); }));

  RunManifest manifest;
  manifest.command = "spectrum";
  manifest.parameters["normalization"] = a.normalization;
  manifest.parameters["rank_tol"] = 1e-10;
  manifest.add_input(a.complex);
  manifest.write_beside(a.out);
  const auto betti = betti_numbers(basis, complex);
  std::cout << "eigenpairs=" << complex.num_simplices() << " betti=" << betti.b0 << ','
            << betti.b1 << ',' << betti.b2 << '\n';
  return kOk;
}

struct FilterArgs {
  std::string complex;
  std::string signal;
  int variant = 1;
  double z = -0.95;
  double gamma = 1.0;
  std::string normalization = "spectral";
  std::string out;
};

int run_filter(const FilterArgs& a) {
  FilterSpec spec;
  spec.variant = a.variant;
  spec.z = a.z;
  spec.gamma = a.gamma;
  spec.validate();

  const auto complex = io::read_complex(a.complex);
  const auto op = assemble_dirac(complex, parse_normalization(a.normalization));
  const auto s = io::read_signal(a.signal, complex);
  const auto result = apply_filter(op, spec, s);
  if (!(result.solve_residual <= 1e-8)) {
    throw NumericalError("filter residual " + io::format_number(result.solve_residual) +
                         " exceeds 1e-8");
  }
  io::write_text_file(a.out,
                      render([&](std::ostream& o) { io::write_signal(o, complex, result.s_hat); }));

  RunManifest manifest;
  manifest.command = "filter";
  manifest.parameters["variant"] = a.variant;
  manifest.parameters["z"] = a.z;
  manifest.parameters["gamma"] = a.gamma;
  manifest.parameters["normalization"] = a.normalization;
  manifest.parameters["solve_residual"] = io::format_number(result.solve_residual);
  manifest.add_input(a.complex);
  manifest.add_input(a.signal);
  manifest.write_beside(a.out);
  std::cout << "residual=" << io::format_number(result.solve_residual) << '\n';
  return kOk;
}

struct DecomposeArgs {
  std::string complex;
  std::string signal;
  std::string normalization = "spectral";
  std::string out;
};

int run_decompose(const DecomposeArgs& a) {
  const auto complex = io::read_complex(a.complex);
  const auto op = assemble_dirac(complex, parse_normalization(a.normalization));
  const auto basis = compute_basis(op);
  const auto d = decompose_signal(basis, io::read_signal(a.signal, complex));
  io::write_text_file(a.out,
                      render([&](std::ostream& o) { io::write_decomposition(o, complex, d); }));

  RunManifest manifest;
  manifest.command = "decompose";
  manifest.parameters["normalization"] = a.normalization;
  manifest.add_input(a.complex);
  manifest.add_input(a.signal);
  manifest.write_beside(a.out);
  std::cout << "norms s1=" << io::format_number(d.s1.norm())
            << " s2=" << io::format_number(d.s2.norm())
            << " s_harm=" << io::format_number(d.s_harm.norm()) << '\n';
  return kOk;
}

struct ExperimentArgs {
  std::string complex;
  std::size_t triangles = 50;
  std::uint64_t generate_seed = 1;
  std::string flow;
  int variant = 1;
  std::string noise = "opposite";
  std::string z_list = "-0.95,0,0.95";
  std::string gammas;
  std::size_t realizations = 50;
  std::uint64_t seed = 0;
  std::string normalization = "spectral";
  std::string out;
};

int run_experiment_cmd(const ExperimentArgs& a, bool gammas_given) {
  ExperimentConfig config;
  config.variant = a.variant;
  config.realizations = a.realizations;
  config.master_seed = a.seed;
  config.normalization = parse_normalization(a.normalization);
  config.z_values = parse_list(a.z_list, "z list");
  if (gammas_given) config.gamma_grid = parse_list(a.gammas, "gamma grid");
  if (a.noise == "opposite") {
    config.noise = NoiseKind::opposite_symmetry;
  } else if (a.noise == "gaussian") {
    config.noise = NoiseKind::gaussian_subspace;
  } else {
    throw InvalidArgument("noise must be 'opposite' or 'gaussian'");
  }
  config.validate();

  RunManifest manifest;
  manifest.command = "experiment";
  SimplicialComplex2 complex;
  if (!a.complex.empty()) {
    complex = io::read_complex(a.complex);
    manifest.add_input(a.complex);
  } else {
    complex = ngf_generate({-1, 0.0, a.triangles, a.generate_seed});
    manifest.parameters["generated_triangles"] = a.triangles;
    manifest.seeds["ngf"] = a.generate_seed;
  }

  ErrorCurve curve;
  if (!a.flow.empty()) {
    curve = run_flow_experiment(complex, io::read_edge_flow(a.flow, complex), config);
    manifest.add_input(a.flow);
    manifest.parameters["planted"] = "flow";
    manifest.parameters["renormalized_projection"] = true;
  } else {
    curve = run_experiment(complex, config);
    manifest.parameters["planted"] = "anti_aligned_extremal";
  }
  io::write_text_file(a.out, render([&](std::ostream& o) { io::write_error_curve(o, curve); }));

  manifest.parameters["variant"] = a.variant;
  manifest.parameters["noise"] = a.noise;
  manifest.parameters["z_values"] = config.z_values;
  manifest.parameters["gamma_grid"] = config.gamma_grid;
  manifest.parameters["realizations"] = a.realizations;
  manifest.parameters["normalization"] = a.normalization;
  manifest.seeds["master"] = a.seed;
  manifest.write_beside(a.out);

  for (double z : config.z_values) {
    std::cout << "z=" << io::format_number(z)
              << " min_mean_delta=" << io::format_number(curve.min_mean(z)) << '\n';
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-operator signal processing on 2-dimensional simplicial complexes"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Grow an NGF complex (or a triangulated grid)");
  generate->add_option("--triangles", gen.triangles, "Number of triangles")
      ->check(CLI::PositiveNumber);
  generate->add_option("--grid-rows", gen.grid_rows, "Triangulated grid rows instead of NGF");
  generate->add_option("--grid-cols", gen.grid_cols, "Triangulated grid columns");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--out", gen.out, "Output complex file")->required();

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "Export the Dirac eigenbasis as CSV");
  spectrum->add_option("--complex", spec_args.complex)->required();
  spectrum->add_option("--normalization", spec_args.normalization, "none | spectral")
      ->capture_default_str();
  spectrum->add_option("--out", spec_args.out)->required();

  FilterArgs filt;
  auto* filter = app.add_subcommand("filter", "Apply (I + gamma Q_n(z))^-1 to a signal");
  filter->add_option("--complex", filt.complex)->required();
  filter->add_option("--signal", filt.signal, "Signal CSV (simplex,value)")->required();
  filter->add_option("--variant", filt.variant)->check(CLI::IsMember({1, 2}))->capture_default_str();
  filter->add_option("--z", filt.z)->capture_default_str();
  filter->add_option("--gamma", filt.gamma)->capture_default_str();
  filter->add_option("--normalization", filt.normalization)->capture_default_str();
  filter->add_option("--out", filt.out)->required();

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "Split a signal into im(D1), im(D2), ker(D)");
  decompose->add_option("--complex", dec.complex)->required();
  decompose->add_option("--signal", dec.signal)->required();
  decompose->add_option("--normalization", dec.normalization)->capture_default_str();
  decompose->add_option("--out", dec.out)->required();

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo denoising error curves");
  experiment->add_option("--complex", exp.complex, "Complex file (otherwise one is generated)");
  experiment->add_option("--triangles", exp.triangles, "Triangles of the generated complex")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment->add_option("--generate-seed", exp.generate_seed)->capture_default_str();
  experiment->add_option("--flow", exp.flow, "Edge-flow CSV (v0,v1,value) used as ground truth");
  experiment->add_option("--variant", exp.variant)->check(CLI::IsMember({1, 2}))->capture_default_str();
  experiment->add_option("--noise", exp.noise, "opposite | gaussian")->capture_default_str();
  experiment->add_option("--z", exp.z_list, "Comma-separated z values")->capture_default_str();
  auto* gamma_opt = experiment->add_option(
      "--gammas", exp.gammas, "Comma-separated gamma grid (default: 40 log-spaced in [1e-2, 1e2])");
  experiment->add_option("--realizations", exp.realizations)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment->add_option("--seed", exp.seed)->capture_default_str();
  experiment->add_option("--normalization", exp.normalization)->capture_default_str();
  experiment->add_option("--out", exp.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (spectrum->parsed()) return run_spectrum(spec_args);
    if (filter->parsed()) return run_filter(filt);
    if (decompose->parsed()) return run_decompose(dec);
    if (experiment->parsed()) return run_experiment_cmd(exp, gamma_opt->count() > 0);
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

#include "dirac/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "dirac/error.hpp"

namespace dirac {

SimplicialSignal sample_noise(const SpectralBasis& basis, const NoiseSpec& spec) {
  Eigen::MatrixXd columns;
  if (spec.kind == NoiseKind::gaussian_subspace) {
    columns = basis.phi(spec.variant);
  } else {
    columns = (spec.planted == Alignment::aligned) ? basis.anti(spec.variant)
                                                   : basis.aligned(spec.variant);
  }
  if (columns.cols() == 0) {
    throw InvalidArgument("noise subspace of im(D" + std::to_string(spec.variant) +
                          ") is empty");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(columns.cols())));
  Eigen::VectorXd x(columns.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
  return SimplicialSignal(basis.layout, columns * x);
}

double relative_error(const SimplicialSignal& s_true, const SimplicialSignal& s_tilde,
                      const SimplicialSignal& s_hat) {
  if (s_true.size() != s_tilde.size() || s_true.size() != s_hat.size()) {
    throw DataError("relative_error: signal lengths differ");
  }
  const double denom = (s_true.values() - s_tilde.values()).norm();
  if (denom == 0.0) {
    throw InvalidArgument("relative_error: noisy signal equals the clean signal");
  }
  return (s_true.values() - s_hat.values()).norm() / denom;
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 finalizer over a Weyl sequence.
  std::uint64_t x = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw InvalidArgument("log_grid: need 0 < lo <= hi");
  }
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (gamma_grid.empty()) throw InvalidArgument("gamma grid is empty");
  for (double g : gamma_grid) {
    if (!std::isfinite(g) || g < 0.0) throw InvalidArgument("gamma values must be >= 0");
  }
  if (z_values.empty()) throw InvalidArgument("z list is empty");
  for (double z : z_values) {
    if (!(std::abs(z) < 1.0)) throw InvalidArgument("z values must satisfy |z| < 1");
  }
  if (realizations == 0) throw InvalidArgument("realizations must be >= 1");
  if (variant != 1 && variant != 2) throw InvalidArgument("variant must be 1 or 2");
}

std::vector<ErrorPoint> ErrorCurve::for_z(double z) const {
  std::vector<ErrorPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [z](const ErrorPoint& p) { return p.z == z; });
  return out;
}

double ErrorCurve::min_mean(double z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.z == z) best = std::min(best, p.mean_delta);
  }
  return best;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("DIRAC_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

ErrorCurve run_denoising(const DiracOperator& op, const SpectralBasis& basis,
                         const SimplicialSignal& truth, NoiseSpec noise,
                         const ExperimentConfig& config) {
  config.validate();
  noise.variant = config.variant;

  const std::size_t reps = config.realizations;
  std::vector<SimplicialSignal> noisy;
  noisy.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    noise.seed = realization_seed(config.master_seed, r);
    const SimplicialSignal eps = sample_noise(basis, noise);
    noisy.emplace_back(truth.layout(), truth.values() + eps.values());
  }

  struct Task {
    double z;
    double gamma;
  };
  std::vector<Task> tasks;
  for (double z : config.z_values) {
    for (double g : config.gamma_grid) tasks.push_back({z, g});
  }

  // deltas[t][r]; each task writes only its own row.
  std::vector<std::vector<double>> deltas(tasks.size(), std::vector<double>(reps));
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        FilterSpec spec;
        spec.variant = config.variant;
        spec.z = tasks[t].z;
        spec.gamma = tasks[t].gamma;
        const IirFilter filter(op, spec);
        for (std::size_t r = 0; r < reps; ++r) {
          const FilterResult out = filter.apply(noisy[r]);
          deltas[t][r] = relative_error(truth, noisy[r], out.s_hat);
        }
      } catch (...) {
        failures[t] = std::current_exception();
      }
    }
  };

  const std::size_t threads =
      std::min(tasks.size(), config.threads ? config.threads : default_thread_count());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  ErrorCurve curve;
  curve.points.reserve(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& d = deltas[t];
    double sum = 0.0;
    for (double v : d) sum += v;
    const double mean = sum / static_cast<double>(reps);
    double sq = 0.0;
    for (double v : d) sq += (v - mean) * (v - mean);
    const double sd = reps > 1 ? std::sqrt(sq / static_cast<double>(reps - 1)) : 0.0;
    curve.points.push_back({tasks[t].z, tasks[t].gamma, mean, sd});
  }
  return curve;
}

ErrorCurve run_experiment(const SimplicialComplex2& complex, const ExperimentConfig& config) {
  config.validate();
  const DiracOperator op = assemble_dirac(complex, config.normalization);
  const SpectralBasis basis = compute_basis(op);
  const SimplicialSignal truth = planted_eigenvector(basis, config.variant);
  NoiseSpec noise;
  noise.kind = config.noise;
  noise.planted = Alignment::anti;
  return run_denoising(op, basis, truth, noise, config);
}

SimplicialSignal drifter_total_signal(const DiracOperator& op, const Eigen::VectorXd& sigma) {
  if (static_cast<std::size_t>(sigma.size()) != op.layout().edges) {
    throw DataError("edge flow has " + std::to_string(sigma.size()) + " entries, expected " +
                    std::to_string(op.layout().edges));
  }
  SimplicialSignal s(op.layout());
  s.node_block() = op.b1() * sigma;
  s.edge_block() = sigma;
  s.triangle_block() = op.b2().transpose() * sigma;
  const double n = s.norm();
  if (n == 0.0) throw InvalidArgument("edge flow is zero and cannot be normalized");
  s.values() /= n;
  return s;
}

ErrorCurve run_flow_experiment(const SimplicialComplex2& complex, const Eigen::VectorXd& sigma,
                               const ExperimentConfig& config) {
  config.validate();
  const DiracOperator op = assemble_dirac(complex, config.normalization);
  const SpectralBasis basis = compute_basis(op);
  SimplicialSignal truth = project_image(basis, config.variant, drifter_total_signal(op, sigma));
  const double n = truth.norm();
  if (n < 1e-12) {
    throw InvalidArgument("flow signal has no component in im(D" +
                          std::to_string(config.variant) + ")");
  }
  truth.values() /= n;
  NoiseSpec noise;
  noise.kind = config.noise;
  noise.planted = Alignment::aligned;
  return run_denoising(op, basis, truth, noise, config);
}

} // namespace dirac

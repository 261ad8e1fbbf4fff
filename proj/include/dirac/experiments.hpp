#pragma once

#include <cstdint>
#include <vector>

#include "dirac/complex.hpp"
#include "dirac/filters.hpp"
#include "dirac/operators.hpp"
#include "dirac/spectral.hpp"

namespace dirac {

enum class NoiseKind {
  /// Random combination of the eigenvectors of im(D_n) whose alignment is
  /// opposite to that of the planted signal.
  opposite_symmetry,
  /// Isotropic Gaussian inside im(D_n).
  gaussian_subspace,
};

struct NoiseSpec {
  NoiseKind kind = NoiseKind::opposite_symmetry;
  int variant = 1;
  std::uint64_t seed = 0;
  /// Alignment of the clean signal; opposite-symmetry noise uses the other
  /// half of im(D_n).
  Alignment planted = Alignment::anti;
};

/**
 * Draws noise in im(D_n) with expected squared norm 1. Coefficients are
 * i.i.d. N(0, 1/m) where m is the number of eigenvectors combined.
 * Throws InvalidArgument if the subspace is empty.
 */
SimplicialSignal sample_noise(const SpectralBasis& basis, const NoiseSpec& spec);

/// ||s_true - s_hat|| / ||s_true - s_tilde||.
double relative_error(const SimplicialSignal& s_true, const SimplicialSignal& s_tilde,
                      const SimplicialSignal& s_hat);

/// Seed of realization `index`; independent of execution order.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index);

/// `count` log-spaced values in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

struct ExperimentConfig {
  std::vector<double> gamma_grid = log_grid(1e-2, 1e2, 40);
  std::vector<double> z_values{-0.95, 0.0, 0.95};
  std::size_t realizations = 50;
  int variant = 1;
  NoiseKind noise = NoiseKind::opposite_symmetry;
  std::uint64_t master_seed = 0;
  Normalization normalization = Normalization::spectral;
  /// 0 picks the DIRAC_THREADS environment variable (default 1).
  std::size_t threads = 0;

  void validate() const;
};

struct ErrorPoint {
  double z = 0.0;
  double gamma = 0.0;
  double mean_delta = 0.0;
  double std_delta = 0.0;
};

/// Points ordered by z (as configured), then gamma (as configured).
struct ErrorCurve {
  std::vector<ErrorPoint> points;

  std::vector<ErrorPoint> for_z(double z) const;
  /// Minimum of mean_delta over gamma for one z.
  double min_mean(double z) const;
};

/**
 * Monte-Carlo denoising: every realization adds fresh noise to `truth`,
 * then each (z, gamma) filter is applied and the relative error recorded.
 * `noise.seed` is overwritten per realization from config.master_seed.
 */
ErrorCurve run_denoising(const DiracOperator& op, const SpectralBasis& basis,
                         const SimplicialSignal& truth, NoiseSpec noise,
                         const ExperimentConfig& config);

/// Planted anti-aligned extremal eigenvector of D_variant plus noise.
ErrorCurve run_experiment(const SimplicialComplex2& complex, const ExperimentConfig& config);

/**
 * s = sigma + D sigma for an edge flow sigma, scaled to unit norm. The node
 * block is B1 sigma and the triangle block is B2^T sigma.
 * Throws DataError on a length mismatch and InvalidArgument on a zero flow.
 */
SimplicialSignal drifter_total_signal(const DiracOperator& op, const Eigen::VectorXd& sigma);

/**
 * Denoising of the im(D_variant) part of a consistent flow signal: the
 * projection of drifter_total_signal onto im(D_variant), renormalized to
 * unit norm, serves as the aligned ground truth.
 */
ErrorCurve run_flow_experiment(const SimplicialComplex2& complex, const Eigen::VectorXd& sigma,
                               const ExperimentConfig& config);

/// Worker count from DIRAC_THREADS, at least 1.
std::size_t default_thread_count();

} // namespace dirac

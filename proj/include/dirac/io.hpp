#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dirac/complex.hpp"
#include "dirac/experiments.hpp"
#include "dirac/spectral.hpp"

namespace dirac::io {

/// 12 significant digits. Throws NumericalError on NaN or infinity.
std::string format_number(double x);

// Complex files: one simplex per line as increasing vertex ids, `#` comments.

SimplicialComplex2 read_complex(std::istream& in);
SimplicialComplex2 read_complex(const std::filesystem::path& path);
/// Maximal simplices (and isolated vertices) in lexicographic order.
void write_complex(std::ostream& out, const SimplicialComplex2& complex);
void write_complex(const std::filesystem::path& path, const SimplicialComplex2& complex);

// Signal CSV: header `simplex,value`, simplex as space-separated vertex ids.
// Simplices missing from the file are zero.

SimplicialSignal read_signal(std::istream& in, const SimplicialComplex2& complex);
SimplicialSignal read_signal(const std::filesystem::path& path, const SimplicialComplex2& complex);
void write_signal(std::ostream& out, const SimplicialComplex2& complex, const SimplicialSignal& s);

/// Edge-flow CSV with header `v0,v1,value`; unlisted edges carry zero flow.
Eigen::VectorXd read_edge_flow(std::istream& in, const SimplicialComplex2& complex);
Eigen::VectorXd read_edge_flow(const std::filesystem::path& path,
                               const SimplicialComplex2& complex);
void write_edge_flow(std::ostream& out, const SimplicialComplex2& complex,
                     const Eigen::VectorXd& sigma);

/// `family,alignment,eigenvalue,<simplex labels...>`, ascending eigenvalue.
void write_spectrum(std::ostream& out, const SimplicialComplex2& complex,
                    const SpectralBasis& basis);

/// `simplex,s1,s2,s_harm`.
void write_decomposition(std::ostream& out, const SimplicialComplex2& complex,
                         const SignalDecomposition& d);

/// `z,gamma,mean_delta,std_delta`.
void write_error_curve(std::ostream& out, const ErrorCurve& curve);

/// Writes `content` to `path`; throws Error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace dirac::io

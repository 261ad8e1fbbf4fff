#include "dirac/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

VertexId parse_vertex(const std::string& token, std::size_t line) {
  VertexId v = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || token.empty()) {
    fail(line, "invalid vertex id '" + token + "'");
  }
  return v;
}

double parse_value(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double x = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(x)) throw std::invalid_argument(token);
    return x;
  } catch (const std::exception&) {
    fail(line, "invalid number '" + token + "'");
  }
}

std::vector<VertexId> parse_tuple(const std::string& text, std::size_t line) {
  std::istringstream words(text);
  std::vector<VertexId> ids;
  std::string w;
  while (words >> w) ids.push_back(parse_vertex(w, line));
  if (ids.empty()) fail(line, "empty simplex");
  if (ids.size() > 3) fail(line, "simplex of dimension > 2 is not supported");
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == ids[i - 1]) fail(line, "repeated vertex " + std::to_string(ids[i]));
    if (ids[i] < ids[i - 1]) fail(line, "vertex ids must be strictly increasing");
  }
  return ids;
}

/// Reads the header line and returns the data lines with their numbers.
std::vector<std::pair<std::size_t, std::string>> csv_rows(std::istream& in,
                                                          const std::string& header) {
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::string line;
  std::size_t number = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!seen_header) {
      if (t != header) fail(number, "expected header '" + header + "'");
      seen_header = true;
      continue;
    }
    rows.emplace_back(number, t);
  }
  if (!seen_header) throw DataError("missing header '" + header + "'");
  return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

} // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NumericalError("refusing to write a non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

SimplicialComplex2 read_complex(std::istream& in) {
  std::vector<std::vector<VertexId>> simplices;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    simplices.push_back(parse_tuple(t, number));
  }
  return build_complex(std::span<const std::vector<VertexId>>(simplices));
}

SimplicialComplex2 read_complex(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_complex(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_complex(std::ostream& out, const SimplicialComplex2& complex) {
  out << "# N=" << complex.num_vertices() << " E=" << complex.num_edges()
      << " T=" << complex.num_triangles() << '\n';
  for (const auto& s : complex.maximal_simplices()) out << s.label() << '\n';
}

void write_complex(const std::filesystem::path& path, const SimplicialComplex2& complex) {
  std::ostringstream out;
  write_complex(out, complex);
  write_text_file(path, out.str());
}

SimplicialSignal read_signal(std::istream& in, const SimplicialComplex2& complex) {
  const BlockLayout layout = layout_of(complex);
  SimplicialSignal s(layout);
  std::vector<char> seen(layout.total(), 0);
  for (const auto& [number, row] : csv_rows(in, "simplex,value")) {
    const auto fields = split(row, ',');
    if (fields.size() != 2) fail(number, "expected 2 fields");
    const OrientedSimplex simplex(parse_tuple(fields[0], number));
    const auto index = complex.index_of(simplex);
    if (!index) fail(number, "simplex '" + fields[0] + "' is not in the complex");
    std::size_t offset = *index;
    if (simplex.dim() >= 1) offset += layout.nodes;
    if (simplex.dim() == 2) offset += layout.edges;
    if (seen[offset]) fail(number, "duplicate simplex '" + fields[0] + "'");
    seen[offset] = 1;
    s.values()(static_cast<Eigen::Index>(offset)) = parse_value(fields[1], number);
  }
  return s;
}

SimplicialSignal read_signal(const std::filesystem::path& path,
                             const SimplicialComplex2& complex) {
  auto in = open_input(path);
  try {
    return read_signal(in, complex);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_signal(std::ostream& out, const SimplicialComplex2& complex,
                  const SimplicialSignal& s) {
  if (!(s.layout() == layout_of(complex))) {
    throw DataError("signal does not match the complex");
  }
  out << "simplex,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << complex.simplex_at(i).label() << ','
        << format_number(s.values()(static_cast<Eigen::Index>(i))) << '\n';
  }
}

Eigen::VectorXd read_edge_flow(std::istream& in, const SimplicialComplex2& complex) {
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.num_edges()));
  std::vector<char> seen(complex.num_edges(), 0);
  for (const auto& [number, row] : csv_rows(in, "v0,v1,value")) {
    const auto fields = split(row, ',');
    if (fields.size() != 3) fail(number, "expected 3 fields");
    const VertexId a = parse_vertex(fields[0], number);
    const VertexId b = parse_vertex(fields[1], number);
    if (a >= b) fail(number, "edge vertices must be strictly increasing");
    const auto index = complex.edge_index(a, b);
    if (!index) fail(number, "edge (" + fields[0] + "," + fields[1] + ") is not in the complex");
    if (seen[*index]) fail(number, "duplicate edge");
    seen[*index] = 1;
    sigma(static_cast<Eigen::Index>(*index)) = parse_value(fields[2], number);
  }
  return sigma;
}

Eigen::VectorXd read_edge_flow(const std::filesystem::path& path,
                               const SimplicialComplex2& complex) {
  auto in = open_input(path);
  try {
    return read_edge_flow(in, complex);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_edge_flow(std::ostream& out, const SimplicialComplex2& complex,
                     const Eigen::VectorXd& sigma) {
  if (static_cast<std::size_t>(sigma.size()) != complex.num_edges()) {
    throw DataError("edge flow does not match the complex");
  }
  out << "v0,v1,value\n";
  for (std::size_t i = 0; i < complex.num_edges(); ++i) {
    const auto& e = complex.edges()[i];
    out << e[0] << ',' << e[1] << ',' << format_number(sigma(static_cast<Eigen::Index>(i)))
        << '\n';
  }
}

void write_spectrum(std::ostream& out, const SimplicialComplex2& complex,
                    const SpectralBasis& basis) {
  out << "family,alignment,eigenvalue";
  for (std::size_t i = 0; i < complex.num_simplices(); ++i) {
    out << ',' << complex.simplex_at(i).label('-');
  }
  out << '\n';
  for (const auto& pair : sorted_eigenpairs(basis)) {
    const char* family = pair.family == 1 ? "d1" : pair.family == 2 ? "d2" : "harm";
    const char* alignment = pair.alignment == Alignment::aligned ? "aligned"
                            : pair.alignment == Alignment::anti  ? "anti"
                                                                 : "harm";
    out << family << ',' << alignment << ',' << format_number(pair.eigenvalue);
    for (Eigen::Index i = 0; i < pair.vector.size(); ++i) {
      out << ',' << format_number(pair.vector(i));
    }
    out << '\n';
  }
}

void write_decomposition(std::ostream& out, const SimplicialComplex2& complex,
                         const SignalDecomposition& d) {
  out << "simplex,s1,s2,s_harm\n";
  for (std::size_t i = 0; i < d.s1.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out << complex.simplex_at(i).label() << ',' << format_number(d.s1.values()(k)) << ','
        << format_number(d.s2.values()(k)) << ',' << format_number(d.s_harm.values()(k))
        << '\n';
  }
}

void write_error_curve(std::ostream& out, const ErrorCurve& curve) {
  out << "z,gamma,mean_delta,std_delta\n";
  for (const auto& p : curve.points) {
    out << format_number(p.z) << ',' << format_number(p.gamma) << ','
        << format_number(p.mean_delta) << ',' << format_number(p.std_delta) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace dirac::io

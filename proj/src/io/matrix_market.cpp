#include "psdapprox/io/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace psdapprox::io {

namespace {

enum class Format { coordinate, array };
enum class Field { real, complex };
enum class Symmetry { general, symmetric, hermitian };

struct Header {
  Format format = Format::array;
  Field field = Field::real;
  Symmetry symmetry = Symmetry::general;
};

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double parse_number(const std::string& token, std::size_t line) {
  const std::string t = lower(token);
  if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
  if (t == "-inf" || t == "-infinity") return -kInf;
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) parse_error(line, "invalid number '" + token + "'");
  return v;
}

Index parse_index(const std::string& token, std::size_t line, Index n) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) parse_error(line, "invalid index '" + token + "'");
  if (v < 1 || static_cast<unsigned long long>(v) > n) parse_error(line, "index " + token + " out of range");
  return static_cast<Index>(v - 1);
}

Header parse_banner(const std::string& line) {
  const auto t = tokens(line);
  if (t.size() != 5 || lower(t[0]) != "%%matrixmarket" || lower(t[1]) != "matrix")
    parse_error(1, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  Header h;
  const std::string format = lower(t[2]);
  const std::string field = lower(t[3]);
  const std::string sym = lower(t[4]);
  if (format == "coordinate") h.format = Format::coordinate;
  else if (format == "array") h.format = Format::array;
  else parse_error(1, "unsupported format '" + t[2] + "'");
  if (field == "real" || field == "integer" || field == "double") h.field = Field::real;
  else if (field == "complex") h.field = Field::complex;
  else parse_error(1, "unsupported field '" + t[3] + "'");
  if (sym == "general") h.symmetry = Symmetry::general;
  else if (sym == "symmetric") h.symmetry = Symmetry::symmetric;
  else if (sym == "hermitian") h.symmetry = Symmetry::hermitian;
  else parse_error(1, "unsupported symmetry '" + t[4] + "'");
  return h;
}

/// Non-comment, non-blank lines with their 1-based line numbers.
class LineSource {
 public:
  explicit LineSource(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& out, std::size_t& line_no) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line[0] == '%') continue;
      auto t = tokens(line);
      if (t.empty()) continue;
      out = std::move(t);
      line_no = line_;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }
  void set_line(std::size_t l) { line_ = l; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

template <class T>
T make_value(const std::vector<std::string>& t, std::size_t offset, std::size_t line) {
  if constexpr (is_complex_v<T>) {
    if (t.size() != offset + 2) parse_error(line, "expected real and imaginary parts");
    return T{parse_number(t[offset], line), parse_number(t[offset + 1], line)};
  } else {
    if (t.size() != offset + 1) parse_error(line, "expected one value");
    return parse_number(t[offset], line);
  }
}

template <class T>
HermitianMatrix<T> read_body(LineSource& src, const Header& h) {
  std::vector<std::string> t;
  std::size_t line = 0;
  if (!src.next(t, line)) parse_error(src.line(), "missing size line");
  const std::size_t expected = h.format == Format::coordinate ? 3 : 2;
  if (t.size() != expected) parse_error(line, "malformed size line");
  const Index rows = parse_index(t[0], line, static_cast<Index>(-1) >> 1);
  const Index cols = parse_index(t[1], line, static_cast<Index>(-1) >> 1);
  if (rows != cols) throw Error(ErrorCode::NotSquare, "line " + std::to_string(line) + ": matrix is not square");
  const Index n = rows + 1;
  const bool mirrored = h.symmetry != Symmetry::general;

  Matrix<T> m(n, n);
  auto store = [&](Index i, Index j, T v) {
    m(i, j) = v;
    if (mirrored && i != j) m(j, i) = conj(v);
  };

  if (h.format == Format::coordinate) {
    long long nnz = 0;
    const auto [ptr, ec] = std::from_chars(t[2].data(), t[2].data() + t[2].size(), nnz);
    if (ec != std::errc{} || ptr != t[2].data() + t[2].size() || nnz < 0) parse_error(line, "invalid entry count");
    for (long long e = 0; e < nnz; ++e) {
      if (!src.next(t, line)) parse_error(src.line(), "fewer entries than declared");
      if (t.size() < 3) parse_error(line, "malformed entry");
      const Index i = parse_index(t[0], line, n);
      const Index j = parse_index(t[1], line, n);
      store(i, j, make_value<T>(t, 2, line));
    }
  } else {
    for (Index j = 0; j < n; ++j)
      for (Index i = mirrored ? j : 0; i < n; ++i) {
        if (!src.next(t, line)) parse_error(src.line(), "fewer entries than declared");
        store(i, j, make_value<T>(t, 0, line));
      }
  }
  if (src.next(t, line)) parse_error(line, "more entries than declared");
  return HermitianMatrix<T>(std::move(m));
}

template <class T>
void write_value(std::ostream& out, const T& v) {
  if constexpr (is_complex_v<T>) {
    out << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
  } else {
    out << format_double(v) << '\n';
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

AnyHermitian read_matrix_market(std::istream& in) {
  std::string banner;
  if (!std::getline(in, banner)) parse_error(1, "empty input");
  const Header h = parse_banner(banner);
  LineSource src(in);
  src.set_line(1);
  if (h.field == Field::complex) return read_body<Complex>(src, h);
  return read_body<double>(src, h);
}

AnyHermitian read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

std::vector<double> read_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::string first;
  std::getline(in, first);
  std::vector<double> out;
  LineSource src(in);
  src.set_line(1);
  std::vector<std::string> t;
  std::size_t line = 0;
  if (first.rfind("%%", 0) == 0) {
    const Header h = parse_banner(first);
    if (h.format != Format::array || h.field != Field::real)
      parse_error(1, "vector files must be real array format");
    if (!src.next(t, line) || t.size() != 2) parse_error(src.line(), "malformed size line");
    const Index rows = parse_index(t[0], line, static_cast<Index>(-1) >> 1) + 1;
    const Index cols = parse_index(t[1], line, static_cast<Index>(-1) >> 1) + 1;
    if (cols != 1) parse_error(line, "vector files must have one column");
    for (Index i = 0; i < rows; ++i) {
      if (!src.next(t, line)) parse_error(src.line(), "fewer entries than declared");
      out.push_back(make_value<double>(t, 0, line));
    }
    return out;
  }
  for (const auto& tok : tokens(first)) out.push_back(parse_number(tok, 1));
  while (src.next(t, line))
    for (const auto& tok : t) out.push_back(parse_number(tok, line));
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
void write_matrix_market(std::ostream& out, const HermitianMatrix<T>& m) {
  const Index n = m.size();
  out << "%%MatrixMarket matrix array " << (is_complex_v<T> ? "complex hermitian" : "real symmetric") << '\n';
  out << n << ' ' << n << '\n';
  for (Index j = 0; j < n; ++j)
    for (Index i = j; i < n; ++i) write_value(out, m(i, j));
}

template <class T>
void write_matrix_market(const std::filesystem::path& path, const HermitianMatrix<T>& m) {
  auto out = open_out(path);
  write_matrix_market(out, m);
}

template <class T>
void write_general(const std::filesystem::path& path, const Matrix<T>& m) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array " << (is_complex_v<T> ? "complex" : "real") << " general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) write_value(out, m(i, j));
}

void write_vector(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  for (double x : v) out << format_double(x) << '\n';
}

void write_permutation(const std::filesystem::path& path, std::span<const Index> p) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array integer general\n" << p.size() << " 1\n";
  for (Index x : p) out << (x + 1) << '\n';
}

template void write_matrix_market(std::ostream&, const HermitianMatrix<double>&);
template void write_matrix_market(std::ostream&, const HermitianMatrix<Complex>&);
template void write_matrix_market(const std::filesystem::path&, const HermitianMatrix<double>&);
template void write_matrix_market(const std::filesystem::path&, const HermitianMatrix<Complex>&);
template void write_general(const std::filesystem::path&, const Matrix<double>&);
template void write_general(const std::filesystem::path&, const Matrix<Complex>&);

}  // namespace psdapprox::io

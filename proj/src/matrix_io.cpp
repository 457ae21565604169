#include "lvlab/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lvlab {

namespace {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const char* first, const char* last, const std::string& context) {
  double value = 0.0;
  auto res = std::from_chars(first, last, value);
  require(res.ec == std::errc() && res.ptr == last, ErrorKind::Parse,
          "cannot parse number in '" + context + "'");
  return value;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  require(s.size() >= 2 && s.back() == 'i', ErrorKind::Parse, "complex value must end in 'i': '" + s + "'");
  // The split sign is the last '+' or '-' not directly after an exponent marker.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size() - 1; k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  require(split_at != std::string::npos, ErrorKind::Parse, "malformed complex value '" + s + "'");
  const char* base = s.data();
  const double re = parse_double(base, base + split_at, s);
  const char* im_first = base + split_at + (s[split_at] == '+' ? 1 : 0);
  const double im = parse_double(im_first, base + s.size() - 1, s);
  return {re, im};
}

void write_matrix_csv(std::ostream& os, const ComplexMatrix& m, const std::string& kind) {
  require(kind.find(',') == std::string::npos && kind.find('\n') == std::string::npos,
          ErrorKind::InvalidArgument, "matrix kind must not contain ',' or newlines");
  os << m.rows() << ',' << m.cols() << ',' << kind << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << format_complex(m(r, c));
    }
    os << '\n';
  }
}

LabeledMatrix read_matrix_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), ErrorKind::Parse, "empty matrix file");
  const auto head = split(trim(line), ',');
  require(head.size() == 3, ErrorKind::Parse, "header must be 'T,N,kind'");
  LabeledMatrix out;
  Index T = 0;
  Index N = 0;
  try {
    T = std::stoll(head[0]);
    N = std::stoll(head[1]);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad dimensions in header");
  }
  require(T >= 1 && N >= 1, ErrorKind::Parse, "dimensions must be positive");
  out.kind = head[2];
  out.matrix.resize(T, N);
  for (Index r = 0; r < T; ++r) {
    require(static_cast<bool>(std::getline(is, line)), ErrorKind::Parse,
            "expected " + std::to_string(T) + " rows, found " + std::to_string(r));
    const auto cells = split(trim(line), ',');
    require(static_cast<Index>(cells.size()) == N, ErrorKind::Parse,
            "row " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) + " values");
    for (Index c = 0; c < N; ++c) out.matrix(r, c) = parse_complex(cells[static_cast<std::size_t>(c)]);
  }
  require(out.matrix.allFinite(), ErrorKind::Parse, "matrix has non-finite entries");
  return out;
}

void save_matrix_csv(const std::string& path, const ComplexMatrix& m, const std::string& kind) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_matrix_csv(os, m, kind);
  require(static_cast<bool>(os), ErrorKind::Io, "write to '" + path + "' failed");
}

LabeledMatrix load_matrix_csv(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorKind::Io, "cannot open '" + path + "'");
  return read_matrix_csv(is);
}

std::vector<long long> read_integer_set(std::istream& is) {
  std::vector<long long> out;
  std::string line;
  while (std::getline(is, line)) {
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc() && res.ptr == s.data() + s.size(), ErrorKind::Parse,
            "bad integer '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<long long> load_integer_set(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorKind::Io, "cannot open '" + path + "'");
  return read_integer_set(is);
}

}  // namespace lvlab

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "bbstab/sparse.hpp"

namespace bbstab::sparse {
namespace {

using Kind = MatrixMarketError::Kind;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::MalformedHeader: return "malformed header";
    case Kind::MalformedEntry: return "malformed entry";
    case Kind::IndexOutOfRange: return "index out of range";
    case Kind::NonSquare: return "non-square matrix";
    case Kind::UnsupportedField: return "unsupported format";
    case Kind::EntryCountMismatch: return "entry count mismatch";
  }
  return "error";
}

// Reads one whitespace-separated token as T; false when absent or invalid.
template <typename T>
bool read_token(std::istringstream& in, T& out) {
  std::string tok;
  if (!(in >> tok)) return false;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  // from_chars rejects a leading '+', which Matrix Market writers emit.
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

void format_double(std::ostream& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  out.write(buf.data(), ptr - buf.data());
}

}  // namespace

MatrixMarketError::MatrixMarketError(Kind kind, std::size_t line,
                                     const std::string& detail)
    : std::runtime_error("matrix market line " + std::to_string(line) + ": " +
                         std::string(kind_name(kind)) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

SparseMatrix parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line))
    throw MatrixMarketError(Kind::MalformedHeader, 1, "empty input");
  ++line_no;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || symmetry.empty())
    throw MatrixMarketError(Kind::MalformedHeader, line_no, line);
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix")
    throw MatrixMarketError(Kind::MalformedHeader, line_no,
                            "object '" + object + "'");
  if (format != "coordinate")
    throw MatrixMarketError(Kind::UnsupportedField, line_no,
                            "format '" + format + "'");
  if (field != "real" && field != "integer" && field != "double")
    throw MatrixMarketError(Kind::UnsupportedField, line_no,
                            "field '" + field + "'");
  if (symmetry != "symmetric" && symmetry != "general")
    throw MatrixMarketError(Kind::UnsupportedField, line_no,
                            "symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  // Size line, after comments.
  std::size_t rows = 0, cols = 0, declared = 0;
  for (;;) {
    if (!std::getline(in, line))
      throw MatrixMarketError(Kind::MalformedHeader, line_no + 1,
                              "missing size line");
    ++line_no;
    if (blank(line) || line.front() == '%') continue;
    std::istringstream size_line(line);
    if (!read_token(size_line, rows) || !read_token(size_line, cols) ||
        !read_token(size_line, declared))
      throw MatrixMarketError(Kind::MalformedHeader, line_no, line);
    break;
  }
  if (rows != cols)
    throw MatrixMarketError(Kind::NonSquare, line_no,
                            std::to_string(rows) + "x" + std::to_string(cols));
  if (rows == 0)
    throw MatrixMarketError(Kind::MalformedHeader, line_no, "zero dimension");

  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(symmetric ? 2 * declared : declared);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line.front() == '%') continue;
    if (seen == declared)
      throw MatrixMarketError(Kind::EntryCountMismatch, line_no,
                              "more than " + std::to_string(declared) +
                                  " entries");
    std::istringstream entry(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!read_token(entry, i) || !read_token(entry, j) ||
        !read_token(entry, v))
      throw MatrixMarketError(Kind::MalformedEntry, line_no, line);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw MatrixMarketError(Kind::IndexOutOfRange, line_no, line);
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
    ++seen;
  }
  if (seen != declared)
    throw MatrixMarketError(Kind::EntryCountMismatch, line_no,
                            std::to_string(seen) + " of " +
                                std::to_string(declared) + " entries");
  return SparseMatrix::from_triplets(rows, std::move(entries));
}

SparseMatrix parse_matrix_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix_market(in);
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file " + path);
  return parse_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n() << ' ' << a.n() << ' ' << a.nnz() << '\n';
  const auto& offsets = a.row_offsets();
  for (std::size_t r = 0; r < a.n(); ++r) {
    for (std::size_t p = offsets[r]; p < offsets[r + 1]; ++p) {
      out << r + 1 << ' ' << a.column_indices()[p] + 1 << ' ';
      format_double(out, a.values()[p]);
      out << '\n';
    }
  }
}

}  // namespace bbstab::sparse

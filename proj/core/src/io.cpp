#include "spatialcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "spatialcorr/error.hpp"

namespace spatialcorr {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::string where(std::string_view source, std::size_t line, std::size_t col) {
  return std::string(source) + ":" + std::to_string(line) + ":" +
         std::to_string(col);
}

std::vector<Row> read_rows(std::istream& in) {
  std::vector<Row> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    Row row;
    row.line = number;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        row.fields.push_back(trim(std::string_view(line).substr(start)));
        break;
      }
      row.fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_real(const std::string& text, std::string_view source,
                  std::size_t line, std::size_t col) {
  if (text.empty()) {
    throw Error(ErrorCode::kParseError,
                where(source, line, col) + ": missing value");
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorCode::kParseError,
                where(source, line, col) + ": '" + text + "' is not a real number");
  }
  return value;
}

void expect_width(const Row& row, std::size_t width, std::string_view source) {
  if (row.fields.size() != width) {
    throw Error(ErrorCode::kParseError,
                where(source, row.line, 1) + ": expected " +
                    std::to_string(width) + " fields, found " +
                    std::to_string(row.fields.size()));
  }
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  }
  return in;
}

// Maps each file id to its position in the requested output order.
std::vector<std::size_t> align(const std::vector<std::string>& file_ids,
                               const std::vector<std::string>& ids,
                               std::string_view source) {
  if (ids.empty()) {
    std::vector<std::size_t> identity(file_ids.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    return identity;
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < ids.size(); ++i) position.emplace(ids[i], i);
  std::vector<std::size_t> mapping;
  mapping.reserve(file_ids.size());
  for (const auto& id : file_ids) {
    const auto it = position.find(id);
    if (it == position.end()) {
      throw Error(ErrorCode::kUnknownId,
                  std::string(source) + ": id '" + id +
                      "' does not appear in the attribute table");
    }
    mapping.push_back(it->second);
  }
  if (file_ids.size() != ids.size()) {
    std::set<std::string> present(file_ids.begin(), file_ids.end());
    for (const auto& id : ids) {
      if (!present.count(id)) {
        throw Error(ErrorCode::kSchemaError,
                    std::string(source) + ": no distances for id '" + id + "'");
      }
    }
  }
  return mapping;
}

DistanceMatrix read_square(const std::vector<Row>& rows,
                           const std::vector<std::string>& ids,
                           std::string_view source) {
  if (rows.empty()) {
    throw Error(ErrorCode::kParseError, std::string(source) + ": empty file");
  }
  const Row& header = rows.front();
  if (header.fields.size() < 2) {
    throw Error(ErrorCode::kParseError,
                where(source, header.line, 1) + ": square header needs ids");
  }
  std::vector<std::string> col_ids(header.fields.begin() + 1, header.fields.end());
  {
    std::set<std::string> unique(col_ids.begin(), col_ids.end());
    if (unique.size() != col_ids.size()) {
      throw Error(ErrorCode::kDuplicateId,
                  where(source, header.line, 1) + ": duplicate id in header");
    }
  }
  const std::size_t n = col_ids.size();
  if (rows.size() - 1 != n) {
    throw Error(ErrorCode::kParseError,
                std::string(source) + ": square form has " + std::to_string(n) +
                    " columns but " + std::to_string(rows.size() - 1) + " rows");
  }
  std::unordered_map<std::string, std::size_t> col_index;
  for (std::size_t j = 0; j < n; ++j) col_index.emplace(col_ids[j], j);

  Matrix file(n, n);
  std::vector<bool> seen(n, false);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    expect_width(row, n + 1, source);
    const auto it = col_index.find(row.fields[0]);
    if (it == col_index.end()) {
      throw Error(ErrorCode::kSchemaError,
                  where(source, row.line, 1) + ": row id '" + row.fields[0] +
                      "' is not in the header");
    }
    const std::size_t i = it->second;
    if (seen[i]) {
      throw Error(ErrorCode::kDuplicateId,
                  where(source, row.line, 1) + ": duplicate row '" +
                      row.fields[0] + "'");
    }
    seen[i] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        file(i, j) = 0.0;
        continue;
      }
      file(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_real(row.fields[j + 1], source, row.line, j + 2);
    }
  }

  const auto mapping = align(col_ids, ids, source);
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r(static_cast<Eigen::Index>(mapping[i]), static_cast<Eigen::Index>(mapping[j])) =
          file(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DistanceMatrix(std::move(r), ids.empty() ? col_ids : ids);
}

DistanceMatrix read_long(const std::vector<Row>& rows,
                         const std::vector<std::string>& ids,
                         std::string_view source) {
  if (rows.empty()) {
    throw Error(ErrorCode::kParseError, std::string(source) + ": empty file");
  }
  const Row& header = rows.front();
  expect_width(header, 3, source);
  if (lower(header.fields[0]) != "from" || lower(header.fields[1]) != "to" ||
      lower(header.fields[2]) != "distance") {
    throw Error(ErrorCode::kParseError,
                where(source, header.line, 1) +
                    ": long form header must be 'from,to,distance'");
  }

  std::vector<std::string> file_ids;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& id) {
    const auto [it, inserted] = index.emplace(id, file_ids.size());
    if (inserted) file_ids.push_back(id);
    return it->second;
  };
  if (!ids.empty()) {
    for (const auto& id : ids) intern(id);
  }

  std::map<std::pair<std::size_t, std::size_t>, double> pairs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    expect_width(row, 3, source);
    for (std::size_t c = 0; c < 2; ++c) {
      if (row.fields[c].empty()) {
        throw Error(ErrorCode::kParseError,
                    where(source, row.line, c + 1) + ": missing id");
      }
      if (!ids.empty() && !index.count(row.fields[c])) {
        throw Error(ErrorCode::kUnknownId,
                    where(source, row.line, c + 1) + ": id '" + row.fields[c] +
                        "' does not appear in the attribute table");
      }
    }
    const std::size_t a = intern(row.fields[0]);
    const std::size_t b = intern(row.fields[1]);
    if (a == b) {
      throw Error(ErrorCode::kParseError,
                  where(source, row.line, 1) + ": self pair '" + row.fields[0] +
                      "'");
    }
    const double d = parse_real(row.fields[2], source, row.line, 3);
    const auto key = std::minmax(a, b);
    if (!pairs.emplace(std::make_pair(key.first, key.second), d).second) {
      throw Error(ErrorCode::kDuplicatePair,
                  where(source, row.line, 1) + ": pair (" + row.fields[0] +
                      ", " + row.fields[1] + ") listed more than once");
    }
  }

  const std::size_t n = file_ids.size();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto it = pairs.find({i, j});
      if (it == pairs.end()) {
        throw Error(ErrorCode::kMissingPair,
                    std::string(source) + ": no distance for pair (" +
                        file_ids[i] + ", " + file_ids[j] + ")");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = it->second;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = it->second;
    }
  }
  return DistanceMatrix(std::move(m), file_ids);
}

}  // namespace

std::optional<DistanceFormat> parse_distance_format(std::string_view name) noexcept {
  if (name == "square") return DistanceFormat::kSquare;
  if (name == "long") return DistanceFormat::kLong;
  return std::nullopt;
}

RawAttributeTable read_attributes(std::istream& in, std::string_view source) {
  const auto rows = read_rows(in);
  if (rows.empty()) {
    throw Error(ErrorCode::kParseError, std::string(source) + ": empty file");
  }
  const Row& header = rows.front();
  expect_width(header, 3, source);
  if (lower(header.fields[0]) != "id" || lower(header.fields[1]) != "x" ||
      lower(header.fields[2]) != "y") {
    throw Error(ErrorCode::kParseError,
                where(source, header.line, 1) + ": header must be 'id,x,y'");
  }
  std::vector<std::string> ids;
  Vector x(static_cast<Eigen::Index>(rows.size() - 1));
  Vector y(static_cast<Eigen::Index>(rows.size() - 1));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const Row& row = rows[r];
    expect_width(row, 3, source);
    if (row.fields[0].empty()) {
      throw Error(ErrorCode::kParseError,
                  where(source, row.line, 1) + ": missing id");
    }
    ids.push_back(row.fields[0]);
    const auto i = static_cast<Eigen::Index>(r - 1);
    x[i] = parse_real(row.fields[1], source, row.line, 2);
    y[i] = parse_real(row.fields[2], source, row.line, 3);
  }
  return RawAttributeTable(std::move(ids), std::move(x), std::move(y));
}

RawAttributeTable parse_attributes(const std::filesystem::path& path) {
  auto in = open(path);
  return read_attributes(in, path.string());
}

DistanceMatrix read_distances(std::istream& in, DistanceFormat format,
                              const std::vector<std::string>& ids,
                              std::string_view source) {
  const auto rows = read_rows(in);
  return format == DistanceFormat::kSquare ? read_square(rows, ids, source)
                                           : read_long(rows, ids, source);
}

DistanceMatrix parse_distances(const std::filesystem::path& path,
                               DistanceFormat format,
                               const std::vector<std::string>& ids) {
  auto in = open(path);
  return read_distances(in, format, ids, path.string());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& ids,
                      const Matrix& m) {
  out << "id";
  for (const auto& id : ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << format_number(m(i, j));
    out << '\n';
  }
}

}  // namespace spatialcorr

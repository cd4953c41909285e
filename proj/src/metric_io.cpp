#include "assouad/metric_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "assouad/errors.hpp"
#include "assouad/report.hpp"

namespace assouad::io {

namespace {

FiniteMetricSpace parse_structured(const std::string& text, double tol) {
  report::Json doc;
  try {
    doc = report::Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed distance document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc["d"].is_array())
    throw ParseError("distance document needs an array field 'd'");

  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["d"]) {
    if (!row.is_array()) throw ParseError("every entry of 'd' must be an array");
    std::vector<double> r;
    for (const auto& v : row) {
      if (v.is_number()) {
        r.push_back(v.get<double>());
      } else if (v.is_string()) {
        // non-finite values written by our own emitter
        const auto s = v.get<std::string>();
        if (s == "inf") r.push_back(kInfinity);
        else if (s == "-inf") r.push_back(-kInfinity);
        else if (s == "nan") r.push_back(std::numeric_limits<double>::quiet_NaN());
        else throw ParseError("non-numeric distance entry '" + s + "'");
      } else {
        throw ParseError("non-numeric distance entry");
      }
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw ParseError("'labels' must be an array");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw ParseError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return validate_metric(rows, std::move(labels), tol);
}

std::vector<double> parse_csv_row(const std::string& line, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t pos = 0;
    try {
      out.push_back(std::stod(cell, &pos));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
    }
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos != cell.size())
      throw ParseError("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
  }
  return out;
}

FiniteMetricSpace parse_flat(const std::string& text, double tol) {
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (n < 0) {
      try {
        n = std::stoll(line);
      } catch (const std::exception&) {
        throw ParseError("flat matrix must start with the point count");
      }
      if (n <= 0) throw ParseError("point count must be positive");
      continue;
    }
    rows.push_back(parse_csv_row(line, lineno));
  }
  if (n < 0) throw ParseError("empty distance file");
  if (rows.size() != static_cast<std::size_t>(n))
    throw MalformedMatrix("header announces " + std::to_string(n) + " rows, found " +
                          std::to_string(rows.size()));
  return validate_metric(rows, {}, tol);
}

}  // namespace

FiniteMetricSpace parse_metric(const std::string& text, double tol) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty distance file");
  return text[first] == '{' ? parse_structured(text, tol) : parse_flat(text, tol);
}

FiniteMetricSpace read_metric(const std::filesystem::path& path, double tol) {
  return parse_metric(read_text(path), tol);
}

std::string format_metric(const FiniteMetricSpace& x, MatrixFormat format) {
  const std::size_t n = x.size();
  if (format == MatrixFormat::flat) {
    std::string out = std::to_string(n) + "\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out += ",";
        out += report::full_number(x(i, j));
      }
      out += "\n";
    }
    return out;
  }
  report::Json doc;
  doc["labels"] = x.labels();
  report::Json rows = report::Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    report::Json r = report::Json::array();
    for (std::size_t j = 0; j < n; ++j) r.push_back(x(i, j));
    rows.push_back(std::move(r));
  }
  doc["d"] = std::move(rows);
  return report::dump_structured(doc);
}

void write_metric(const std::filesystem::path& path, const FiniteMetricSpace& x,
                  MatrixFormat format) {
  write_text(path, format_metric(x, format));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace assouad::io

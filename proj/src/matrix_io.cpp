#include "loglie/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace loglie {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

MatrixKind parse_kind(const std::string& s) {
  if (s == "spd") return MatrixKind::Spd;
  if (s == "corr") return MatrixKind::Corr;
  throw ParseError("unknown matrix kind: " + s + " (expected \"spd\" or \"corr\")");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

MatrixFile parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        size_t pos = 0;
        const double v = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw ParseError("trailing characters in CSV cell: " + cell);
        row.push_back(v);
      } catch (const std::invalid_argument&) {
        throw ParseError("not a number in CSV: " + cell);
      } catch (const std::out_of_range&) {
        throw ParseError("number out of range in CSV: " + cell);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty CSV matrix");
  MatrixFile f;
  f.matrices.push_back(SymMat::from_rows(rows));
  return f;
}

MatrixFile parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrices") || !doc["matrices"].is_array())
    throw ParseError("JSON input must be an object with a \"matrices\" array");

  MatrixFile f;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw ParseError("\"kind\" must be a string");
    f.kind = parse_kind(doc["kind"].get<std::string>());
  }
  for (const auto& jmat : doc["matrices"]) {
    if (!jmat.is_array()) throw ParseError("each matrix must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& jrow : jmat) {
      if (!jrow.is_array()) throw ParseError("each matrix row must be an array");
      std::vector<double> row;
      for (const auto& v : jrow) {
        if (!v.is_number()) throw ParseError("matrix entries must be numbers");
        row.push_back(v.get<double>());
      }
      rows.push_back(std::move(row));
    }
    f.matrices.push_back(SymMat::from_rows(rows));
  }
  if (f.matrices.empty()) throw ParseError("\"matrices\" array is empty");
  return f;
}

MatrixFile read_matrix_file(const std::string& path) {
  const std::string text = slurp(path);
  if (ends_with(path, ".csv")) return parse_csv(text);
  return parse_json(text);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_json(const SymMat& m) {
  std::string out = "[";
  for (int i = 0; i < m.dim(); ++i) {
    out += (i == 0) ? "[" : ",[";
    for (int j = 0; j < m.dim(); ++j) {
      if (j > 0) out += ",";
      out += format_double(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

std::string matrix_to_csv(const SymMat& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j > 0) out += ",";
      out += format_double(m(i, j));
    }
    out += "\n";
  }
  return out;
}

}  // namespace loglie

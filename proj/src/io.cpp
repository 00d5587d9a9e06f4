#include "metgeo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "metgeo/error.hpp"

namespace metgeo::io {

DistanceMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d")) throw StructuralError("matrix JSON needs an object with key \"d\"");
  const auto& d = j.at("d");
  if (!d.is_array()) throw StructuralError("\"d\" must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : d) {
    if (!row.is_array()) throw StructuralError("\"d\" must be an array of rows");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw StructuralError("matrix entries must be numbers");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) throw StructuralError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    labels = DistanceMatrix::default_labels(rows.size());
  }
  return DistanceMatrix(std::move(labels), rows);
}

Json matrix_to_json(const DistanceMatrix& d) {
  Json j;
  j["schema"] = "metgeo.matrix/1";
  j["labels"] = d.labels();
  j["d"] = d.rows();
  return j;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream s(line);
  while (std::getline(s, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw StructuralError("CSV line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

DistanceMatrix parse_csv_matrix(std::istream& in) {
  std::string line;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    if (labels.empty()) {
      labels = std::move(fields);
      continue;
    }
    if (fields.size() == labels.size() + 1) fields.erase(fields.begin());
    if (fields.size() != labels.size()) {
      throw StructuralError("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                            " entries, expected " + std::to_string(labels.size()));
    }
    std::vector<double> r;
    for (const auto& f : fields) r.push_back(parse_number(f, line_no));
    rows.push_back(std::move(r));
  }
  if (labels.empty()) throw StructuralError("CSV matrix is empty");
  return DistanceMatrix(std::move(labels), rows);
}

void write_csv_matrix(std::ostream& out, const DistanceMatrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i) out << (i ? "," : "") << d.label(i);
  out << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) out << (j ? "," : "") << format_double(d(i, j));
    out << '\n';
  }
}

DistanceMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return parse_csv_matrix(in);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError("'" + path + "': " + e.what());
  }
  return matrix_from_json(j);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit(std::ostream& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out << format_double(v);
      } else {
        out << "null";
      }
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << (flat ? ", " : ",");
        if (!flat) newline(depth + 1);
        emit(out, e, indent, depth + 1);
        first = false;
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        newline(depth + 1);
        out << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        emit(out, it.value(), indent, depth + 1);
        first = false;
      }
      newline(depth);
      out << '}';
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& j, int indent) {
  emit(out, j, indent, 0);
  out << '\n';
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream s;
  write_json(s, j, indent);
  return s.str();
}

}  // namespace metgeo::io

#include "farey/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace farey {

using nlohmann::json;

std::string format_real(Real x) {
  if (std::isnan(x)) return "nan";
  if (is_infinite(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
  return buf;
}

namespace {

// Parses JSON, rejecting duplicate object keys.
json parse_strict(std::string_view text) {
  std::vector<std::set<std::string>> scopes;
  json::parser_callback_t cb = [&scopes](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        scopes.emplace_back();
        break;
      case json::parse_event_t::object_end:
        scopes.pop_back();
        break;
      case json::parse_event_t::key:
        if (!scopes.back().insert(parsed.get<std::string>()).second)
          throw std::invalid_argument("duplicate key \"" + parsed.get<std::string>() + "\"");
        break;
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed file at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void reject_unknown(const json& object, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
  }
}

Real number_field(const json& object, const char* name, const std::string& where) {
  auto it = object.find(name);
  if (it == object.end()) throw std::invalid_argument("missing \"" + std::string(name) + "\" in " + where);
  if (!it->is_number()) throw std::invalid_argument("\"" + std::string(name) + "\" in " + where + " must be a number");
  return static_cast<Real>(it->get<double>());
}

struct EdgeDocument {
  std::size_t depth;
  Real default_value;
  std::vector<std::pair<FareyEdge, Real>> entries;
};

EdgeDocument read_edge_document(std::string_view text, const char* value_name, Real fallback_default) {
  json doc = parse_strict(text);
  if (!doc.is_object()) throw std::invalid_argument("top level must be an object");
  reject_unknown(doc, {"default", "depth", "edges"}, "top level");
  EdgeDocument out{0, fallback_default, {}};
  auto depth = doc.find("depth");
  if (depth == doc.end() || !depth->is_number_unsigned())
    throw std::invalid_argument("\"depth\" must be a non-negative integer");
  out.depth = depth->get<std::size_t>();
  if (doc.contains("default")) out.default_value = number_field(doc, "default", "top level");
  auto edges = doc.find("edges");
  if (edges == doc.end() || !edges->is_array()) throw std::invalid_argument("\"edges\" must be an array");
  std::unordered_set<FareyEdge, FareyEdgeHash> seen;
  std::size_t index = 0;
  for (const auto& item : *edges) {
    std::string where = "edges[" + std::to_string(index++) + "]";
    if (!item.is_object()) throw std::invalid_argument(where + " must be an object");
    reject_unknown(item, {"key", value_name}, where);
    auto key = item.find("key");
    if (key == item.end() || !key->is_string()) throw std::invalid_argument(where + " needs a string \"key\"");
    FareyEdge e = [&] {
      try {
        return FareyEdge::parse_key(key->get<std::string>());
      } catch (const std::invalid_argument& err) {
        throw std::invalid_argument(where + ": " + err.what());
      }
    }();
    if (!seen.insert(e).second) throw std::invalid_argument(where + ": duplicate edge " + e.key());
    out.entries.emplace_back(e, number_field(item, value_name, where));
  }
  return out;
}

std::string write_edge_document(std::size_t depth, Real default_value, const char* value_name,
                                const std::vector<std::pair<std::string, Real>>& entries) {
  std::ostringstream out;
  out << "{\n  \"default\": " << format_real(default_value) << ",\n  \"depth\": " << depth << ",\n  \"edges\": [";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << (i ? ",\n" : "\n") << "    {\"key\": \"" << entries[i].first << "\", \"" << value_name
        << "\": " << format_real(entries[i].second) << "}";
  }
  out << (entries.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

}  // namespace

ShearMap read_shear_json(std::string_view text) {
  EdgeDocument doc = read_edge_document(text, "s", 0);
  ShearMap s(doc.depth, doc.default_value);
  for (const auto& [e, v] : doc.entries) s.set(e, v);
  return s;
}

std::string write_shear_json(const ShearMap& s) {
  std::vector<std::pair<std::string, Real>> entries;
  for (const auto& e : s.entries()) entries.emplace_back(e.edge.key(), e.value);
  return write_edge_document(s.depth(), s.default_value(), "s", entries);
}

LambdaMap read_lambda_json(std::string_view text) {
  EdgeDocument doc = read_edge_document(text, "lambda", 1);
  LambdaMap lambda(doc.depth, doc.default_value);
  for (const auto& [e, v] : doc.entries) lambda.set(e, v);
  return lambda;
}

std::string write_lambda_json(const LambdaMap& lambda) {
  std::vector<std::pair<std::string, Real>> entries;
  for (const auto& e : lambda.entries()) entries.emplace_back(e.edge.key(), e.value);
  return write_edge_document(lambda.depth(), lambda.default_value(), "lambda", entries);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    std::string item(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

std::vector<FareyEdge> parse_edge_list(std::string_view text) {
  std::vector<FareyEdge> out;
  for (const auto& item : split(text, ',')) out.push_back(FareyEdge::parse_key(item));
  return out;
}

std::vector<ExtendedRational> parse_vertex_list(std::string_view text) {
  std::vector<ExtendedRational> out;
  for (const auto& item : split(text, ',')) out.push_back(ExtendedRational::parse(item));
  return out;
}

std::string tessellation_csv(std::size_t depth) {
  std::ostringstream out;
  out << "kind,key,generation\n";
  for (const auto& r : enumerate_edges(depth)) out << "edge," << r.edge.key() << "," << r.generation << "\n";
  auto triangles = enumerate_triangles(depth);
  std::stable_sort(triangles.begin(), triangles.end(), [](const TriangleRecord& x, const TriangleRecord& y) {
    if (x.depth != y.depth) return x.depth < y.depth;
    const auto& a = x.triangle.vertices();
    const auto& b = y.triangle.vertices();
    for (int i = 0; i < 3; ++i)
      if (!(a[i] == b[i])) return canonical_less(a[i], b[i]);
    return false;
  });
  for (const auto& t : triangles) out << "triangle," << t.triangle.key() << "," << t.depth << "\n";
  return out.str();
}

std::string char_map_csv(const std::vector<ExtendedRational>& vertices, const std::vector<Real>& values) {
  std::ostringstream out;
  out << "vertex,value\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) out << vertices[i].key() << "," << format_real(values[i]) << "\n";
  return out.str();
}

std::string fan_report_csv(const QsReport& report) {
  std::ostringstream out;
  out << "tip,m,k,ratio\n";
  for (const auto& tip : report.tips)
    for (const auto& e : tip.entries) out << tip.tip.key() << "," << e.m << "," << e.k << "," << format_real(e.ratio) << "\n";
  return out.str();
}

std::string symmetric_csv(const std::vector<SymmetricBucket>& buckets) {
  std::ostringstream out;
  out << "generation,max_deviation,windows\n";
  for (const auto& b : buckets) out << b.generation << "," << format_real(b.max_deviation) << "," << b.count << "\n";
  return out.str();
}

std::string chain_series_csv(const ChainSeriesReport& report) {
  std::ostringstream out;
  out << "n,term,partial_sum,signs\n";
  for (std::size_t i = 0; i < report.terms.size(); ++i) {
    out << i + 1 << "," << format_real(report.terms[i]) << "," << format_real(report.partial_sums[i]) << ",";
    for (int s : report.signs[i]) out << (s > 0 ? '+' : '-');
    out << "\n";
  }
  return out.str();
}

std::string lambda_series_csv(const LambdaSeriesReport& report) {
  std::ostringstream out;
  out << "n,term,partial_sum\n";
  for (std::size_t i = 0; i < report.terms.size(); ++i)
    out << i + 1 << "," << format_real(report.terms[i]) << "," << format_real(report.partial_sums[i]) << "\n";
  return out.str();
}

std::string realization_csv(const DecoratedRealization& r) {
  std::vector<ExtendedRational> vertices;
  for (const auto& [v, _] : r.positions) vertices.push_back(v);
  std::sort(vertices.begin(), vertices.end(), [](const auto& x, const auto& y) { return canonical_less(x, y); });
  std::ostringstream out;
  out << "vertex,position,horocycle_size\n";
  for (const auto& v : vertices)
    out << v.key() << "," << format_real(r.position(v)) << "," << format_real(r.horocycle(v).size) << "\n";
  return out.str();
}

namespace {

bool is_json_number(const std::string& cell) {
  if (cell.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size() && std::isfinite(v) &&
         cell.find_first_not_of("0123456789+-.eE") == std::string::npos;
}

std::string json_cell(const std::string& cell) { return is_json_number(cell) ? cell : json(cell).dump(); }

}  // namespace

std::string with_summary_csv(const std::string& csv, const Summary& summary) {
  if (summary.empty()) return csv;
  std::string out = csv + "#";
  for (const auto& [k, v] : summary) out += " " + k + "=" + v;
  return out + "\n";
}

std::string csv_to_json(const std::string& csv, const Summary& summary) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> columns = split(line, ',');
  std::ostringstream out;
  out << "{\n  \"rows\": [";
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      std::size_t end = line.find(',', start);
      cells.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    out << (first ? "\n" : ",\n") << "    {";
    for (std::size_t i = 0; i < columns.size() && i < cells.size(); ++i)
      out << (i ? ", " : "") << json(columns[i]).dump() << ": " << json_cell(cells[i]);
    out << "}";
    first = false;
  }
  out << (first ? "]" : "\n  ]") << ",\n  \"summary\": {";
  for (std::size_t i = 0; i < summary.size(); ++i)
    out << (i ? ", " : "") << json(summary[i].first).dump() << ": " << json_cell(summary[i].second);
  out << "}\n}\n";
  return out.str();
}

}  // namespace farey

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <string>

#include "ngap/cli.hpp"
#include "ngap/errors.hpp"

namespace ngap::cli {

using nlohmann::json;

InputFormat format_from_string(std::string_view s) {
  if (s == "auto") return InputFormat::Auto;
  if (s == "json") return InputFormat::Json;
  if (s == "csv") return InputFormat::Csv;
  throw Error(ErrorCode::SchemaError, "unknown input format '" + std::string(s) + "'");
}

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw Error(ErrorCode::SchemaError, where + ": expected a number, got " + v.dump());
  return v.get<double>();
}

std::size_t count_at(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::SchemaError, where + ": expected a non-negative integer, got " + v.dump());
  }
  return v.get<std::size_t>();
}

Vector numbers_at(const json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorCode::SchemaError, where + ": expected an array");
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_at(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

SymMatrix parse_distances(const json& doc) {
  const json& d = doc.at("distances");
  if (!d.is_array() || d.empty()) throw Error(ErrorCode::SchemaError, "distances: expected a non-empty array");
  std::vector<Vector> rows;
  if (d.front().is_array()) {
    for (std::size_t i = 0; i < d.size(); ++i) rows.push_back(numbers_at(d[i], "distances[" + std::to_string(i) + "]"));
  } else {
    const Vector flat = numbers_at(d, "distances");
    std::size_t n = 0;
    if (doc.contains("n")) {
      n = count_at(doc["n"], "n");
    } else {
      while (n * n < flat.size()) ++n;
    }
    if (n * n != flat.size()) {
      throw Error(ErrorCode::SchemaError, "distances: " + std::to_string(flat.size()) +
                                              " entries do not form an n x n matrix");
    }
    for (std::size_t i = 0; i < n; ++i) rows.emplace_back(flat.begin() + i * n, flat.begin() + (i + 1) * n);
  }
  if (doc.contains("n") && count_at(doc["n"], "n") != rows.size()) {
    throw Error(ErrorCode::SchemaError, "n = " + doc["n"].dump() + " but distances has " +
                                            std::to_string(rows.size()) + " rows");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::SchemaError, "distances[" + std::to_string(i) + "]: expected " +
                                              std::to_string(rows.size()) + " entries, got " +
                                              std::to_string(rows[i].size()));
    }
  }
  return SymMatrix::from_rows(rows);
}

WeightedGraph parse_edges(const json& doc) {
  if (!doc.contains("n")) throw Error(ErrorCode::SchemaError, "edge list needs field 'n'");
  const std::size_t n = count_at(doc["n"], "n");
  const json& e = doc.at("edges");
  if (!e.is_array()) throw Error(ErrorCode::SchemaError, "edges: expected an array");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    if (!e[k].is_array() || e[k].size() != 3) {
      throw Error(ErrorCode::SchemaError, where + ": expected [i, j, w]");
    }
    const std::size_t i = count_at(e[k][0], where + "[0]");
    const std::size_t j = count_at(e[k][1], where + "[1]");
    if (i < 1 || j < 1) throw Error(ErrorCode::SchemaError, where + ": vertex ids are 1-based");
    edges.push_back({i - 1, j - 1, number_at(e[k][2], where + "[2]")});
  }
  WeightedGraph g(n, std::move(edges));
  if (!g.connected()) throw Error(ErrorCode::DisconnectedGraph, "edge list does not connect all " + std::to_string(n) + " vertices");
  return g;
}

constexpr std::string_view kGenerators[] = {"discrete", "cycle", "path", "star", "random_tree"};

GeneratorSpec parse_generator(const std::string& name, const json& v) {
  GeneratorSpec g;
  g.name = name;
  if (name == "discrete" || name == "cycle") {
    g.n = count_at(v, name);
  } else if (name == "path") {
    if (v.is_object()) {
      g.weights = numbers_at(v.at("weights"), "path.weights");
      g.n = g.weights.size() + 1;
    } else {
      g.n = count_at(v, name);
    }
  } else if (name == "star") {
    g.weights = numbers_at(v, "star");
    g.n = g.weights.size() + 1;
  } else if (name == "random_tree") {
    if (!v.is_object()) throw Error(ErrorCode::SchemaError, "random_tree: expected an object");
    g.n = count_at(v.at("n"), "random_tree.n");
    if (v.contains("seed")) g.seed = v["seed"].get<std::uint64_t>();
    if (v.contains("w_min")) g.w_min = number_at(v["w_min"], "random_tree.w_min");
    if (v.contains("w_max")) g.w_max = number_at(v["w_max"], "random_tree.w_max");
  }
  return g;
}

InputDocument parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "top level must be an object");
  if (doc.contains("generator")) {
    doc = doc["generator"];
    if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "generator must be an object");
  }

  InputDocument out;
  try {
    if (doc.contains("p")) out.p = number_at(doc["p"], "p");
    int kinds = 0;
    if (doc.contains("distances")) {
      ++kinds;
      out.kind = InputKind::Matrix;
    }
    if (doc.contains("edges")) {
      ++kinds;
      out.kind = InputKind::EdgeList;
    }
    std::string gen;
    for (auto name : kGenerators) {
      if (doc.contains(std::string(name))) {
        ++kinds;
        gen = name;
        out.kind = InputKind::Generator;
      }
    }
    if (kinds != 1) {
      throw Error(ErrorCode::SchemaError,
                  "exactly one of 'distances', 'edges' or a generator key must be present (found " +
                      std::to_string(kinds) + ")");
    }
    switch (out.kind) {
      case InputKind::Matrix:
        out.matrix = parse_distances(doc);
        if (doc.contains("u")) out.functional = numbers_at(doc["u"], "u");
        break;
      case InputKind::EdgeList: out.graph = parse_edges(doc); break;
      case InputKind::Generator: out.generator = parse_generator(gen, doc[gen]); break;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  if (!(out.p >= 0.0)) throw Error(ErrorCode::SchemaError, "p must be >= 0");
  return out;
}

InputDocument parse_csv(std::string_view text) {
  std::vector<Vector> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), ';', ' ');
    std::istringstream fields(line);
    std::string tok;
    Vector row;
    std::size_t field = 0;
    while (fields >> tok) {
      ++field;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", field " +
                                               std::to_string(field) + ": '" + tok + "' is not a number");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "no matrix rows found");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::SchemaError, "row " + std::to_string(i + 1) + " has " +
                                              std::to_string(rows[i].size()) + " fields, expected " +
                                              std::to_string(rows.size()));
    }
  }
  InputDocument out;
  out.kind = InputKind::Matrix;
  out.matrix = SymMatrix::from_rows(rows);
  return out;
}

}  // namespace

InputDocument parse_input(std::string_view text, InputFormat format) {
  if (format == InputFormat::Auto) {
    const auto first = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    format = (first != text.end() && *first == '{') ? InputFormat::Json : InputFormat::Csv;
  }
  return format == InputFormat::Json ? parse_json(text) : parse_csv(text);
}

InputDocument generator_document(GeneratorSpec spec, double p) {
  InputDocument d;
  d.kind = InputKind::Generator;
  d.generator = std::move(spec);
  d.p = p;
  return d;
}

std::optional<WeightedGraph> document_graph(const InputDocument& doc) {
  if (doc.kind == InputKind::EdgeList) return doc.graph;
  if (doc.kind != InputKind::Generator) return std::nullopt;
  const GeneratorSpec& g = *doc.generator;
  if (g.name == "cycle") return gen_cycle(g.n);
  if (g.name == "path") return g.weights.empty() ? gen_path(g.n) : gen_path(g.n, g.weights);
  if (g.name == "star") return gen_star(g.weights);
  if (g.name == "random_tree") return gen_random_tree(g.n, g.w_min, g.w_max, g.seed);
  return std::nullopt;
}

MetricSpace document_metric(const InputDocument& doc) {
  if (doc.kind == InputKind::Matrix) return validate_metric(*doc.matrix);
  if (doc.kind == InputKind::Generator && doc.generator->name == "discrete") return gen_discrete(doc.generator->n);
  return path_metric(*document_graph(doc));
}

std::optional<OracleResult> document_oracle(const InputDocument& doc) {
  if (doc.p != 1.0) return std::nullopt;
  if (doc.kind == InputKind::Generator) {
    const GeneratorSpec& g = *doc.generator;
    if (g.name == "discrete") return gamma_discrete(g.n);
    if (g.name == "cycle") return gamma_cycle(g.n);
  }
  if (auto graph = document_graph(doc); graph && graph->is_tree()) return gamma_tree(*graph);
  return std::nullopt;
}

}  // namespace ngap::cli

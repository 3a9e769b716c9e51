#include "gowers/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gowers/error.hpp"

namespace gowers {

namespace {

std::vector<double> read_values(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidParameter(std::string(what) + " must be an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const Json& x : j) {
    if (!x.is_number()) throw InvalidParameter(std::string(what) + " must contain only numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidParameter(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const GroupSpec& g) { return Json(g.orders()); }

GroupSpec group_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidParameter("orders must be a nonempty array");
  std::vector<std::size_t> orders;
  for (const Json& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 1) throw InvalidParameter("orders must be positive integers");
    orders.push_back(x.get<std::size_t>());
  }
  return GroupSpec(std::move(orders));
}

GroupSpec parse_group(const std::string& text) {
  std::vector<std::size_t> orders;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < 1) {
      throw InvalidParameter("bad group specification '" + text + "'");
    }
    orders.push_back(v);
  }
  if (orders.empty()) throw InvalidParameter("bad group specification '" + text + "'");
  return GroupSpec(std::move(orders));
}

Json to_json(const GroupFunction& f) { return Json{{"orders", to_json(f.group())}, {"values", f.vector()}}; }

GroupFunction group_function_from_json(const Json& j) {
  return GroupFunction(group_from_json(field(j, "orders")), read_values(field(j, "values"), "values"));
}

void write_csv(std::ostream& out, const GroupFunction& f) {
  char buf[64];
  out << "index,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f[i]);
    out << i << ',' << buf << '\n';
  }
}

GroupFunction read_csv(std::istream& in, const GroupSpec& g) {
  std::vector<double> v(g.order(), 0.0);
  std::vector<bool> seen(g.order(), false);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header && line.rfind("index", 0) == 0) {
      header = false;
      continue;
    }
    header = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidParameter("CSV row without a comma: " + line);
    std::size_t idx = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + comma, idx);
    if (ec != std::errc() || idx >= g.order() || seen[idx]) throw InvalidParameter("bad CSV index in: " + line);
    double val = 0.0;
    const char* begin = line.data() + comma + 1;
    auto [q, ec2] = std::from_chars(begin, line.data() + line.size(), val);
    if (ec2 != std::errc()) throw InvalidParameter("bad CSV value in: " + line);
    v[idx] = val;
    seen[idx] = true;
  }
  for (bool s : seen) {
    if (!s) throw InvalidParameter("CSV does not cover every group element");
  }
  return GroupFunction(g, std::move(v));
}

Json to_json(const CubeFunction& F) {
  return Json{{"orders", to_json(F.group())}, {"d", F.dimension()}, {"values", F.vector()}};
}

CubeFunction cube_function_from_json(const Json& j) {
  return CubeFunction(group_from_json(field(j, "orders")), field(j, "d").get<int>(),
                      read_values(field(j, "values"), "values"));
}

Json to_json(const Spectrum& s) {
  std::vector<double> re;
  std::vector<double> im;
  for (const Complex& c : s.coefficients) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return Json{{"orders", to_json(s.group)}, {"re", re}, {"im", im}};
}

Json to_json(const Partition& P) { return Json{{"cells", P.cells()}}; }

Partition partition_from_json(const Json& j, const GroupSpec& g) {
  const Json& cells = field(j, "cells");
  if (!cells.is_array()) throw InvalidParameter("cells must be an array");
  std::vector<std::vector<Element>> out;
  for (const Json& c : cells) out.push_back(c.get<std::vector<Element>>());
  return Partition(g, std::move(out));
}

Json to_json(const VertexMap& fs, int d) {
  Json funcs = Json::object();
  for (const auto& [e, f] : fs) funcs[vertex_label(e, d)] = f.vector();
  return Json{{"orders", to_json(fs.begin()->second.group())}, {"d", d}, {"functions", funcs}};
}

VertexMap vertex_map_from_json(const Json& j, int& d) {
  const GroupSpec g = group_from_json(field(j, "orders"));
  const Json& funcs = field(j, "functions");
  if (!funcs.is_object() || funcs.empty()) throw InvalidParameter("functions must be a nonempty object");
  VertexMap out;
  d = -1;
  for (const auto& [label, values] : funcs.items()) {
    if (d < 0) d = static_cast<int>(label.size());
    if (static_cast<int>(label.size()) != d) throw InvalidParameter("vertex labels have different lengths");
    out.emplace(parse_vertex_label(label), GroupFunction(g, read_values(values, "function values")));
  }
  if (j.contains("d") && j.at("d").get<int>() != d) throw InvalidParameter("d does not match the vertex labels");
  return out;
}

Json to_json(const AdDecomposition& D) {
  Json terms = Json::array();
  for (const AdTerm& t : D.terms) {
    Json vertices = Json::object();
    for (const auto& [e, f] : t.re) {
      Json v{{"values", f.vector()}};
      if (t.conjugate_pair) {
        auto it = t.im.find(e);
        v["imag"] = it == t.im.end() ? std::vector<double>(f.size(), 0.0) : it->second.vector();
      }
      vertices[vertex_label(e, D.d)] = v;
    }
    terms.push_back(Json{{"conjugate_pair", t.conjugate_pair}, {"vertices", vertices}});
  }
  Json out{{"d", D.d}, {"terms", terms}};
  if (!D.terms.empty()) out["orders"] = to_json(D.terms.front().re.begin()->second.group());
  return out;
}

AdDecomposition ad_decomposition_from_json(const Json& j) {
  AdDecomposition D;
  D.d = field(j, "d").get<int>();
  const GroupSpec g = group_from_json(field(j, "orders"));
  for (const Json& t : field(j, "terms")) {
    AdTerm term;
    term.conjugate_pair = t.value("conjugate_pair", false);
    for (const auto& [label, v] : field(t, "vertices").items()) {
      if (static_cast<int>(label.size()) != D.d) throw InvalidParameter("vertex label length must equal d");
      const VertexMask e = parse_vertex_label(label);
      term.re.emplace(e, GroupFunction(g, read_values(field(v, "values"), "values")));
      if (v.contains("imag")) term.im.emplace(e, GroupFunction(g, read_values(v.at("imag"), "imag")));
    }
    D.terms.push_back(std::move(term));
  }
  validate_decomposition(D);
  return D;
}

Json to_json(const DecomposableFunction& F) {
  Json terms = Json::array();
  for (const VertexMap& t : F.terms) {
    Json vertices = Json::object();
    for (const auto& [e, f] : t) vertices[vertex_label(e, F.d)] = f.vector();
    terms.push_back(vertices);
  }
  Json out{{"d", F.d}, {"terms", terms}};
  if (!F.terms.empty()) out["orders"] = to_json(F.terms.front().begin()->second.group());
  return out;
}

DecomposableFunction decomposable_from_json(const Json& j) {
  DecomposableFunction F;
  F.d = field(j, "d").get<int>();
  const GroupSpec g = group_from_json(field(j, "orders"));
  for (const Json& t : field(j, "terms")) {
    VertexMap term;
    for (const auto& [label, v] : t.items()) {
      if (static_cast<int>(label.size()) != F.d) throw InvalidParameter("vertex label length must equal d");
      term.emplace(parse_vertex_label(label), GroupFunction(g, read_values(v, "values")));
    }
    F.terms.push_back(std::move(term));
  }
  validate_decomposable(F);
  return F;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidParameter("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write '" + path + "'");
  out << text;
}

}  // namespace gowers

#include "jacstab/json_io.hpp"

#include <algorithm>
#include <string>

namespace jacstab::json_io {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) schema_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where + " must be an integer");
  return j.get<std::int64_t>();
}

int as_small_int(const Json& j, const std::string& where) {
  const auto x = as_int(j, where);
  if (x < -1'000'000 || x > 1'000'000) throw Error(ErrorCode::InputRange, where + " out of range");
  return static_cast<int>(x);
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where + " must be a string");
  return j.get<std::string>();
}

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  schema_error(where + " must be a rational string or an integer");
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

DualGraph graph_from_json(const Json& j) {
  if (!j.is_object()) schema_error("graph must be a JSON object");
  const int n = as_small_int(field(j, "n"), "n");
  const auto& vs = field(j, "vertices");
  if (!vs.is_array()) schema_error("'vertices' must be an array");
  std::vector<Vertex> vertices;
  for (const auto& v : vs) {
    Vertex vx;
    vx.id = as_string(field(v, "id"), "vertex id");
    vx.genus = as_small_int(field(v, "genus"), "genus of " + vx.id);
    if (v.contains("legs")) {
      const auto& legs = v.at("legs");
      if (!legs.is_array()) schema_error("legs of " + vx.id + " must be an array");
      for (const auto& l : legs) vx.legs.push_back(as_small_int(l, "leg of " + vx.id));
    }
    vertices.push_back(std::move(vx));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges")) {
    const auto& es = j.at("edges");
    if (!es.is_array()) schema_error("'edges' must be an array");
    for (const auto& e : es) {
      if (!e.is_array() || e.size() != 2) schema_error("each edge must be a pair of vertex ids");
      edges.emplace_back(as_string(e[0], "edge endpoint"), as_string(e[1], "edge endpoint"));
    }
  }
  return DualGraph(n, std::move(vertices), edges);
}

Json graph_to_json(const DualGraph& graph) {
  Json vs = Json::array();
  for (const auto& v : graph.vertices()) vs.push_back({{"id", v.id}, {"genus", v.genus}, {"legs", v.legs}});
  Json es = Json::array();
  for (const auto& e : graph.edges()) es.push_back({graph.vertex(e.a).id, graph.vertex(e.b).id});
  return {{"n", graph.markings()}, {"vertices", vs}, {"edges", es}};
}

void require_valid(const DualGraph& graph) {
  const auto violations = graph.validate();
  if (violations.empty()) return;
  std::vector<std::string> details;
  for (const auto& v : violations) details.push_back(v.code + ": " + v.message);
  throw Error(ErrorCode::InvalidGraph, std::to_string(violations.size()) + " invariant violation(s)", details);
}

Json violations_to_json(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) out.push_back({{"code", v.code}, {"message", v.message}});
  return out;
}

Multidegree multidegree_from_json(const DualGraph& graph, const Json& j) {
  Multidegree m{std::vector<std::int64_t>(graph.vertex_count(), 0)};
  if (j.is_array()) {
    if (j.size() != graph.vertex_count()) {
      throw Error(ErrorCode::DegreeMismatch, "multidegree needs one entry per vertex");
    }
    for (std::size_t i = 0; i < j.size(); ++i) m.degrees[i] = as_int(j[i], "degree");
    return m;
  }
  if (!j.is_object()) schema_error("multidegree must be an object keyed by vertex id or an array");
  if (j.size() != graph.vertex_count()) {
    throw Error(ErrorCode::DegreeMismatch, "multidegree keys must be exactly the vertex ids");
  }
  for (const auto& [id, value] : j.items()) {
    const auto v = graph.find(id);
    if (!v) throw Error(ErrorCode::DegreeMismatch, "unknown vertex '" + id + "' in multidegree");
    m.degrees[*v] = as_int(value, "degree of " + id);
  }
  return m;
}

Json multidegree_to_json(const DualGraph& graph, const Multidegree& m) {
  Json out = Json::object();
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) out[graph.vertex(v).id] = m.degrees.at(v);
  return out;
}

Json subcurve_to_json(const DualGraph& graph, VertexSet y) { return graph.ids(y); }

TauData tau_from_json(const Json& j) {
  TauData t;
  const auto& tau = field(j, "tau");
  if (!tau.is_array()) schema_error("'tau' must be an array of integers");
  for (const auto& x : tau) t.tau.push_back(as_int(x, "tau entry"));
  if (j.contains("k")) t.k = as_int(j.at("k"), "k");
  return t;
}

Json verdict_to_json(const DualGraph& graph, const Verdict& v) {
  Json out = {{"verdict", v.pass ? "PASS" : "FAIL"}};
  if (v.witness) {
    const auto& w = *v.witness;
    out["witness"] = {{"subcurve", subcurve_to_json(graph, w.subcurve)},
                      {"degree", w.degree},
                      {"threshold", rational_json(w.threshold)},
                      {"strict", w.strict},
                      {"inequality", std::to_string(w.degree) + (w.strict ? " > " : " >= ") + to_string(w.threshold)}};
  }
  return out;
}

Json reduction_to_json(const DualGraph& graph, const Reduction& r) {
  Json gamma = Json::object();
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) gamma[graph.vertex(v).id] = r.gamma.gamma[v];
  Json trace = Json::array();
  for (const auto& step : r.trace) {
    trace.push_back({{"leaf", graph.vertex(step.leaf).id},
                     {"branch", subcurve_to_json(graph, step.branch)},
                     {"coefficient", step.coefficient},
                     {"after", multidegree_to_json(graph, step.after)}});
  }
  return {{"root", graph.vertex(r.root).id},
          {"gamma", gamma},
          {"result", multidegree_to_json(graph, r.result)},
          {"trace", trace}};
}

Json branch_coefficients_to_json(const DualGraph& graph, const std::vector<BranchCoefficient>& coeffs) {
  Json out = Json::array();
  for (const auto& bc : coeffs) {
    const auto& e = graph.edges()[bc.edge];
    out.push_back({{"edge", {graph.vertex(e.a).id, graph.vertex(e.b).id}},
                   {"side", subcurve_to_json(graph, bc.side)},
                   {"h", bc.branch_genus},
                   {"A", bc.legs},
                   {"c", bc.coefficient}});
  }
  return out;
}

Json class_to_json(const DivisorClass& c) {
  Json psi = Json::object();
  for (const auto& [i, x] : c.psi()) psi[std::to_string(i)] = rational_json(x);
  Json delta = Json::array();
  for (const auto& [b, x] : c.delta()) delta.push_back({{"h", b.h}, {"A", b.legs}, {"c", rational_json(x)}});
  return {{"psi", psi},
          {"lambda1", rational_json(c.lambda1())},
          {"kappa1t", rational_json(c.kappa1t())},
          {"delta_irr", rational_json(c.delta_irr())},
          {"delta", delta}};
}

DivisorClass class_from_json(int g, int n, const Json& j) {
  if (!j.is_object()) schema_error("class must be a JSON object");
  DivisorClassBuilder b(g, n);
  if (j.contains("psi")) {
    for (const auto& [key, value] : j.at("psi").items()) {
      int i = 0;
      try {
        i = std::stoi(key);
      } catch (const std::exception&) {
        schema_error("psi key '" + key + "' is not an integer");
      }
      b.add_psi(i, rational_from(value, "psi_" + key));
    }
  }
  if (j.contains("lambda1")) b.add_lambda1(rational_from(j.at("lambda1"), "lambda1"));
  if (j.contains("kappa1t")) b.add_kappa1t(rational_from(j.at("kappa1t"), "kappa1t"));
  if (j.contains("delta_irr")) b.add_delta_irr(rational_from(j.at("delta_irr"), "delta_irr"));
  if (j.contains("delta")) {
    for (const auto& d : j.at("delta")) {
      std::vector<int> legs;
      for (const auto& l : field(d, "A")) legs.push_back(as_small_int(l, "boundary leg"));
      b.add_boundary(as_small_int(field(d, "h"), "h"), legs, rational_from(field(d, "c"), "delta coefficient"));
    }
  }
  return b.build();
}

Json fiber_class_to_json(const FiberClass& c) {
  Json terms = Json::array();
  for (const auto& [m, x] : c.terms()) {
    Json atoms = Json::array();
    for (const auto& a : m) atoms.push_back(a.text());
    terms.push_back({{"monomial", atoms}, {"c", rational_json(x)}});
  }
  return {{"terms", terms}, {"text", c.text()}};
}

namespace {

FiberClass atom_from_text(int g, int n, const std::string& text) {
  if (text == "K~") return FiberClass::k_tilde(g, n);
  try {
    if (text.rfind("D_", 0) == 0) return FiberClass::d(g, n, std::stoi(text.substr(2)));
    if (text.rfind("B_{", 0) == 0 && text.size() > 5 && text.substr(text.size() - 2) == "}}") {
      const auto comma = text.find(',');
      const auto open = text.find('{', 3);
      if (comma == std::string::npos || open != comma + 1) schema_error("malformed boundary atom '" + text + "'");
      const int h = std::stoi(text.substr(3, comma - 3));
      std::vector<int> legs;
      std::string body = text.substr(open + 1, text.size() - open - 3);
      std::size_t pos = 0;
      while (pos < body.size()) {
        auto next = body.find(',', pos);
        if (next == std::string::npos) next = body.size();
        legs.push_back(std::stoi(body.substr(pos, next - pos)));
        pos = next + 1;
      }
      return FiberClass::b(g, n, h, legs);
    }
  } catch (const std::logic_error&) {
    schema_error("malformed atom '" + text + "'");
  }
  schema_error("unknown atom '" + text + "'; expected D_i, K~ or B_{h,{...}}");
}

}  // namespace

FiberClass fiber_class_from_json(int g, int n, const Json& j) {
  require_moduli_range(g, n);
  FiberClass out(g, n);
  for (const auto& term : field(j, "terms")) {
    FiberClass product = FiberClass::constant(g, n, rational_from(field(term, "c"), "term coefficient"));
    for (const auto& atom : field(term, "monomial")) {
      product = product * atom_from_text(g, n, as_string(atom, "atom"));
    }
    out += product;
  }
  return out;
}

Json poly_to_json(const GradedAtomPoly& p) {
  std::vector<std::pair<GradedAtomPoly::Exponents, Rational>> ordered(p.terms().begin(), p.terms().end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  Json terms = Json::array();
  for (const auto& [e, c] : ordered) {
    Json powers = Json::object();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) powers[std::to_string(i + 1)] = e[i];
    }
    terms.push_back({{"C", powers}, {"c", rational_json(c)}});
  }
  return {{"terms", terms}};
}

Json error_to_json(const Error& e) {
  return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.message()}, {"details", e.details()}}}};
}

}  // namespace jacstab::json_io

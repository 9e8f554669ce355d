#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "jacstab/error.hpp"
#include "jacstab/graded_series.hpp"
#include "jacstab/json_io.hpp"
#include "jacstab/pushforward.hpp"
#include "jacstab/random_graphs.hpp"
#include "jacstab/selftest.hpp"
#include "jacstab/stability.hpp"
#include "jacstab/theta_formulas.hpp"
#include "jacstab/twister.hpp"

namespace jacstab::cli {

namespace {

using json_io::Json;

constexpr std::uint64_t kDefaultSeed = 20240611;

enum class Format { Json, Text };

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  Format format = Format::Json;
  std::uint64_t seed = kDefaultSeed;
};

void emit(Context& ctx, const Json& payload, const std::string& text) {
  if (ctx.format == Format::Json) {
    ctx.out << payload.dump(2) << "\n";
  } else {
    ctx.out << text << "\n";
  }
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// "-" reads stdin, text starting with '{' or '[' is inline JSON, anything else is a path.
Json load_json(Context& ctx, const std::string& source, const std::string& what) {
  const std::string t = trimmed(source);
  if (t == "-") {
    std::stringstream buf;
    buf << ctx.in.rdbuf();
    return json_io::parse(buf.str());
  }
  if (!t.empty() && (t.front() == '{' || t.front() == '[')) return json_io::parse(t);
  std::ifstream file(t);
  if (!file) throw Error(ErrorCode::Parse, "cannot open " + what + " file '" + t + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return json_io::parse(buf.str());
}

DualGraph load_graph(Context& ctx, const std::string& source) {
  DualGraph graph = json_io::graph_from_json(load_json(ctx, source, "graph"));
  json_io::require_valid(graph);
  return graph;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    std::size_t used = 0;
    std::int64_t x = 0;
    try {
      x = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorCode::Parse, what + ": '" + item + "' is not an integer");
    out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorCode::Parse, what + " is empty");
  return out;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trimmed(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

VertexSet parse_subcurve(const DualGraph& graph, const std::string& text) {
  VertexSet y;
  for (const auto& id : split_ids(text)) y.insert(graph.index_of(id));
  return y;
}

/// --tau either as "1,-1" or as {"tau":[...],"k":int}; an explicit --k wins.
TauData load_tau(Context& ctx, const std::string& tau_text, std::optional<std::int64_t> k) {
  TauData t;
  const std::string s = trimmed(tau_text);
  if (!s.empty() && s.front() == '{') {
    t = json_io::tau_from_json(load_json(ctx, s, "tau"));
  } else if (!s.empty() && s.find_first_not_of("0123456789-+, ") != std::string::npos) {
    t = json_io::tau_from_json(load_json(ctx, s, "tau"));
  } else {
    t.tau = parse_int_list(s, "tau");
  }
  if (k) t.k = *k;
  return t;
}

int markings_for(const std::vector<std::int64_t>& tau, std::optional<int> n) {
  if (n && *n != static_cast<int>(tau.size())) {
    throw Error(ErrorCode::InputRange,
                "--n is " + std::to_string(*n) + " but tau has " + std::to_string(tau.size()) + " entries");
  }
  return static_cast<int>(tau.size());
}

Polarization load_polarization(Context& ctx, const DualGraph& graph, const std::string& spec) {
  const std::string s = trimmed(spec);
  if (s == "canonical0" || s == "trivial-gm1") return Polarization::from_preset(s);
  // {"q":{"v1":"1/2",...},"degree":d}, inline or from a file
  const Json j = load_json(ctx, s, "polarization");
  if (!j.is_object() || !j.contains("q") || !j.contains("degree") || !j.at("q").is_object() ||
      !j.at("degree").is_number_integer()) {
    throw Error(ErrorCode::InvalidPolarization, "custom polarization needs {\"q\":{id:rational},\"degree\":int}");
  }
  std::vector<Rational> q(graph.vertex_count(), Rational(0));
  for (const auto& [id, value] : j.at("q").items()) {
    const auto v = graph.find(id);
    if (!v) throw Error(ErrorCode::InvalidPolarization, "unknown vertex '" + id + "' in polarization");
    q[*v] = value.is_string() ? parse_rational(value.get<std::string>()) : Rational(value.get<std::int64_t>());
  }
  return Polarization::custom(std::move(q), j.at("degree").get<std::int64_t>());
}

std::optional<VertexIndex> basepoint_of(const DualGraph& graph, const std::string& id) {
  if (id.empty()) return std::nullopt;
  return graph.index_of(id);
}

std::string multidegree_text(const DualGraph& graph, const Multidegree& m) {
  std::string s;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (v > 0) s += " ";
    s += graph.vertex(v).id + "=" + std::to_string(m.degrees[v]);
  }
  return s;
}

std::string ids_text(const DualGraph& graph, VertexSet y) {
  std::string s = "{";
  const auto ids = graph.ids(y);
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + ids[i];
  return s + "}";
}

std::string verdict_text(const DualGraph& graph, const Verdict& v) {
  if (v.pass) return "PASS";
  const auto& w = *v.witness;
  return "FAIL: Y=" + ids_text(graph, w.subcurve) + " needs " + std::to_string(w.degree) + (w.strict ? " > " : " >= ") +
         to_string(w.threshold);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json class_payload(const DivisorClass& c, const std::string& method) {
  Json j = {{"g", c.genus()}, {"n", c.markings()}};
  if (!method.empty()) j["method"] = method;
  j["class"] = json_io::class_to_json(c);
  j["text"] = c.text();
  return j;
}

void emit_error(Context& ctx, const Error& e) {
  if (ctx.format == Format::Json) {
    ctx.out << json_io::error_to_json(e).dump(2) << "\n";
  } else {
    ctx.out << "error " << to_string(e.code()) << ": " << e.message() << "\n";
    for (const auto& d : e.details()) ctx.out << "  " << d << "\n";
  }
  ctx.err << "jacstab: " << e.what() << "\n";
}

template <typename T>
std::string joined(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, std::string>) {
      s += xs[i];
    } else {
      s += std::to_string(xs[i]);
    }
  }
  return s;
}

// ---------------------------------------------------------------- graph

void add_graph_commands(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* graph_cmd = app.add_subcommand("graph", "Dual graph validation and queries");
  graph_cmd->require_subcommand(1);

  {
    auto* cmd = graph_cmd->add_subcommand("validate", "Report every violated invariant of a dual graph");
    auto source = std::make_shared<std::string>();
    cmd->add_option("--graph,graph", *source, "Graph JSON: path, inline text or - for stdin")->required();
    cmd->callback([&, source] {
      action = [&, source] {
        const DualGraph graph = json_io::graph_from_json(load_json(ctx, *source, "graph"));
        const auto violations = graph.validate();
        Json j = {{"valid", violations.empty()}, {"genus", graph.genus()},
                  {"violations", json_io::violations_to_json(violations)}};
        std::string text = violations.empty() ? "valid, genus " + std::to_string(graph.genus()) : "invalid";
        for (const auto& v : violations) text += "\n  " + v.code + ": " + v.message;
        emit(ctx, j, text);
        return violations.empty() ? kSuccess : kFail;
      };
    });
  }
  {
    auto* cmd = graph_cmd->add_subcommand("classify", "Treelike / compact type / banana classification");
    auto source = std::make_shared<std::string>();
    cmd->add_option("--graph,graph", *source, "Graph JSON")->required();
    cmd->callback([&, source] {
      action = [&, source] {
        const DualGraph graph = load_graph(ctx, *source);
        const auto c = graph.classify();
        Json j = {{"genus", graph.genus()},
                  {"vertices", graph.vertex_count()},
                  {"edges", graph.edges().size()},
                  {"treelike", c.treelike},
                  {"compact_type", c.compact_type},
                  {"banana_like", c.banana_like}};
        emit(ctx, j,
             "treelike=" + yes_no(c.treelike) + " compact_type=" + yes_no(c.compact_type) +
                 " banana_like=" + yes_no(c.banana_like));
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = graph_cmd->add_subcommand("subcurve", "kappa, deg omega and genus of a subcurve");
    auto source = std::make_shared<std::string>();
    auto ids = std::make_shared<std::string>();
    cmd->add_option("--graph,graph", *source, "Graph JSON")->required();
    cmd->add_option("--subcurve,-Y", *ids, "Comma-separated vertex ids")->required();
    cmd->callback([&, source, ids] {
      action = [&, source, ids] {
        const DualGraph graph = load_graph(ctx, *source);
        const VertexSet y = parse_subcurve(graph, *ids);
        Json j = {{"subcurve", json_io::subcurve_to_json(graph, y)}};
        std::string text = "Y=" + ids_text(graph, y);
        if (y != graph.all()) {
          j["kappa"] = graph.kappa(y);
          text += " kappa=" + std::to_string(graph.kappa(y));
        }
        j["deg_omega"] = graph.deg_omega(y);
        j["genus"] = graph.subcurve_genus(y);
        j["connected"] = graph.is_connected(y);
        text += " deg_omega=" + std::to_string(graph.deg_omega(y)) + " genus=" + std::to_string(graph.subcurve_genus(y));
        emit(ctx, j, text);
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = graph_cmd->add_subcommand("random", "Random stable graph from the seed");
    auto treelike = std::make_shared<bool>(false);
    auto max_vertices = std::make_shared<std::size_t>(6);
    cmd->add_flag("--treelike", *treelike, "Only treelike graphs");
    cmd->add_option("--max-vertices", *max_vertices, "Upper bound on components")->check(CLI::Range(1, 24));
    cmd->callback([&, treelike, max_vertices] {
      action = [&, treelike, max_vertices] {
        Rng rng(ctx.seed);
        RandomGraphOptions opts;
        opts.max_vertices = *max_vertices;
        const DualGraph graph = *treelike ? random_treelike_graph(rng, opts) : random_stable_graph(rng, opts);
        const Json j = json_io::graph_to_json(graph);
        emit(ctx, j, j.dump());
        return kSuccess;
      };
    });
  }
}

// ---------------------------------------------------------------- stability

void add_stability_commands(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* st = app.add_subcommand("stability", "Stability of multidegrees and the balanced condition");
  st->require_subcommand(1);

  struct Common {
    std::string graph;
    std::string polarization = "canonical0";
    std::string mode = "qstable";
    std::string basepoint;
  };

  auto add_common = [](CLI::App* cmd, Common& c, bool with_mode) {
    cmd->add_option("--graph,graph", c.graph, "Graph JSON")->required();
    cmd->add_option("--polarization,-p", c.polarization,
                    "Preset (canonical0, trivial-gm1) or {\"q\":{id:rational},\"degree\":d}")
        ->capture_default_str();
    if (with_mode) {
      cmd->add_option("--mode", c.mode, "semistable, stable or qstable")->capture_default_str();
      cmd->add_option("--basepoint", c.basepoint, "Vertex id where q-stability is strict (default: marking 1)");
    }
  };

  {
    auto* cmd = st->add_subcommand("threshold", "q_Y - kappa_Y/2 for a subcurve");
    auto c = std::make_shared<Common>();
    auto ids = std::make_shared<std::string>();
    add_common(cmd, *c, false);
    cmd->add_option("--subcurve,-Y", *ids, "Comma-separated vertex ids")->required();
    cmd->callback([&, c, ids] {
      action = [&, c, ids] {
        const DualGraph graph = load_graph(ctx, c->graph);
        const auto pol = load_polarization(ctx, graph, c->polarization);
        const VertexSet y = parse_subcurve(graph, *ids);
        const Rational t = threshold(graph, pol, y);
        emit(ctx, {{"subcurve", json_io::subcurve_to_json(graph, y)}, {"threshold", to_string(t)}}, to_string(t));
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = st->add_subcommand("check", "Check a multidegree against the stability inequalities");
    auto c = std::make_shared<Common>();
    auto md = std::make_shared<std::string>();
    add_common(cmd, *c, true);
    cmd->add_option("--multidegree,-m", *md, "{id:int} or [int,...] (inline or path)")->required();
    cmd->callback([&, c, md] {
      action = [&, c, md] {
        const DualGraph graph = load_graph(ctx, c->graph);
        const auto pol = load_polarization(ctx, graph, c->polarization);
        const auto mode = parse_stability_mode(c->mode);
        const auto m = json_io::multidegree_from_json(graph, load_json(ctx, *md, "multidegree"));
        const auto v = check_stability(graph, pol, m, mode, {basepoint_of(graph, c->basepoint)});
        Json j = json_io::verdict_to_json(graph, v);
        j["mode"] = std::string(to_string(mode));
        j["multidegree"] = json_io::multidegree_to_json(graph, m);
        emit(ctx, j, verdict_text(graph, v));
        return v.pass ? kSuccess : kFail;
      };
    });
  }
  {
    auto* cmd = st->add_subcommand("enumerate", "Every multidegree satisfying the chosen stability");
    auto c = std::make_shared<Common>();
    add_common(cmd, *c, true);
    cmd->callback([&, c] {
      action = [&, c] {
        const DualGraph graph = load_graph(ctx, c->graph);
        const auto pol = load_polarization(ctx, graph, c->polarization);
        const auto mode = parse_stability_mode(c->mode);
        const auto found = enumerate_stable(graph, pol, mode, {basepoint_of(graph, c->basepoint)});
        Json list = Json::array();
        std::string text;
        for (const auto& m : found) {
          list.push_back(json_io::multidegree_to_json(graph, m));
          text += (text.empty() ? "" : "\n") + multidegree_text(graph, m);
        }
        Json j = {{"mode", std::string(to_string(mode))},
                  {"degree", pol.target_degree(graph)},
                  {"count", found.size()},
                  {"multidegrees", list}};
        emit(ctx, j, found.empty() ? "(none)" : text);
        return kSuccess;
      };
    });
  }

  struct TauArgs {
    std::string graph;
    std::string tau;
    std::optional<std::int64_t> k;
  };
  auto add_tau = [](CLI::App* cmd, TauArgs& t) {
    cmd->add_option("--graph,graph", t.graph, "Graph JSON")->required();
    cmd->add_option("--tau", t.tau, "Comma list like 1,-1 or {\"tau\":[...],\"k\":int}")->required();
    cmd->add_option("--k", t.k, "Twist by the canonical sheaf (default 0)");
  };

  {
    auto* cmd = st->add_subcommand("balanced", "The (tau,k)-balanced condition");
    auto t = std::make_shared<TauArgs>();
    add_tau(cmd, *t);
    cmd->callback([&, t] {
      action = [&, t] {
        const DualGraph graph = load_graph(ctx, t->graph);
        const TauData data = load_tau(ctx, t->tau, t->k);
        const auto v = is_balanced(graph, data);
        Json j = json_io::verdict_to_json(graph, v);
        j["base_multidegree"] = json_io::multidegree_to_json(graph, base_multidegree(graph, data));
        emit(ctx, j, verdict_text(graph, v));
        return v.pass ? kSuccess : kFail;
      };
    });
  }
  {
    auto* cmd = st->add_subcommand("locus", "Which part of the extension locus the graph lies in");
    auto args = std::make_shared<TauArgs>();
    add_tau(cmd, *args);
    cmd->callback([&, args] {
      action = [&, args] {
        const DualGraph graph = load_graph(ctx, args->graph);
        const TauData data = load_tau(ctx, args->tau, args->k);
        const auto locus = locus_membership(graph, data);
        emit(ctx, {{"locus", std::string(to_string(locus))}}, std::string(to_string(locus)));
        return kSuccess;
      };
    });
  }
}

// ---------------------------------------------------------------- twist

void add_twist_commands(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* tw = app.add_subcommand("twist", "Twisters, leaf peeling and branch coefficients");
  tw->require_subcommand(1);

  {
    auto* cmd = tw->add_subcommand("multidegree", "Multidegree -L gamma of a twister");
    auto source = std::make_shared<std::string>();
    auto gamma = std::make_shared<std::string>();
    cmd->add_option("--graph,graph", *source, "Graph JSON")->required();
    cmd->add_option("--gamma", *gamma, "{id:int} or [int,...]")->required();
    cmd->callback([&, source, gamma] {
      action = [&, source, gamma] {
        const DualGraph graph = load_graph(ctx, *source);
        const auto g = json_io::multidegree_from_json(graph, load_json(ctx, *gamma, "gamma"));
        const auto m = twist_multidegree(graph, TwisterVector{g.degrees});
        emit(ctx, {{"multidegree", json_io::multidegree_to_json(graph, m)}}, multidegree_text(graph, m));
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = tw->add_subcommand("reduce", "Reduce a total-zero multidegree on a treelike graph");
    auto source = std::make_shared<std::string>();
    auto md = std::make_shared<std::string>();
    auto root = std::make_shared<std::string>();
    auto order = std::make_shared<std::string>();
    cmd->add_option("--graph,graph", *source, "Graph JSON")->required();
    cmd->add_option("--multidegree,-m", *md, "{id:int} or [int,...]")->required();
    auto* root_opt = cmd->add_option("--root", *root, "Vertex id kept last (default: marking 1)");
    cmd->add_option("--peel-order", *order, "Comma-separated vertex ids, every vertex but the root")
        ->excludes(root_opt);
    cmd->callback([&, source, md, root, order] {
      action = [&, source, md, root, order] {
        const DualGraph graph = load_graph(ctx, *source);
        const auto m = json_io::multidegree_from_json(graph, load_json(ctx, *md, "multidegree"));
        Reduction r;
        if (!order->empty()) {
          std::vector<VertexIndex> peel;
          for (const auto& id : split_ids(*order)) peel.push_back(graph.index_of(id));
          r = reduce_treelike(graph, m, std::span<const VertexIndex>(peel));
        } else {
          r = reduce_treelike(graph, m, basepoint_of(graph, *root));
        }
        std::string text = "gamma: ";
        for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
          text += (v ? " " : "") + graph.vertex(v).id + "=" + std::to_string(r.gamma.gamma[v]);
        }
        for (const auto& step : r.trace) {
          text += "\npeel " + graph.vertex(step.leaf).id + " branch " + ids_text(graph, step.branch) + " by " +
                  std::to_string(step.coefficient) + " -> " + multidegree_text(graph, step.after);
        }
        emit(ctx, json_io::reduction_to_json(graph, r), text);
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = tw->add_subcommand("coefficients", "Per-edge twist coefficients of L(tau,k)");
    auto source = std::make_shared<std::string>();
    auto tau = std::make_shared<std::string>();
    auto k = std::make_shared<std::optional<std::int64_t>>();
    cmd->add_option("--graph,graph", *source, "Graph JSON")->required();
    cmd->add_option("--tau", *tau, "Comma list or {\"tau\":[...],\"k\":int}")->required();
    cmd->add_option("--k", *k, "Twist by the canonical sheaf (default 0)");
    cmd->callback([&, source, tau, k] {
      action = [&, source, tau, k] {
        const DualGraph graph = load_graph(ctx, *source);
        const TauData data = load_tau(ctx, *tau, *k);
        const auto coeffs = branch_coefficients(graph, data);
        const auto fiber = boundary_multidegree_Lk(graph, data);
        Json j = {{"coefficients", json_io::branch_coefficients_to_json(graph, coeffs)},
                  {"boundary_multidegree", json_io::multidegree_to_json(graph, fiber)}};
        std::string text;
        for (const auto& bc : coeffs) {
          const auto& e = graph.edges()[bc.edge];
          text += graph.vertex(e.a).id + "-" + graph.vertex(e.b).id + ": h=" + std::to_string(bc.branch_genus) +
                  " A={" + joined(bc.legs) + "} c=" + std::to_string(bc.coefficient) + "\n";
        }
        text += "fiber multidegree: " + multidegree_text(graph, fiber);
        emit(ctx, j, text);
        return kSuccess;
      };
    });
  }
}

// ---------------------------------------------------------------- class

void add_class_commands(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cl = app.add_subcommand("class", "Divisor classes on moduli of stable marked curves");
  cl->require_subcommand(1);

  struct Args {
    int g = -1;
    std::optional<int> n;
    std::string tau;
    std::optional<std::int64_t> k;
    std::string method = "closed";
  };

  {
    auto* cmd = cl->add_subcommand("theta", "Pullback of the theta divisor along the Abel-Jacobi section");
    auto a = std::make_shared<Args>();
    cmd->add_option("--g", a->g, "Genus")->required();
    cmd->add_option("--n", a->n, "Number of markings (defaults to the length of tau)");
    cmd->add_option("--tau", a->tau, "Comma list or {\"tau\":[...],\"k\":int}")->required();
    cmd->add_option("--k", a->k, "Twist by the canonical sheaf (default 0)");
    cmd->add_option("--method", a->method, "closed, derive or hain")
        ->check(CLI::IsMember({"closed", "derive", "hain"}))
        ->capture_default_str();
    cmd->callback([&, a] {
      action = [&, a] {
        const TauData t = load_tau(ctx, a->tau, a->k);
        markings_for(t.tau, a->n);
        DivisorClass c(0, 0);
        if (a->method == "closed") {
          c = theta_pullback_closed(a->g, t.tau, t.k);
        } else if (a->method == "derive") {
          c = derive_theta(a->g, t.tau, t.k);
        } else {
          if (t.k != 0) throw Error(ErrorCode::InputRange, "the hain method needs k = 0");
          c = hain_theta_pullback(a->g, t.tau);
        }
        emit(ctx, class_payload(c, a->method), c.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("theta-gm1", "Pullback of the degree g-1 theta divisor");
    auto a = std::make_shared<Args>();
    auto chi = std::make_shared<std::string>("standard");
    cmd->add_option("--g", a->g, "Genus")->required();
    cmd->add_option("--n", a->n, "Number of markings (defaults to the length of tau)");
    cmd->add_option("--tau", a->tau, "Comma list summing to g-1")->required();
    cmd->add_option("--method", a->method, "closed or derive")
        ->check(CLI::IsMember({"closed", "derive"}))
        ->capture_default_str();
    cmd->add_option("--chi", *chi, "Branch indicator convention for derive: standard or flipped")
        ->check(CLI::IsMember({"standard", "flipped"}))
        ->capture_default_str();
    cmd->callback([&, a, chi] {
      action = [&, a, chi] {
        const TauData t = load_tau(ctx, a->tau, std::nullopt);
        markings_for(t.tau, a->n);
        const DivisorClass c = a->method == "closed" ? theta_gm1_pullback(a->g, t.tau)
                                                     : derive_theta_gm1(a->g, t.tau, ChiConvention{*chi == "flipped"});
        emit(ctx, class_payload(c, a->method), c.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("mueller", "Closure of the locus where O(sum tau_i p_i) is effective");
    auto a = std::make_shared<Args>();
    auto exclude_empty = std::make_shared<bool>(false);
    cmd->add_option("--g", a->g, "Genus")->required();
    cmd->add_option("--n", a->n, "Number of markings (defaults to the length of tau)");
    cmd->add_option("--tau", a->tau, "Comma list summing to g-1 with a negative entry")->required();
    cmd->add_flag("--exclude-empty", *exclude_empty, "Leave couples (h, {}) out of the correction");
    cmd->callback([&, a, exclude_empty] {
      action = [&, a, exclude_empty] {
        const TauData t = load_tau(ctx, a->tau, std::nullopt);
        markings_for(t.tau, a->n);
        const MuellerOptions opts{!*exclude_empty};
        const DivisorClass c = mueller_class(a->g, t.tau, opts);
        const DivisorClass corr = mueller_correction(a->g, t.tau, opts);
        Json j = class_payload(c, "");
        j["include_empty_legs"] = opts.include_empty_legs;
        j["correction"] = json_io::class_to_json(corr);
        j["correction_text"] = corr.text();
        emit(ctx, j, c.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("canonicalize", "Canonical form of a class given in any representatives");
    auto g = std::make_shared<int>(-1);
    auto n = std::make_shared<int>(-1);
    auto source = std::make_shared<std::string>();
    cmd->add_option("--g", *g, "Genus")->required();
    cmd->add_option("--n", *n, "Number of markings")->required();
    cmd->add_option("--class,class", *source, "Class JSON (inline, path or -)")->required();
    cmd->callback([&, g, n, source] {
      action = [&, g, n, source] {
        require_moduli_range(*g, *n);
        const DivisorClass c = json_io::class_from_json(*g, *n, load_json(ctx, *source, "class"));
        emit(ctx, class_payload(c, ""), c.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("c1", "First Chern class of L(tau,k) on the universal curve");
    auto a = std::make_shared<Args>();
    cmd->add_option("--g", a->g, "Genus")->required();
    cmd->add_option("--n", a->n, "Number of markings (defaults to the length of tau)");
    cmd->add_option("--tau", a->tau, "Comma list or {\"tau\":[...],\"k\":int}")->required();
    cmd->add_option("--k", a->k, "Twist by the canonical sheaf (default 0)");
    cmd->callback([&, a] {
      action = [&, a] {
        const TauData t = load_tau(ctx, a->tau, a->k);
        markings_for(t.tau, a->n);
        const FiberClass c1 = c1_of_Lk(a->g, t.tau, t.k);
        Json j = {{"g", a->g}, {"n", static_cast<int>(t.tau.size())}, {"fiber_class", json_io::fiber_class_to_json(c1)}};
        emit(ctx, j, c1.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("push", "Push a fiber class of degree <= 2 down to the moduli space");
    auto g = std::make_shared<int>(-1);
    auto n = std::make_shared<int>(-1);
    auto source = std::make_shared<std::string>();
    cmd->add_option("--g", *g, "Genus")->required();
    cmd->add_option("--n", *n, "Number of markings")->required();
    cmd->add_option("--fiber,fiber", *source, "{\"terms\":[{\"monomial\":[\"D_1\",\"K~\"],\"c\":\"1\"}]}")
        ->required();
    cmd->callback([&, g, n, source] {
      action = [&, g, n, source] {
        const FiberClass f = json_io::fiber_class_from_json(*g, *n, load_json(ctx, *source, "fiber class"));
        const DivisorClass c = pushforward(f);
        Json j = class_payload(c, "");
        j["normalized"] = json_io::fiber_class_to_json(f);
        emit(ctx, j, c.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("zero-section-shape", "Degree-g part of exp(sum (-1)^s (s-1)! C_s)");
    auto g = std::make_shared<int>(0);
    cmd->add_option("--g", *g, "Genus, 1..20")->required();
    cmd->callback([&, g] {
      action = [&, g] {
        const GradedAtomPoly p = exp_truncate(*g);
        Json j = {{"g", *g}, {"poly", json_io::poly_to_json(p)}, {"text", p.text()}};
        emit(ctx, j, p.text());
        return kSuccess;
      };
    });
  }
  {
    auto* cmd = cl->add_subcommand("compact-gm1", "Degree g-1 multidegree on a two-component compact-type curve");
    auto source = std::make_shared<std::string>();
    cmd->add_option("--graph,graph", *source, "Graph JSON")->required();
    cmd->callback([&, source] {
      action = [&, source] {
        const DualGraph graph = load_graph(ctx, *source);
        const Multidegree m = compact_type_gm1_multidegree(graph);
        const auto v = check_stability(graph, Polarization::trivial_gm1(), m, StabilityMode::QStable);
        Json j = {{"multidegree", json_io::multidegree_to_json(graph, m)},
                  {"total", m.total()},
                  {"qstable", json_io::verdict_to_json(graph, v)}};
        emit(ctx, j, multidegree_text(graph, m) + " (" + verdict_text(graph, v) + ")");
        return v.pass ? kSuccess : kFail;
      };
    });
  }
}

// ---------------------------------------------------------------- selftest

void add_selftest_command(CLI::App& app, Context& ctx, std::function<int()>& action) {
  auto* cmd = app.add_subcommand("selftest", "Cross-formula grid, oracle suites and corpus checks");
  auto depth = std::make_shared<std::string>("small");
  auto corrupt = std::make_shared<std::string>();
  cmd->add_option("--depth", *depth, "small or full")->check(CLI::IsMember({"small", "full"}))->capture_default_str();
  cmd->add_option("--corrupt-rule", *corrupt, "Perturb one push-forward rule (d2, db, b2, kb, k2)")
      ->check(CLI::IsMember({"d2", "db", "b2", "kb", "k2"}));
  cmd->callback([&, depth, corrupt] {
    action = [&, depth, corrupt] {
      SelftestOptions opts;
      opts.depth = parse_selftest_depth(*depth);
      opts.seed = ctx.seed;
      if (!corrupt->empty()) opts.rules = RuleTable::standard().corrupted(*corrupt);
      const SelftestReport report = run_selftest(opts);

      Json suites = Json::array();
      std::string text;
      for (const auto& s : report.suites) {
        Json js = {{"name", s.name}, {"checks", s.checks}, {"failures", s.failures}, {"pass", s.pass()}};
        if (s.first_counterexample) js["first_counterexample"] = *s.first_counterexample;
        suites.push_back(js);
        text += std::string(s.pass() ? "PASS " : "FAIL ") + s.name + " (" + std::to_string(s.checks) + " checks, " +
                std::to_string(s.failures) + " failures)\n";
        if (s.first_counterexample) text += "  first counterexample: " + *s.first_counterexample + "\n";
      }
      text += report.pass() ? "PASS" : "FAIL";
      Json j = {{"depth", std::string(to_string(report.depth))},
                {"seed", report.seed},
                {"corrupted_rule", corrupt->empty() ? Json(nullptr) : Json(*corrupt)},
                {"pass", report.pass()},
                {"suites", suites}};
      emit(ctx, j, text);
      return report.pass() ? kSuccess : kFail;
    };
  });
}

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("JACSTAB_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used == std::string(raw).size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Parse, std::string("JACSTAB_SEED='") + raw + "' is not an unsigned integer");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Context ctx{in, out, err};
  std::function<int()> action;

  CLI::App app{"Stability, twisters and theta-divisor classes for stable marked curves", "jacstab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--output,-o", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized corpora (JACSTAB_SEED overrides)")->capture_default_str();
  app.set_version_flag("--version", "jacstab 0.1.0");

  add_graph_commands(app, ctx, action);
  add_stability_commands(app, ctx, action);
  add_twist_commands(app, ctx, action);
  add_class_commands(app, ctx, action);
  add_selftest_command(app, ctx, action);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    ctx.format = format == "text" ? Format::Text : Format::Json;
    emit_error(ctx, Error(ErrorCode::Parse, e.what()));
    return kInputError;
  }

  ctx.format = format == "text" ? Format::Text : Format::Json;
  try {
    ctx.seed = seed_from_env().value_or(seed);
    if (!action) throw Error(ErrorCode::Parse, "no command given");
    return action();
  } catch (const Error& e) {
    emit_error(ctx, e);
    return kInputError;
  } catch (const std::exception& e) {
    emit_error(ctx, Error(ErrorCode::InputRange, e.what()));
    return kInputError;
  }
}

}  // namespace jacstab::cli

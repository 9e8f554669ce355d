#include "jacstab/selftest.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "jacstab/error.hpp"
#include "jacstab/graded_series.hpp"
#include "jacstab/random_graphs.hpp"
#include "jacstab/theta_formulas.hpp"
#include "jacstab/twister.hpp"

namespace jacstab {

SelftestDepth parse_selftest_depth(std::string_view text) {
  if (text == "small") return SelftestDepth::Small;
  if (text == "full") return SelftestDepth::Full;
  throw Error(ErrorCode::Parse, "depth must be 'small' or 'full'");
}

std::string_view to_string(SelftestDepth depth) { return depth == SelftestDepth::Small ? "small" : "full"; }

bool SelftestReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.pass(); });
}

namespace {

void grid_rec(int n, std::int64_t bound, std::int64_t remaining, std::vector<std::int64_t>& cur,
              std::vector<std::vector<std::int64_t>>& out) {
  const auto left = static_cast<std::int64_t>(n - static_cast<int>(cur.size()));
  if (left == 0) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (std::int64_t x = -bound; x <= bound; ++x) {
    const auto rest = remaining - x;
    if (rest < -bound * (left - 1) || rest > bound * (left - 1)) continue;
    cur.push_back(x);
    grid_rec(n, bound, rest, cur, out);
    cur.pop_back();
  }
}

std::string tau_text(std::span<const std::int64_t> tau) {
  std::string s = "(";
  for (std::size_t i = 0; i < tau.size(); ++i) s += (i ? "," : "") + std::to_string(tau[i]);
  return s + ")";
}

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.checks;
    if (ok) return;
    ++result_.failures;
    if (!result_.first_counterexample) result_.first_counterexample = describe();
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

struct GridSpec {
  int max_g;
  int max_n;
  std::int64_t bound;
  std::int64_t max_k;
};

GridSpec grid_for(SelftestDepth depth) {
  return depth == SelftestDepth::Small ? GridSpec{3, 3, 3, 2} : GridSpec{5, 4, 5, 2};
}

SuiteResult theta_suite(const GridSpec& spec, const RuleTable& rules) {
  Suite suite("theta-derive-vs-closed");
  for (auto [g, n] : moduli_grid(spec.max_g, spec.max_n)) {
    for (std::int64_t k = -spec.max_k; k <= spec.max_k; ++k) {
      for (const auto& tau : tau_grid(n, spec.bound, k * (2 * g - 2))) {
        if (k == 0 && std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; })) continue;
        const auto derived = derive_theta(g, tau, k, rules);
        const auto closed = theta_pullback_closed(g, tau, k);
        suite.check(derived == closed, [&] {
          return "g=" + std::to_string(g) + " tau=" + tau_text(tau) + " k=" + std::to_string(k) +
                 ": derived " + derived.text() + " vs closed " + closed.text();
        });
      }
    }
  }
  return suite.take();
}

SuiteResult theta_gm1_suite(const GridSpec& spec, const RuleTable& rules) {
  Suite suite("theta-gm1-derive-vs-closed");
  for (auto [g, n] : moduli_grid(spec.max_g, spec.max_n)) {
    for (const auto& tau : tau_grid(n, spec.bound, g - 1)) {
      const auto closed = theta_gm1_pullback(g, tau);
      for (bool flipped : {false, true}) {
        const auto derived = derive_theta_gm1(g, tau, ChiConvention{flipped}, rules);
        suite.check(derived == closed, [&] {
          return "g=" + std::to_string(g) + " tau=" + tau_text(tau) + (flipped ? " (flipped chi)" : "") +
                 ": derived " + derived.text() + " vs closed " + closed.text();
        });
      }
    }
  }
  return suite.take();
}

SuiteResult hain_suite(const GridSpec& spec) {
  Suite suite("hain-vs-closed");
  for (auto [g, n] : moduli_grid(spec.max_g, spec.max_n)) {
    for (const auto& tau : tau_grid(n, spec.bound, 0)) {
      if (std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; })) continue;
      const auto hain = hain_theta_pullback(g, tau);
      const auto closed = theta_pullback_closed(g, tau, 0);
      suite.check(hain == closed, [&] {
        return "g=" + std::to_string(g) + " tau=" + tau_text(tau) + ": hain " + hain.text() + " vs closed " +
               closed.text();
      });
    }
  }
  return suite.take();
}

GradedAtomPoly series_exp_oracle(int g) {
  // exp(X) = sum_j X^j / j!, truncated at degree g at every step
  GradedAtomPoly x;
  std::int64_t fact = 1;
  for (int s = 1; s <= g; ++s) {
    if (s > 1) fact *= s - 1;
    x += Rational(s % 2 == 0 ? fact : -fact) * GradedAtomPoly::atom(s);
  }
  GradedAtomPoly total = GradedAtomPoly::constant(Rational(1));
  GradedAtomPoly power = GradedAtomPoly::constant(Rational(1));
  for (int j = 1; j <= g; ++j) {
    power = (Rational(1, j) * (power * x)).truncated(g);
    total += power;
  }
  return total.homogeneous_part(g);
}

SuiteResult series_suite() {
  Suite suite("exp-truncate-vs-series");
  for (int g = 1; g <= 8; ++g) {
    const auto fast = exp_truncate(g);
    const auto oracle = series_exp_oracle(g);
    suite.check(fast == oracle, [&] {
      return "g=" + std::to_string(g) + ": " + fast.text() + " vs " + oracle.text();
    });
  }
  return suite.take();
}

SuiteResult treelike_suite(std::uint64_t seed, int count) {
  Suite suite("treelike-unique-qstable");
  Rng rng(seed);
  RandomGraphOptions opts;
  opts.max_vertices = 8;
  opts.min_markings = 1;
  for (int i = 0; i < count; ++i) {
    const auto graph = random_treelike_graph(rng, opts);
    const auto found = enumerate_stable(graph, Polarization::canonical_zero(), StabilityMode::QStable);
    const Multidegree zero{std::vector<std::int64_t>(graph.vertex_count(), 0)};
    suite.check(found.size() == 1 && found.front() == zero, [&] {
      return "random treelike graph #" + std::to_string(i) + " with " + std::to_string(graph.vertex_count()) +
             " vertices has " + std::to_string(found.size()) + " q-stable multidegrees";
    });
  }
  return suite.take();
}

SuiteResult twister_suite(std::uint64_t seed, int count) {
  Suite suite("twister-laplacian");
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < count; ++i) {
    const auto graph = random_treelike_graph(rng);
    const auto m = random_zero_sum_multidegree(rng, graph, 6);
    const auto red = reduce_treelike(graph, m);
    const auto lap = laplacian(graph);
    bool ok = red.result == Multidegree{std::vector<std::int64_t>(graph.vertex_count(), 0)};
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
      std::int64_t lg = 0;
      for (std::size_t w = 0; w < graph.vertex_count(); ++w) lg += lap[v][w] * red.gamma.gamma[w];
      ok = ok && lg == m.degrees[v];
    }
    suite.check(ok, [&] { return "random treelike graph #" + std::to_string(i) + ": L gamma != m"; });
  }
  return suite.take();
}

SuiteResult corpus_suite() {
  Suite suite("corpus");
  for (bool on_v1 : {true, false}) {
    const auto graph = banana_graph(on_v1);
    const auto found = enumerate_stable(graph, Polarization::canonical_zero(), StabilityMode::QStable);
    const VertexIndex first = *graph.vertex_of_marking(1);
    std::vector<std::pair<std::int64_t, std::int64_t>> got;
    for (const auto& m : found) got.emplace_back(m.degrees[first], m.degrees[1 - first]);
    std::sort(got.begin(), got.end());
    const std::vector<std::pair<std::int64_t, std::int64_t>> want{{0, 0}, {1, -1}};
    suite.check(got == want, [&] { return std::string("banana q-stable multidegrees differ from {(0,0),(1,-1)}"); });
  }
  for (const auto& graph : two_vertex_compact_graphs(6)) {
    const auto m = compact_type_gm1_multidegree(graph);
    const auto verdict = check_stability(graph, Polarization::trivial_gm1(), m, StabilityMode::QStable);
    suite.check(m.total() == graph.genus() - 1 && verdict.pass, [&] {
      return "compact type genera (" + std::to_string(graph.vertex(0).genus) + "," +
             std::to_string(graph.vertex(1).genus) + "): degree g-1 multidegree not q-stable";
    });
  }
  return suite.take();
}

}  // namespace

std::vector<std::vector<std::int64_t>> tau_grid(int n, std::int64_t bound, std::int64_t sum) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  grid_rec(n, bound, sum, cur, out);
  return out;
}

std::vector<std::pair<int, int>> moduli_grid(int max_g, int max_n) {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; g <= max_g; ++g) {
    for (int n = 1; n <= max_n; ++n) {
      if (2 * g - 2 + n > 0) out.emplace_back(g, n);
    }
  }
  return out;
}

SelftestReport run_selftest(const SelftestOptions& opts) {
  const GridSpec spec = grid_for(opts.depth);
  const int random_count = opts.depth == SelftestDepth::Small ? 40 : 200;
  SelftestReport report;
  report.depth = opts.depth;
  report.seed = opts.seed;
  report.suites.push_back(theta_suite(spec, opts.rules));
  report.suites.push_back(theta_gm1_suite(spec, opts.rules));
  report.suites.push_back(hain_suite(spec));
  report.suites.push_back(series_suite());
  report.suites.push_back(treelike_suite(opts.seed, random_count));
  report.suites.push_back(twister_suite(opts.seed, random_count));
  report.suites.push_back(corpus_suite());
  return report;
}

}  // namespace jacstab

#include "jacstab/stability.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "jacstab/error.hpp"

namespace jacstab {

namespace {

// Subset scans are exponential in the number of components.
constexpr std::size_t kMaxScanVertices = 24;
constexpr std::int64_t kMaxTauEntry = 1'000'000;

void require_scannable(const DualGraph& graph) {
  if (graph.vertex_count() > kMaxScanVertices) {
    throw Error(ErrorCode::InputRange, "subcurve scans support at most " +
                                           std::to_string(kMaxScanVertices) + " vertices");
  }
}

bool violates(std::int64_t degree, const Rational& thr, bool strict) {
  const Rational d(degree);
  return strict ? !(d > thr) : d < thr;
}

template <class DegreeFn, class ThresholdFn, class StrictFn>
Verdict scan_subcurves(const DualGraph& graph, bool connected_only, DegreeFn degree_of,
                       ThresholdFn threshold_of, StrictFn strict_for) {
  require_scannable(graph);
  const std::uint64_t full = graph.all().bits();
  for (std::uint64_t bits = 1; bits < full; ++bits) {
    const VertexSet y(bits);
    if (connected_only && !graph.is_connected(y)) continue;
    const auto deg = degree_of(y);
    const auto thr = threshold_of(y);
    const bool strict = strict_for(y);
    if (!violates(deg, thr, strict)) continue;

    // Degrees, thresholds and kappa are additive over components of Y, so
    // some component fails its own inequality.
    for (const auto comp : graph.components(y)) {
      const auto cdeg = degree_of(comp);
      const auto cthr = threshold_of(comp);
      const bool cstrict = strict_for(comp);
      if (violates(cdeg, cthr, cstrict)) {
        return {false, StabilityWitness{comp, cdeg, cthr, cstrict}};
      }
    }
    return {false, StabilityWitness{y, deg, thr, strict}};
  }
  return {true, std::nullopt};
}

std::optional<VertexIndex> resolve_basepoint(const DualGraph& graph, StabilityMode mode,
                                             const StabilityOptions& opts) {
  if (mode != StabilityMode::QStable) return std::nullopt;
  if (opts.basepoint) {
    if (*opts.basepoint >= graph.vertex_count()) {
      throw Error(ErrorCode::NoBasepoint, "basepoint vertex index out of range");
    }
    return opts.basepoint;
  }
  if (auto v = graph.vertex_of_marking(1)) return v;
  throw Error(ErrorCode::NoBasepoint, "q-stability needs marking 1 or an explicit basepoint");
}

Verdict check_impl(const DualGraph& graph, const Polarization& pol, const Multidegree& m,
                   StabilityMode mode, const StabilityOptions& opts, bool connected_only) {
  if (m.degrees.size() != graph.vertex_count()) {
    throw Error(ErrorCode::DegreeMismatch, "multidegree has " + std::to_string(m.degrees.size()) +
                                               " entries for " + std::to_string(graph.vertex_count()) +
                                               " vertices");
  }
  const auto d = pol.target_degree(graph);
  if (m.total() != d) {
    throw Error(ErrorCode::DegreeMismatch, "multidegree total " + std::to_string(m.total()) +
                                               " differs from polarization degree " + std::to_string(d));
  }
  const auto base = resolve_basepoint(graph, mode, opts);
  return scan_subcurves(
      graph, connected_only, [&](VertexSet y) { return m.degree_on(y); },
      [&](VertexSet y) { return threshold(graph, pol, y); },
      [&](VertexSet y) {
        return mode == StabilityMode::Stable || (base && y.contains(*base));
      });
}

}  // namespace

std::int64_t Multidegree::total() const { return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0}); }

std::int64_t Multidegree::degree_on(VertexSet y) const {
  std::int64_t sum = 0;
  for (auto v : y.members()) sum += degrees.at(v);
  return sum;
}

Polarization Polarization::from_preset(std::string_view name) {
  if (name == "canonical0" || name == "canonical-zero") return canonical_zero();
  if (name == "trivial-gm1" || name == "trivial_gm1") return trivial_gm1();
  throw Error(ErrorCode::InvalidPolarization, "unknown polarization preset '" + std::string(name) + "'");
}

std::int64_t Polarization::target_degree(const DualGraph& graph) const {
  switch (kind) {
    case PolarizationKind::CanonicalZero: return 0;
    case PolarizationKind::TrivialGm1: return graph.genus() - 1;
    case PolarizationKind::Custom: {
      if (per_vertex.size() != graph.vertex_count()) {
        throw Error(ErrorCode::InvalidPolarization, "custom polarization needs one value per vertex");
      }
      const Rational sum = std::accumulate(per_vertex.begin(), per_vertex.end(), Rational(0));
      if (sum != Rational(custom_degree + 1 - graph.genus())) {
        throw Error(ErrorCode::InvalidPolarization,
                    "per-vertex values sum to " + to_string(sum) + ", expected d+1-g = " +
                        std::to_string(custom_degree + 1 - graph.genus()));
      }
      return custom_degree;
    }
  }
  return 0;
}

Rational Polarization::q(const DualGraph& graph, VertexSet y) const {
  const Rational half_omega(graph.deg_omega(y), 2);
  switch (kind) {
    case PolarizationKind::CanonicalZero:
      // deg(omega^{-1} + O)|_Y / 2 cancels the omega half
      return Rational(0);
    case PolarizationKind::TrivialGm1:
      return half_omega;
    case PolarizationKind::Custom: {
      Rational sum(0);
      for (auto v : y.members()) sum += per_vertex.at(v);
      return sum + half_omega;
    }
  }
  return Rational(0);
}

std::string_view to_string(StabilityMode mode) {
  switch (mode) {
    case StabilityMode::Semistable: return "semistable";
    case StabilityMode::Stable: return "stable";
    case StabilityMode::QStable: return "qstable";
  }
  return "";
}

StabilityMode parse_stability_mode(std::string_view text) {
  if (text == "semistable") return StabilityMode::Semistable;
  if (text == "stable") return StabilityMode::Stable;
  if (text == "qstable" || text == "q-stable") return StabilityMode::QStable;
  throw Error(ErrorCode::Parse, "unknown stability mode '" + std::string(text) + "'");
}

Rational threshold(const DualGraph& graph, const Polarization& pol, VertexSet y) {
  const int kappa = graph.kappa(y);  // throws EMPTY_OR_FULL
  return pol.q(graph, y) - Rational(kappa, 2);
}

Verdict check_stability(const DualGraph& graph, const Polarization& pol, const Multidegree& m,
                        StabilityMode mode, const StabilityOptions& opts) {
  return check_impl(graph, pol, m, mode, opts, false);
}

Verdict check_stability_connected(const DualGraph& graph, const Polarization& pol,
                                  const Multidegree& m, StabilityMode mode,
                                  const StabilityOptions& opts) {
  return check_impl(graph, pol, m, mode, opts, true);
}

std::vector<Multidegree> enumerate_stable(const DualGraph& graph, const Polarization& pol,
                                          StabilityMode mode, const StabilityOptions& opts) {
  require_scannable(graph);
  const std::size_t nv = graph.vertex_count();
  const auto d = pol.target_degree(graph);
  const auto base = resolve_basepoint(graph, mode, opts);
  const std::uint64_t full = graph.all().bits();

  // Integer lower bound for deg_Y on every subset; the whole curve is pinned to d.
  std::vector<std::int64_t> lower(std::size_t{1} << nv, 0);
  for (std::uint64_t bits = 1; bits < full; ++bits) {
    const VertexSet y(bits);
    const auto thr = threshold(graph, pol, y);
    const bool strict = mode == StabilityMode::Stable || (base && y.contains(*base));
    lower[bits] = strict ? floor(thr) + 1 : ceil(thr);
  }
  lower[full] = d;
  auto upper = [&](std::uint64_t bits) { return bits == full ? d : d - lower[full & ~bits]; };

  std::vector<Multidegree> out;
  std::vector<std::int64_t> partial(std::size_t{1} << nv, 0);  // deg on subsets of the prefix
  Multidegree current{std::vector<std::int64_t>(nv, 0)};

  // Assign vertices in index order; every subset is checked once its top vertex is set.
  auto assign = [&](auto&& self, std::size_t i) -> void {
    if (i == nv) {
      out.push_back(current);
      return;
    }
    const std::uint64_t prefix = (std::uint64_t{1} << i) - 1;
    const std::uint64_t top = std::uint64_t{1} << i;
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t s = prefix;; s = (s - 1) & prefix) {
      const std::uint64_t y = s | top;
      lo = std::max(lo, lower[y] - partial[s]);
      hi = std::min(hi, upper(y) - partial[s]);
      if (s == 0) break;
    }
    for (std::int64_t x = lo; x <= hi; ++x) {
      current.degrees[i] = x;
      for (std::uint64_t s = prefix;; s = (s - 1) & prefix) {
        partial[s | top] = partial[s] + x;
        if (s == 0) break;
      }
      self(self, i + 1);
    }
  };
  if (nv > 0) assign(assign, 0);
  std::sort(out.begin(), out.end());
  return out;
}

void require_theta_tau(const DualGraph& graph, const TauData& t) {
  if (t.tau.size() != static_cast<std::size_t>(graph.markings())) {
    throw Error(ErrorCode::TauSum, "tau has " + std::to_string(t.tau.size()) + " entries for " +
                                       std::to_string(graph.markings()) + " markings");
  }
  if (std::abs(t.k) > kMaxTauEntry ||
      std::any_of(t.tau.begin(), t.tau.end(), [](auto x) { return std::abs(x) > kMaxTauEntry; })) {
    throw Error(ErrorCode::InputRange, "tau and k entries are limited to absolute value 1e6");
  }
  const auto sum = std::accumulate(t.tau.begin(), t.tau.end(), std::int64_t{0});
  const auto expected = t.k * (2 * std::int64_t{graph.genus()} - 2);
  if (sum != expected) {
    throw Error(ErrorCode::TauSum, "sum of tau is " + std::to_string(sum) + ", expected k(2g-2) = " +
                                       std::to_string(expected));
  }
}

Multidegree base_multidegree(const DualGraph& graph, const TauData& t) {
  require_theta_tau(graph, t);
  Multidegree m{std::vector<std::int64_t>(graph.vertex_count(), 0)};
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    std::int64_t sum = 0;
    for (int leg : graph.vertex(v).legs) sum += t.tau[static_cast<std::size_t>(leg - 1)];
    m.degrees[v] = sum - t.k * graph.deg_omega(VertexSet::single(v));
  }
  return m;
}

Verdict is_balanced(const DualGraph& graph, const TauData& t) {
  require_theta_tau(graph, t);
  const auto first = graph.vertex_of_marking(1);
  auto tau_on = [&](VertexSet z) {
    std::int64_t sum = 0;
    for (int leg : graph.legs(z)) sum += t.tau[static_cast<std::size_t>(leg - 1)];
    return sum;
  };
  return scan_subcurves(
      graph, false, tau_on,
      [&](VertexSet z) { return Rational(t.k * graph.deg_omega(z)) - Rational(graph.kappa(z), 2); },
      [&](VertexSet z) { return first && z.contains(*first); });
}

std::string_view to_string(Locus locus) {
  switch (locus) {
    case Locus::Balanced: return "BALANCED";
    case Locus::Treelike: return "TREELIKE";
    case Locus::Both: return "BOTH";
    case Locus::Indeterminacy: return "INDETERMINACY";
  }
  return "";
}

Locus locus_membership(const DualGraph& graph, const TauData& t) {
  const bool balanced = is_balanced(graph, t).pass;
  const bool treelike = graph.classify().treelike;
  if (balanced && treelike) return Locus::Both;
  if (balanced) return Locus::Balanced;
  if (treelike) return Locus::Treelike;
  return Locus::Indeterminacy;
}

}  // namespace jacstab

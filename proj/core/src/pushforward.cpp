#include "jacstab/pushforward.hpp"

#include <algorithm>

#include "jacstab/error.hpp"
#include "jacstab/theta_formulas.hpp"

namespace jacstab {

RuleTable RuleTable::corrupted(std::string_view rule) const {
  RuleTable t = *this;
  if (rule == "d2") {
    t.d_squared += 1;
  } else if (rule == "db") {
    t.d_b += 1;
  } else if (rule == "b2") {
    t.b_squared += 1;
  } else if (rule == "kb") {
    t.k_b_offset += 1;
  } else if (rule == "k2") {
    t.k_squared += 1;
  } else {
    throw Error(ErrorCode::Parse, "unknown rule '" + std::string(rule) + "'");
  }
  return t;
}

DivisorClass pushforward(const FiberClass& fc, const RuleTable& rules) {
  using K = Atom::Kind;
  DivisorClassBuilder out(fc.genus(), fc.markings());
  const FiberClass normal = normalize(fc);
  for (const auto& [m, c] : normal.terms()) {
    if (m.size() < 2) continue;
    const Atom& x = m[0];
    const Atom& y = m[1];
    if (x.kind == K::D && y.kind == K::D) {
      out.add_psi(x.marking, c * rules.d_squared);
    } else if (x.kind == K::D && y.kind == K::B) {
      const auto& legs = y.boundary.legs;
      if (std::binary_search(legs.begin(), legs.end(), x.marking)) {
        out.add_boundary(y.boundary.h, legs, c * rules.d_b);
      }
    } else if (x.kind == K::B && y.kind == K::B) {
      out.add_boundary(x.boundary.h, x.boundary.legs, c * rules.b_squared);
    } else if (x.kind == K::KTilde && y.kind == K::B) {
      const Rational factor = rules.k_b_slope * y.boundary.h + rules.k_b_offset;
      out.add_boundary(y.boundary.h, y.boundary.legs, c * factor);
    } else if (x.kind == K::KTilde && y.kind == K::KTilde) {
      out.add_kappa1t(c * rules.k_squared);
    }
  }
  return out.build();
}

namespace {

std::int64_t sum_on(std::span<const std::int64_t> tau, const std::vector<int>& legs) {
  std::int64_t s = 0;
  for (int i : legs) s += tau[static_cast<std::size_t>(i - 1)];
  return s;
}

}  // namespace

FiberClass c1_of_Lk(int g, std::span<const std::int64_t> tau, std::int64_t k) {
  const int n = static_cast<int>(tau.size());
  require_moduli_range(g, n);
  require_tau_sum(tau, k * (2 * std::int64_t{g} - 2));
  if (k == 0 && std::all_of(tau.begin(), tau.end(), [](auto x) { return x == 0; })) {
    throw Error(ErrorCode::ZeroTau, "tau must be nonzero when k = 0");
  }

  FiberClass c1(g, n);
  for (int i = 1; i <= n; ++i) c1 += Rational(tau[static_cast<std::size_t>(i - 1)]) * FiberClass::d(g, n, i);
  c1 -= Rational(k) * FiberClass::k_tilde(g, n);
  for (const auto& idx : canonical_boundaries(g, n)) {
    const auto coeff = k * (1 - 2 * std::int64_t{idx.h}) + sum_on(tau, idx.legs);
    c1 += Rational(coeff) * FiberClass::b(g, n, idx.h, idx.legs);
  }
  return c1;
}

DivisorClass derive_theta(int g, std::span<const std::int64_t> tau, std::int64_t k, const RuleTable& rules) {
  const FiberClass c1 = c1_of_Lk(g, tau, k);
  return pushforward(Rational(-1, 2) * (c1 * c1), rules);
}

FiberClass c1_gm1(int g, std::span<const std::int64_t> tau, ChiConvention chi) {
  const int n = static_cast<int>(tau.size());
  require_moduli_range(g, n);
  require_tau_sum(tau, std::int64_t{g} - 1);

  FiberClass c1(g, n);
  for (int i = 1; i <= n; ++i) c1 += Rational(tau[static_cast<std::size_t>(i - 1)]) * FiberClass::d(g, n, i);
  for (const auto& idx : canonical_boundaries(g, n)) {
    const bool has_first = !idx.legs.empty() && idx.legs.front() == 1;
    const int indicator = (has_first == chi.flipped) ? 1 : 0;
    const auto coeff = sum_on(tau, idx.legs) - idx.h + indicator;
    c1 += Rational(coeff) * FiberClass::b(g, n, idx.h, idx.legs);
  }
  return c1;
}

DivisorClass derive_theta_gm1(int g, std::span<const std::int64_t> tau, ChiConvention chi,
                              const RuleTable& rules) {
  const FiberClass c1 = c1_gm1(g, tau, chi);
  const int n = static_cast<int>(tau.size());
  DivisorClass out = Rational(-1, 2) * pushforward(c1 * c1, rules);
  out += Rational(1, 2) * pushforward(c1 * FiberClass::k_tilde(g, n), rules);
  out -= DivisorClassBuilder(g, n).add_lambda1(Rational(1)).build();
  return out;
}

Multidegree compact_type_gm1_multidegree(const DualGraph& graph) {
  if (graph.vertex_count() != 2 || graph.edges().size() != 1 || graph.edges().front().is_loop()) {
    throw Error(ErrorCode::WrongShape, "expected two components joined by a single node");
  }
  const auto first = graph.vertex_of_marking(1);
  if (!first) throw Error(ErrorCode::NoBasepoint, "marking 1 is not on the curve");
  Multidegree m{{0, 0}};
  for (VertexIndex v = 0; v < 2; ++v) {
    m.degrees[v] = graph.vertex(v).genus - (*first == v ? 0 : 1);
  }
  return m;
}

}  // namespace jacstab

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "jacstab/graph.hpp"
#include "jacstab/rational.hpp"

namespace jacstab {

/// Component-wise degrees of a line bundle, indexed like DualGraph::vertices().
struct Multidegree {
  std::vector<std::int64_t> degrees;

  std::int64_t total() const;
  std::int64_t degree_on(VertexSet y) const;

  friend bool operator==(const Multidegree&, const Multidegree&) = default;
  friend auto operator<=>(const Multidegree&, const Multidegree&) = default;
};

enum class PolarizationKind { CanonicalZero, TrivialGm1, Custom };

/// Polarization data entering the thresholds q_Y - kappa_Y/2.
///
/// CanonicalZero is omega^{-1} + O (degree 0), TrivialGm1 is O (degree g-1).
/// A custom polarization gives deg P|_{X_v} / r per vertex and the target
/// degree d; the per-vertex values must sum to d + 1 - g.
struct Polarization {
  PolarizationKind kind = PolarizationKind::CanonicalZero;
  std::vector<Rational> per_vertex;  // Custom only
  std::int64_t custom_degree = 0;    // Custom only

  static Polarization canonical_zero() { return {}; }
  static Polarization trivial_gm1() { return {PolarizationKind::TrivialGm1, {}, 0}; }
  static Polarization custom(std::vector<Rational> per_vertex, std::int64_t degree) {
    return {PolarizationKind::Custom, std::move(per_vertex), degree};
  }

  /// Preset names: "canonical0", "trivial-gm1".
  static Polarization from_preset(std::string_view name);

  std::int64_t target_degree(const DualGraph& graph) const;
  /// q_Y: sum of per-vertex values plus deg_omega(Y)/2.
  Rational q(const DualGraph& graph, VertexSet y) const;
};

enum class StabilityMode { Semistable, Stable, QStable };

std::string_view to_string(StabilityMode mode);
StabilityMode parse_stability_mode(std::string_view text);

struct StabilityOptions {
  /// Vertex where q-stability is strict. Defaults to the vertex of marking 1.
  std::optional<VertexIndex> basepoint;
};

/// A subcurve violating its inequality: degree >= threshold (or > when strict).
struct StabilityWitness {
  VertexSet subcurve;
  std::int64_t degree = 0;
  Rational threshold;
  bool strict = false;
};

struct Verdict {
  bool pass = true;
  std::optional<StabilityWitness> witness;
  explicit operator bool() const { return pass; }
};

/// q_Y - kappa_Y / 2. Throws EMPTY_OR_FULL.
Rational threshold(const DualGraph& graph, const Polarization& pol, VertexSet y);

/// Checks every proper nonempty subcurve. A failing subcurve is reported after
/// being shrunk to one of its connected components that fails on its own.
/// Throws DEGREE_MISMATCH when m.total() differs from the polarization degree.
Verdict check_stability(const DualGraph& graph, const Polarization& pol, const Multidegree& m,
                        StabilityMode mode, const StabilityOptions& opts = {});

/// Same verdict computed over connected proper subcurves only.
Verdict check_stability_connected(const DualGraph& graph, const Polarization& pol,
                                  const Multidegree& m, StabilityMode mode,
                                  const StabilityOptions& opts = {});

/// Every multidegree satisfying the chosen stability, lexicographically sorted.
std::vector<Multidegree> enumerate_stable(const DualGraph& graph, const Polarization& pol,
                                          StabilityMode mode, const StabilityOptions& opts = {});

/// Integer vector tau over the markings and the twist k by the canonical sheaf.
struct TauData {
  std::vector<std::int64_t> tau;
  std::int64_t k = 0;
};

/// Throws TAU_SUM unless tau has n entries summing to k(2g-2), INPUT_RANGE on huge entries.
void require_theta_tau(const DualGraph& graph, const TauData& t);

/// m0(v) = sum of tau over legs at v - k * deg_omega({v}).
Multidegree base_multidegree(const DualGraph& graph, const TauData& t);

/// The (tau,k)-balanced condition, strict on subcurves carrying marking 1.
/// The witness reports sum of tau on Z as `degree` and k deg_omega(Z) - kappa_Z/2.
Verdict is_balanced(const DualGraph& graph, const TauData& t);

enum class Locus { Balanced, Treelike, Both, Indeterminacy };
std::string_view to_string(Locus locus);

Locus locus_membership(const DualGraph& graph, const TauData& t);

}  // namespace jacstab

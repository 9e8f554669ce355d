#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "jacstab/divisor_class.hpp"
#include "jacstab/error.hpp"
#include "jacstab/fiber_class.hpp"
#include "jacstab/graded_series.hpp"
#include "jacstab/graph.hpp"
#include "jacstab/stability.hpp"
#include "jacstab/twister.hpp"

namespace jacstab::json_io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; throws Error(PARSE) with the parser's message.
Json parse(std::string_view text);

/// {"n":int,"vertices":[{"id","genus","legs"}],"edges":[[a,b]]}.
/// Throws PARSE on schema errors and INVALID_GRAPH on structural ones.
DualGraph graph_from_json(const Json& j);
Json graph_to_json(const DualGraph& graph);

/// Throws INVALID_GRAPH with one detail line per violation, "CODE: message".
void require_valid(const DualGraph& graph);

Json violations_to_json(const std::vector<Violation>& violations);

/// Accepts an object keyed by vertex id or an array in vertex order.
Multidegree multidegree_from_json(const DualGraph& graph, const Json& j);
/// Object keyed by vertex id, in vertex order.
Json multidegree_to_json(const DualGraph& graph, const Multidegree& m);

/// Sorted array of vertex ids.
Json subcurve_to_json(const DualGraph& graph, VertexSet y);

/// {"tau":[...],"k":int}; "k" defaults to 0.
TauData tau_from_json(const Json& j);

Json verdict_to_json(const DualGraph& graph, const Verdict& v);
Json reduction_to_json(const DualGraph& graph, const Reduction& r);
Json branch_coefficients_to_json(const DualGraph& graph, const std::vector<BranchCoefficient>& coeffs);

/// {"psi":{"1":"1/2"},"lambda1":"-1","kappa1t":"0","delta_irr":"0","delta":[{"h":1,"A":[1],"c":"-1/2"}]}.
Json class_to_json(const DivisorClass& c);
/// Inverse of class_to_json; boundary entries go through canonicalization.
DivisorClass class_from_json(int g, int n, const Json& j);

Json fiber_class_to_json(const FiberClass& c);
/// {"terms":[{"monomial":["D_1","B_{1,{1}}"],"c":"1"}]}; atoms are "D_i", "K~"
/// and "B_{h,{a,b}}". The result is normalized.
FiberClass fiber_class_from_json(int g, int n, const Json& j);

/// {"terms":[{"C":{"1":3},"c":"-1/6"}, ...]} in text order.
Json poly_to_json(const GradedAtomPoly& p);

/// {"error":{"code":"TAU_SUM","message":"...","details":[...]}}.
Json error_to_json(const Error& e);

}  // namespace jacstab::json_io

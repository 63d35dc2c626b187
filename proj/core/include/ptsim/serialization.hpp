#pragma once

// JSON envelopes for matrices, vectors and every result type.
//
//   matrix: {"rows": n, "cols": m, "data": [[re, im], ...]}   (row-major)
//   vector: {"dim": n, "data": [[re, im], ...]}  (a bare data array is also
//           accepted on input)
//
// dump() is deterministic: insertion-ordered keys and 17 significant digits.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ptsim/completion.hpp"
#include "ptsim/dilation.hpp"
#include "ptsim/metric.hpp"
#include "ptsim/nosignaling.hpp"
#include "ptsim/pipeline.hpp"
#include "ptsim/ptcore.hpp"

namespace ptsim {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const ComplexMatrix& m);
/// ParseError on malformed input.
ComplexMatrix matrix_from_json(const Json& j);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json to_json(const Classification& c);
Json to_json(const MetricOperator& m);
Json to_json(const Dilation& d);
Json to_json(const ObstructionReport& r);
Json to_json(const CompletionResult& r);
Json to_json(const SimulationTrace& tr);
Json to_json(const JointStats& st);
Json to_json(const WholeSystemReport& r);
Json to_json(const GuntherReport& r);

/// Pretty-printed with `indent` spaces; numeric arrays stay on one line.
std::string dump(const Json& j, int indent = 2);

/// ParseError on invalid JSON.
Json parse_json(std::string_view text);
/// ParseError when the file cannot be read or parsed.
Json load_json_file(const std::string& path);

/// Simulation config document:
///   {"hamiltonian": matrix, "P": matrix?, "T": matrix?,
///    "alpha_params": {"alpha", "s", "E0"}?, "eta": matrix?,
///    "scheme": "identity" | "metric_sandwich" | "custom",
///    "rho": matrix?, "rho_prime": matrix?, "t": number, "psi": vector,
///    "seed": int?, "samples": int?}
///
/// With alpha_params the two-level example system and its dilation are used
/// (the hamiltonian may then be omitted). Without P/T the PT pair is built
/// from the eigenframe.
SimulationConfig simulation_config_from_json(const Json& j, const Tolerances& tol = {});

}  // namespace ptsim

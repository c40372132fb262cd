#pragma once

#include <string>

#include <json.hpp>

#include "coalspec/dynamics.hpp"
#include "coalspec/rrt.hpp"
#include "coalspec/spectral.hpp"
#include "coalspec/tri_matrix.hpp"

namespace coalspec::io {

using nlohmann::json;

/// Rounds to 15 significant digits; JSON then prints the shortest form.
double round_sig15(double value);
/// "%.15g"; non-finite values become "inf", "-inf" or "nan".
std::string format_real(double value);
/// Real as a JSON number rounded to 15 significant digits, or "inf".
json real_json(double value);

/// { "n": int, "order": [labels], "entries": [[row, col, "p/q"], ...] }
json matrix_json(const TriMatrix& m);

json report_json(const TripleReport& report);

/// { "R": matrix, "D": ["p/q", ...], "L": matrix }
json triple_json(const SpectralTriple& triple);

/// { "labels": ["1,2", "3"], "parent": { "3": "1,2" } }
json tree_json(const IncreasingTree& tree);

}  // namespace coalspec::io

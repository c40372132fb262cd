#include "coalspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace coalspec::io {

double round_sig15(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_real(value).c_str(), nullptr);
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return buffer;
}

json real_json(double value) {
  if (!std::isfinite(value)) return format_real(value);
  return round_sig15(value);
}

json matrix_json(const TriMatrix& m) {
  json order = json::array();
  for (std::size_t k = 0; k < m.dim(); ++k) order.push_back(m.label(k));
  json entries = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (const auto& [c, v] : m.row(r)) entries.push_back(json::array({r, c, v.str()}));
  }
  const int n = m.lattice() ? m.lattice()->ground_size() : static_cast<int>(m.dim());
  return {{"n", n}, {"order", std::move(order)}, {"entries", std::move(entries)}};
}

json report_json(const TripleReport& report) {
  return {{"Q_equals_RDL", report.factorization},
          {"LR_identity", report.left_inverse},
          {"RL_identity", report.right_inverse},
          {"unit_diagonals", report.unit_diagonals},
          {"triangular_support", report.support},
          {"all_pass", report.all_pass()},
          {"failures", report.failures}};
}

json triple_json(const SpectralTriple& triple) {
  json diag = json::array();
  for (const auto& d : triple.diagonal) diag.push_back(d.str());
  return {{"R", matrix_json(triple.right)}, {"D", std::move(diag)}, {"L", matrix_json(triple.left)}};
}

json tree_json(const IncreasingTree& tree) {
  json labels = json::array();
  json parent = json::object();
  for (std::size_t k = 0; k < tree.node_count(); ++k) {
    labels.push_back(mask_str(tree.label(k)));
    if (k > 0) parent[mask_str(tree.label(k))] = mask_str(tree.label(tree.parent(k)));
  }
  return {{"labels", std::move(labels)}, {"parent", std::move(parent)}};
}

}  // namespace coalspec::io

#include "coalspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "coalspec/dynamics.hpp"
#include "coalspec/errors.hpp"
#include "coalspec/generator.hpp"
#include "coalspec/io.hpp"
#include "coalspec/simulate.hpp"
#include "coalspec/spectral.hpp"
#include "coalspec/verify.hpp"

namespace coalspec::cli {

namespace {

using io::json;

struct Options {
  std::string model = "bs";
  int n = 4;
  std::optional<double> t;
  std::optional<std::string> x;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out = "-";
  int n_max = 5;
  double tol = 1e-10;
  int n_cap = PartitionLattice::kDefaultCap;
  bool block = false;
  std::string from;
};

// A command's result, rendered as JSON or as a flat CSV table.
struct Output {
  json document;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int exit_code = kExitOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Model parse_model(const std::string& name) {
  if (name == "bs") return Model::bolthausen_sznitman;
  if (name == "kingman") return Model::kingman;
  throw UsageError("unknown model '" + name + "' (expected bs or kingman)");
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_output(const Output& output, const Options& opts, std::ostream& out) {
  std::ostringstream text;
  if (opts.format == "csv") {
    for (std::size_t k = 0; k < output.header.size(); ++k) text << (k ? "," : "") << csv_field(output.header[k]);
    text << '\n';
    for (const auto& row : output.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) text << (k ? "," : "") << csv_field(row[k]);
      text << '\n';
    }
  } else {
    text << output.document.dump(2) << '\n';
  }
  if (opts.out == "-") {
    out << text.str();
    return;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + opts.out + "'");
  file << text.str();
}

std::shared_ptr<const PartitionLattice> lattice_for(const Options& opts) {
  return PartitionLattice::enumerate(opts.n, opts.n_cap);
}

// Source partitions selected by --from (default: every partition).
std::vector<SetPartition> sources(const PartitionLattice& lattice, const Options& opts) {
  if (opts.from.empty()) return {lattice.elements().begin(), lattice.elements().end()};
  auto pi = SetPartition::parse(opts.from);
  (void)lattice.index_of(pi);
  return {pi};
}

Output cmd_lattice(const Options& opts) {
  const auto lattice = lattice_for(opts);
  Output o;
  o.header = {"index", "partition", "blocks"};
  json parts = json::array();
  for (std::size_t k = 0; k < lattice->size(); ++k) {
    const auto& p = lattice->at(k);
    parts.push_back({{"index", k}, {"partition", p.str()}, {"blocks", p.size()}});
    o.rows.push_back({std::to_string(k), p.str(), std::to_string(p.size())});
  }
  o.document = {{"n", opts.n}, {"size", lattice->size()}, {"partitions", std::move(parts)}};
  return o;
}

Output matrix_output(const TriMatrix& m, const std::string& name) {
  Output o;
  o.header = {"matrix", "row", "col", "row_label", "col_label", "value"};
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      o.rows.push_back({name, std::to_string(r), std::to_string(c), m.label(r), m.label(c), v.str()});
    }
  }
  return o;
}

Output cmd_qmatrix(const Options& opts) {
  const Model model = parse_model(opts.model);
  TriMatrix q;
  if (opts.block) {
    q = model == Model::bolthausen_sznitman ? bs_block_generator(opts.n) : kingman_block_generator(opts.n);
  } else {
    q = build_generator(lattice_for(opts), model);
  }
  Output o = matrix_output(q, "Q");
  o.document = io::matrix_json(q);
  o.document["model"] = opts.model;
  o.document["kind"] = opts.block ? "block" : "partition";
  return o;
}

Output cmd_spectral(const Options& opts) {
  const Model model = parse_model(opts.model);
  TriMatrix q;
  SpectralTriple triple;
  if (opts.block) {
    q = model == Model::bolthausen_sznitman ? bs_block_generator(opts.n) : kingman_block_generator(opts.n);
    triple = model == Model::bolthausen_sznitman ? bs_block_triple(opts.n) : kingman_block_triple(opts.n);
  } else {
    const auto lattice = lattice_for(opts);
    q = build_generator(lattice, model);
    triple = model_triple(model, lattice);
  }
  const auto report = verify_triple(q, triple);

  Output o;
  o.header = {"matrix", "row", "col", "row_label", "col_label", "value"};
  for (const auto& [name, m] : {std::pair{"R", &triple.right}, std::pair{"L", &triple.left}}) {
    auto part = matrix_output(*m, name);
    o.rows.insert(o.rows.end(), part.rows.begin(), part.rows.end());
  }
  for (std::size_t k = 0; k < triple.diagonal.size(); ++k) {
    o.rows.push_back({"D", std::to_string(k), std::to_string(k), q.label(k), q.label(k), triple.diagonal[k].str()});
  }
  o.document = io::triple_json(triple);
  o.document["model"] = opts.model;
  o.document["n"] = opts.n;
  o.document["kind"] = opts.block ? "block" : "partition";
  o.document["report"] = io::report_json(report);
  o.exit_code = report.all_pass() ? kExitOk : kExitVerificationFailed;
  return o;
}

Output cmd_transition(const Options& opts) {
  const Model model = parse_model(opts.model);
  if (opts.t.has_value() == opts.x.has_value()) throw UsageError("transition needs exactly one of --t or --x");
  if (opts.t && *opts.t < 0) throw UsageError("--t must be nonnegative");

  Output o;
  o.header = {"from", "to", "value"};
  json rows = json::object();
  auto emit = [&](const std::string& from, const std::string& to, json value, std::string text) {
    rows[from][to] = std::move(value);
    o.rows.push_back({from, to, std::move(text)});
  };

  std::optional<BigRat> x;
  if (opts.x) x = BigRat::parse(*opts.x);

  if (opts.block || model == Model::kingman) {
    SpectralTriple triple;
    if (opts.block) {
      triple = model == Model::bolthausen_sznitman ? bs_block_triple(opts.n) : kingman_block_triple(opts.n);
    } else {
      triple = kingman_triple(lattice_for(opts));
    }
    const auto& shape = triple.right;
    std::optional<std::size_t> only;
    if (!opts.from.empty()) {
      only = opts.block ? shape.block_position(std::stoi(opts.from))
                        : shape.lattice()->index_of(SetPartition::parse(opts.from));
    }
    if (x) {
      const auto p = transition_via_triple_exact(triple, *x);
      for (std::size_t r = 0; r < p.dim(); ++r) {
        if (only && *only != r) continue;
        for (const auto& [c, v] : p.row(r)) emit(p.label(r), p.label(c), v.str(), v.str());
      }
    } else {
      const auto p = transition_via_triple(triple, *opts.t);
      for (std::size_t r = 0; r < shape.dim(); ++r) {
        if (only && *only != r) continue;
        for (std::size_t c = r; c < shape.dim(); ++c) {
          if (triple.right.get(r, c).is_zero()) continue;
          const double v = p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          emit(shape.label(r), shape.label(c), io::real_json(v), io::format_real(v));
        }
      }
    }
  } else {
    const auto lattice = lattice_for(opts);
    for (const auto& pi : sources(*lattice, opts)) {
      for (const auto& rho : coarsenings(pi)) {
        if (x) {
          const auto v = bs_transition_exact(pi, rho, *x);
          emit(pi.str(), rho.str(), v.str(), v.str());
        } else {
          const double v = bs_transition(pi, rho, *opts.t);
          emit(pi.str(), rho.str(), io::real_json(v), io::format_real(v));
        }
      }
    }
  }
  o.document = {{"model", opts.model}, {"n", opts.n}, {"kind", opts.block ? "block" : "partition"},
                {"rows", std::move(rows)}};
  if (opts.t) o.document["t"] = io::real_json(*opts.t);
  if (opts.x) o.document["x"] = x->str();
  return o;
}

Output cmd_green(const Options& opts) {
  if (parse_model(opts.model) != Model::bolthausen_sznitman) {
    throw UsageError("green is available for --model bs only");
  }
  Output o;
  o.header = {"from", "to", "value"};
  json rows = json::object();
  if (opts.block) {
    for (int i = 2; i <= opts.n; ++i) {
      for (int j = 2; j <= i; ++j) {
        const auto v = bs_block_green(i, j, opts.n).str();
        rows[std::to_string(i)][std::to_string(j)] = v;
        o.rows.push_back({std::to_string(i), std::to_string(j), v});
      }
    }
  } else {
    const auto lattice = lattice_for(opts);
    for (const auto& pi : sources(*lattice, opts)) {
      for (const auto& rho : coarsenings(pi)) {
        const auto v = bs_green(pi, rho).str();
        rows[pi.str()][rho.str()] = v;
        o.rows.push_back({pi.str(), rho.str(), v});
      }
    }
  }
  o.document = {{"model", opts.model}, {"n", opts.n}, {"kind", opts.block ? "block" : "partition"},
                {"rows", std::move(rows)}};
  return o;
}

Output cmd_hitting(const Options& opts) {
  const Model model = parse_model(opts.model);
  const auto lattice = lattice_for(opts);
  Output o;
  o.header = {"from", "to", "value"};
  json rows = json::object();
  for (const auto& pi : sources(*lattice, opts)) {
    for (const auto& rho : coarsenings(pi)) {
      BigRat h;
      if (model == Model::kingman) {
        h = kingman_hitting(pi, rho);
      } else {
        h = rho.size() == 1 ? BigRat(1) : bs_hitting(pi, rho);
      }
      rows[pi.str()][rho.str()] = h.str();
      o.rows.push_back({pi.str(), rho.str(), h.str()});
    }
  }
  o.document = {{"model", opts.model}, {"n", opts.n}, {"rows", std::move(rows)}};
  return o;
}

Output cmd_simulate(const Options& opts) {
  const Model model = parse_model(opts.model);
  if (!opts.t) throw UsageError("simulate needs --t");
  if (*opts.t < 0) throw UsageError("--t must be nonnegative");
  if (opts.reps == 0) throw UsageError("--reps must be at least 1");
  const auto estimates = estimate_transition(model, opts.n, *opts.t, opts.reps, opts.seed);

  std::vector<SetPartition> states;
  std::optional<Eigen::MatrixXd> exact_row;
  std::shared_ptr<const PartitionLattice> lattice;
  if (opts.n <= opts.n_cap) {
    lattice = lattice_for(opts);
    states.assign(lattice->elements().begin(), lattice->elements().end());
    if (model == Model::kingman) exact_row = transition_via_triple(kingman_triple(lattice), *opts.t).row(0);
  } else {
    for (const auto& [state, e] : estimates) states.push_back(state);
  }

  Output o;
  o.header = {"partition", "estimate", "std_error", "exact", "z"};
  json rows = json::array();
  const auto start = SetPartition::singletons(opts.n);
  for (const auto& state : states) {
    const auto it = estimates.find(state);
    const Estimate e = it == estimates.end() ? binomial_estimate(0, opts.reps) : it->second;
    std::optional<double> exact;
    if (lattice) {
      exact = model == Model::bolthausen_sznitman
                  ? bs_transition(start, state, *opts.t)
                  : (*exact_row)(static_cast<Eigen::Index>(lattice->index_of(state)));
    }
    json row = {{"partition", state.str()},
                {"estimate", io::real_json(e.estimate)},
                {"std_error", io::real_json(e.std_error)},
                {"exact", nullptr},
                {"z", nullptr}};
    std::vector<std::string> csv = {state.str(), io::format_real(e.estimate), io::format_real(e.std_error), "", ""};
    if (exact) {
      // Empirical standard error, falling back to the exact-p one when no
      // spread was observed.
      double se = e.std_error;
      if (se == 0.0) se = std::sqrt(*exact * (1.0 - *exact) / static_cast<double>(opts.reps));
      double z = 0.0;
      if (se > 0.0) {
        z = (e.estimate - *exact) / se;
      } else if (std::abs(e.estimate - *exact) > 1e-12) {
        z = std::numeric_limits<double>::infinity();
      }
      row["exact"] = io::real_json(*exact);
      row["z"] = io::real_json(z);
      csv[3] = io::format_real(*exact);
      csv[4] = io::format_real(z);
    }
    rows.push_back(std::move(row));
    o.rows.push_back(std::move(csv));
  }
  o.document = {{"model", opts.model}, {"n", opts.n}, {"t", io::real_json(*opts.t)}, {"reps", opts.reps},
                {"seed", opts.seed}, {"rows", std::move(rows)}};
  return o;
}

Output cmd_verify(const Options& opts) {
  VerifyOptions vopts;
  vopts.n_max = opts.n_max;
  vopts.tol = opts.tol;
  vopts.lattice_cap = opts.n_cap;
  const auto results = run_verification(vopts);
  Output o;
  o.header = {"n", "check", "passed", "detail"};
  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"n", r.n}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    o.rows.push_back({std::to_string(r.n), r.name, r.passed ? "true" : "false", r.detail});
  }
  o.document = {{"n_max", opts.n_max}, {"tol", opts.tol}, {"all_pass", all}, {"checks", std::move(checks)}};
  o.exit_code = all ? kExitOk : kExitVerificationFailed;
  return o;
}

void add_output_flags(CLI::App* sub, Options& opts) {
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("COALSPEC_FORMAT");
  sub->add_option("--out", opts.out, "Output path, '-' for stdout")->envname("COALSPEC_OUT");
  sub->add_option("--n-cap", opts.n_cap, "Largest n for full-lattice work")
      ->check(CLI::Range(1, 12))
      ->envname("COALSPEC_N_CAP");
}

void add_n(CLI::App* sub, Options& opts) {
  sub->add_option("--n", opts.n, "Ground set size")->check(CLI::Range(1, kMaxElement))->envname("COALSPEC_N");
}

void add_model(CLI::App* sub, Options& opts) {
  sub->add_option("--model", opts.model, "Coalescent model")
      ->check(CLI::IsMember({"bs", "kingman"}))
      ->envname("COALSPEC_MODEL");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Exact spectral decompositions and simulation of Bolthausen-Sznitman and Kingman n-coalescents",
               "coalspec"};
  app.require_subcommand(1);

  auto* lattice = app.add_subcommand("lattice", "Enumerate P([n]) in matrix order");
  add_n(lattice, opts);
  add_output_flags(lattice, opts);

  auto* qmatrix = app.add_subcommand("qmatrix", "Exact generator matrix");
  add_model(qmatrix, opts);
  add_n(qmatrix, opts);
  qmatrix->add_flag("--block", opts.block, "Block-counting process instead of the partition chain");
  add_output_flags(qmatrix, opts);

  auto* spectral = app.add_subcommand("spectral", "R, D, L and an exact verification report");
  add_model(spectral, opts);
  add_n(spectral, opts);
  spectral->add_flag("--block", opts.block, "Block-counting process instead of the partition chain");
  add_output_flags(spectral, opts);

  auto* transition = app.add_subcommand("transition", "Transition probabilities at time t (or exactly at x = e^-t)");
  add_model(transition, opts);
  add_n(transition, opts);
  transition->add_option("--t", opts.t, "Time")->envname("COALSPEC_T");
  transition->add_option("--x", opts.x, "Exact rational x = e^-t, e.g. 1/2");
  transition->add_option("--from", opts.from, "Only this source (partition string, or block count with --block)");
  transition->add_flag("--block", opts.block, "Block-counting process");
  add_output_flags(transition, opts);

  auto* green = app.add_subcommand("green", "Green's matrix of the Bolthausen-Sznitman coalescent");
  add_model(green, opts);
  add_n(green, opts);
  green->add_option("--from", opts.from, "Only this source partition");
  green->add_flag("--block", opts.block, "Block-counting process");
  add_output_flags(green, opts);

  auto* hitting = app.add_subcommand("hitting", "Exact hitting probabilities");
  add_model(hitting, opts);
  add_n(hitting, opts);
  hitting->add_option("--from", opts.from, "Only this source partition");
  add_output_flags(hitting, opts);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the law of Pi(t)");
  add_model(simulate, opts);
  add_n(simulate, opts);
  simulate->add_option("--t", opts.t, "Time")->envname("COALSPEC_T");
  simulate->add_option("--reps", opts.reps, "Replicates")->envname("COALSPEC_REPS");
  simulate->add_option("--seed", opts.seed, "Seed")->envname("COALSPEC_SEED");
  add_output_flags(simulate, opts);

  auto* verify = app.add_subcommand("verify", "Check every identity against reference computations");
  verify->add_option("--n-max", opts.n_max, "Largest n")->check(CLI::Range(1, 12))->envname("COALSPEC_N_MAX");
  verify->add_option("--tol", opts.tol, "Tolerance for floating-point comparisons")->envname("COALSPEC_TOL");
  add_output_flags(verify, opts);

  std::vector<std::string> argv_storage{"coalspec"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    Output output;
    if (*lattice) {
      output = cmd_lattice(opts);
    } else if (*qmatrix) {
      output = cmd_qmatrix(opts);
    } else if (*spectral) {
      output = cmd_spectral(opts);
    } else if (*transition) {
      output = cmd_transition(opts);
    } else if (*green) {
      output = cmd_green(opts);
    } else if (*hitting) {
      output = cmd_hitting(opts);
    } else if (*simulate) {
      output = cmd_simulate(opts);
    } else {
      output = cmd_verify(opts);
    }
    write_output(output, opts, out);
    return output.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const size_limit_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace coalspec::cli

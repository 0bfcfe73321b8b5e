#pragma once

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tetra/tetra.hpp"

namespace tetra::cli {

/// Process exit codes.
enum exit_code : int {
  ok = 0,
  negative = 1,  // computation succeeded, verdict negative
  usage = 2,     // bad arguments or input files
  internal = 3,  // computation did not finish (no convergence, inconclusive pipeline)
};

// ---------------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw error(error_kind::parse_error, "not a real number: '" + s + "'");
  return v;
}

}  // namespace detail

/// Accepts "a", "bi", "a+bi", "a-bi" (i or j), with optional exponents.
inline cplx parse_complex(const std::string& text) {
  const std::string s = detail::strip(text);
  if (s.empty()) throw error(error_kind::parse_error, "empty complex number");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {detail::parse_real(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return detail::parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {detail::parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

/// "(x1, x2, x3)" with complex entries; the parentheses are optional.
inline Point3 parse_point(const std::string& text) {
  std::string s = detail::strip(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw error(error_kind::parse_error, "a point needs three coordinates: '" + text + "'");
  Point3 p{parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
  if (!p.is_finite()) throw error(error_kind::parse_error, "point has non-finite coordinates");
  return p;
}

/// Comma-separated coordinate indices.
inline std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(detail::strip(text));
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.front() == '-') throw error(error_kind::parse_error, "bad index '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

inline void flatten(const io::json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    if (j.contains("rows") && j.contains("cols") && j.contains("data")) {
      out << prefix << ": " << j["rows"] << "x" << j["cols"] << " matrix\n";
      return;
    }
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const io::json& e) { return e.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

}  // namespace detail

inline void emit(const io::json& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    out << report.dump(2) << "\n";
  } else {
    detail::flatten(report, "", out);
  }
}

inline void write_json_file(const std::string& path, const io::json& j) {
  std::ofstream f(path);
  if (!f) throw error(error_kind::invalid_argument, "cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

/// Errors that describe the mathematics of the input rather than a malformed call.
inline bool is_negative_verdict(error_kind k) {
  return k == error_kind::not_a_contraction || k == error_kind::inconsistent_equation ||
         k == error_kind::validation_required || k == error_kind::outside_disk;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

/**
 * @brief Parse argv and run one subcommand.
 *
 * Reports go to `out`, diagnostics to `err`. Randomized subcommands echo
 * the resolved seed in their report.
 */
inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tetrablock operator toolkit: geometry, operator triples, functional models and the dilation counterexample",
               "tetra"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::string> seed_flag;
  std::string format_name;
  app.add_option("--config", config_path, "ToolConfig JSON file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed_flag, "Master seed (overrides TETRA_SEED and the config file)");
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}));

  // classify
  auto* classify = app.add_subcommand("classify", "Classify a point against the closed tetrablock");
  std::string point_text;
  std::string point_file;
  auto* point_opt = classify->add_option("--point", point_text, "Point as '(x1,x2,x3)', entries like 1+2i");
  classify->add_option("--point-file", point_file, "Point JSON {\"x1\":[re,im],...}")
      ->check(CLI::ExistingFile)
      ->excludes(point_opt);
  std::size_t classify_grid = 64;
  classify->add_option("--grid", classify_grid, "Grid for the defining-function minimum")->capture_default_str();

  // sup
  auto* sup = app.add_subcommand("sup", "Lower bound for sup |p| over the closed tetrablock");
  std::string poly_file;
  sup->add_option("--poly", poly_file, "Polynomial JSON [{\"exp\":[m1,m2,m3],\"coef\":[re,im]},...]")
      ->required()
      ->check(CLI::ExistingFile);
  std::optional<std::size_t> sup_samples;
  std::size_t sup_refine = 60;
  sup->add_option("--samples", sup_samples, "Boundary samples");
  sup->add_option("--refine", sup_refine, "Pattern-search iterations")->capture_default_str();

  // cf
  auto* cf = app.add_subcommand("cf", "Minimal sup-norm completion of b0 + b1 z");
  std::string b0_text;
  std::string b1_text;
  unsigned cf_degree = 8;
  int cf_iters = 400;
  cf->add_option("--b0", b0_text, "Constant coefficient")->required();
  cf->add_option("--b1", b1_text, "Linear coefficient")->required();
  cf->add_option("--degree", cf_degree, "Highest completion degree")->capture_default_str();
  cf->add_option("--iters", cf_iters, "Pattern-search iterations per degree")->capture_default_str();

  // fundamental
  auto* fundamental = app.add_subcommand("fundamental", "Fundamental operators of a triple");
  std::string triple_file;
  fundamental->add_option("--triple", triple_file, "Triple JSON {\"t1\",\"t2\",\"t3\",\"tol\"}")
      ->required()
      ->check(CLI::ExistingFile);

  // falsify
  auto* falsify = app.add_subcommand("falsify", "Search for a polynomial violating the E-contraction inequality");
  falsify->add_option("--triple", triple_file, "Triple JSON")->required()->check(CLI::ExistingFile);
  std::optional<std::size_t> trials;
  std::optional<unsigned> degree;
  std::optional<std::size_t> f_samples;
  double margin = 1e-3;
  falsify->add_option("--trials", trials, "Random polynomials");
  falsify->add_option("--degree", degree, "Maximum total degree");
  falsify->add_option("--samples", f_samples, "Boundary samples per supremum");
  falsify->add_option("--margin", margin, "Violation margin")->capture_default_str();

  // obstruction
  auto* obstruction = app.add_subcommand("obstruction", "Hypotheses and dilation obstruction for a split C^k + C^k");
  obstruction->add_option("--triple", triple_file, "Triple JSON")->required()->check(CLI::ExistingFile);
  std::size_t split = 0;
  std::string horizon_text;
  obstruction->add_option("--split", split, "Half dimension k")->required();
  obstruction->add_option("--horizon", horizon_text, "Coordinates excluded from the subspace comparison, e.g. 6,7");

  // model
  auto* model = app.add_subcommand("model", "Build a functional-model triple from a symbol pair");
  std::string a1_file;
  std::string a2_file;
  std::size_t blocks = 8;
  std::string flavor = "hardy";
  std::string emit_file;
  model->add_option("--a1", a1_file, "Matrix JSON for A1")->required()->check(CLI::ExistingFile);
  model->add_option("--a2", a2_file, "Matrix JSON for A2")->required()->check(CLI::ExistingFile);
  model->add_option("--blocks", blocks, "Truncation N")->capture_default_str();
  model->add_option("--flavor", flavor, "Model flavor")->check(CLI::IsMember({"hardy", "l2"}))->capture_default_str();
  model->add_option("--emit", emit_file, "Write the triple JSON here");

  // counterexample
  auto* counter = app.add_subcommand("counterexample", "Run the full counterexample pipeline");
  std::size_t ce_blocks = 4;
  std::string out_file;
  counter->add_option("--blocks", ce_blocks, "Truncation N (>= 3)")->capture_default_str();
  counter->add_option("--trials", trials, "Falsifier polynomials");
  counter->add_option("--degree", degree, "Falsifier degree");
  counter->add_option("--out", out_file, "Also write the verdict JSON here");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    ToolConfig cfg = resolve_config(config_path, seed_flag);
    if (!format_name.empty()) cfg.format = parse_format(format_name);
    const double tol = cfg.tol.algebraic;
    io::json report;
    int code = exit_code::ok;

    if (*classify) {
      if (point_text.empty() && point_file.empty()) throw error(error_kind::invalid_argument, "give --point or --point-file");
      const Point3 p = point_text.empty() ? io::point_from_json(read_json_file(point_file)) : parse_point(point_text);
      const Classification c = classify_point(p, tol);
      report = {{"command", "classify"}, {"point", io::to_json(p)}};
      report.update(io::to_json(c));
      if (std::abs(p.x3) <= 1.0 + tol) report["defining_min"] = defining_min(p, classify_grid);
      code = c.in_closure() ? exit_code::ok : exit_code::negative;
    } else if (*sup) {
      const Poly3 p = io::poly_from_json(read_json_file(poly_file));
      const std::size_t n = sup_samples.value_or(cfg.samples);
      report = {{"command", "sup"},
                {"seed", cfg.seed},
                {"samples", n},
                {"refine_iters", sup_refine},
                {"sup_lower_bound", sup_on_closure(p, n, sup_refine, cfg.seed)}};
    } else if (*cf) {
      const cplx b0 = parse_complex(b0_text);
      const cplx b1 = parse_complex(b1_text);
      std::vector<unsigned> degrees;
      for (unsigned d = 0; d <= cf_degree; d = d < 2 ? 2 : d * 2) degrees.push_back(d);
      if (degrees.back() != cf_degree) degrees.push_back(cf_degree);
      const CfEntry e = cf_entry(b0, b1, degrees, cf_iters, cfg.seed);
      report = {{"command", "cf"},
                {"seed", cfg.seed},
                {"b0", io::to_json(b0)},
                {"b1", io::to_json(b1)},
                {"matrix_norm", e.bound},
                {"degrees", degrees},
                {"empirical_inf", e.values},
                {"monotone", e.monotone},
                {"ratio", e.values.back() / e.bound}};
    } else if (*fundamental) {
      const OperatorTriple t = io::triple_from_json(read_json_file(triple_file));
      report = {{"command", "fundamental"}, {"commutation_defect", commutation_defect(t)}};
      report["fundamental"] = io::to_json(fundamental_operators(t, tol, cfg.tol.rank));
    } else if (*falsify) {
      const OperatorTriple t = io::triple_from_json(read_json_file(triple_file));
      FalsifyOptions fo;
      fo.trials = trials.value_or(cfg.trials);
      fo.max_degree = degree.value_or(cfg.degree);
      fo.samples = f_samples.value_or(cfg.samples);
      fo.margin = margin;
      fo.seed = cfg.seed;
      const FalsifyVerdict v = falsify_E_contraction(t, fo);
      report = {{"command", "falsify"},
                {"seed", cfg.seed},
                {"trials", fo.trials},
                {"degree", fo.max_degree},
                {"samples", fo.samples},
                {"margin", fo.margin},
                {"commutation_defect", commutation_defect(t)}};
      report.update(io::to_json(v));
      code = v.violated() ? exit_code::negative : exit_code::ok;
    } else if (*obstruction) {
      const OperatorTriple t = io::triple_from_json(read_json_file(triple_file));
      const PipelineReport r = obstruction_pipeline(t, split, cfg.tol, parse_index_list(horizon_text));
      report = {{"command", "obstruction"}};
      report.update(io::to_json(r));
      code = r.verdict == "NotObstructed" ? exit_code::ok : exit_code::negative;
    } else if (*model) {
      const SymbolPair sp = validate_symbol_pair(io::matrix_from_json(read_json_file(a1_file)),
                                                 io::matrix_from_json(read_json_file(a2_file)), 64, tol);
      const TruncationSpec spec{blocks, sp.dim(), flavor == "hardy" ? ModelFlavor::hardy_toeplitz : ModelFlavor::l2_circulant};
      report = {{"command", "model"}, {"flavor", flavor}, {"blocks", blocks}, {"symbol", io::to_json(sp)}};
      if (!sp.valid()) {
        report["error"] = to_string(error_kind::validation_required);
        code = exit_code::negative;
      } else {
        const OperatorTriple t = build_model(sp, spec);
        if (spec.flavor == ModelFlavor::l2_circulant) {
          report["e_unitary"] = io::to_json(is_E_unitary(t, tol));
        } else {
          report["e_isometry_interior"] = io::to_json(hardy_interior_isometry(t, spec, tol));
          if (blocks >= 3) report["recovered"] = io::to_json(recover_fundamental(t, spec, tol));
        }
        report["pointwise"] = io::to_json(pointwise_unitary_check(sp, 64, tol));
        if (!emit_file.empty()) {
          write_json_file(emit_file, io::to_json(t));
          report["emitted"] = emit_file;
        }
      }
    } else if (*counter) {
      CounterexampleConfig cc;
      cc.blocks = ce_blocks;
      cc.tol = cfg.tol;
      cc.trials = trials.value_or(cfg.trials);
      cc.degree = degree.value_or(cfg.degree);
      cc.samples = cfg.samples;
      cc.seed = cfg.seed;
      const CounterexampleVerdict v = run_full_pipeline(cc);
      report = io::to_json(v);
      if (!out_file.empty()) write_json_file(out_file, report);
      code = v.verdict == "Obstructed" ? exit_code::negative
             : v.verdict == "NotObstructed" ? exit_code::ok
                                            : exit_code::internal;
    } else if (*selftest) {
      io::json results = io::json::array();
      bool all = true;
      for (const acceptance::Result& r : acceptance::run_all()) {
        err << acceptance::render(r) << "\n";
        results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
      }
      report = {{"command", "selftest"}, {"passed", all}, {"criteria", std::move(results)}};
      code = all ? exit_code::ok : exit_code::negative;
    }
    emit(report, cfg.format, out);
    return code;
  } catch (const error& e) {
    const io::json report{{"error", to_string(e.kind())}, {"message", e.what()}};
    if (is_negative_verdict(e.kind())) {
      out << report.dump(2) << "\n";
      return exit_code::negative;
    }
    err << "tetra: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (e.kind() == error_kind::no_convergence) return exit_code::internal;
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "tetra: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace tetra::cli

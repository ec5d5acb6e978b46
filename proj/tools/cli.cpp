// Copyright 2026 The epsmult Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "epsmult/asymptotics.hpp"
#include "epsmult/cohomology.hpp"
#include "epsmult/error.hpp"
#include "epsmult/families.hpp"
#include "epsmult/ideal.hpp"
#include "epsmult/polyhedra.hpp"
#include "epsmult/repro.hpp"
#include "epsmult/serialize.hpp"

namespace epsmult {

namespace {

struct Outcome {
  int code = 0;
  Json report;
  std::optional<std::string> csv;  // overrides the generic CSV rendering
};

using Job = std::function<Outcome()>;

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string generic_csv(const Json& report) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : report.items()) out += csv_cell(k) + "," + csv_cell(v) + "\n";
  return out;
}

std::string index_text(const Index& n) {
  std::string s;
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? ";" : "") + std::to_string(n[i]);
  return s;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A spec argument is a file path or inline JSON.
FamilySpec load_spec(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return parse_family_spec(arg);
  return parse_family_spec(read_text(arg));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Index> indices_for(const FamilySpec& spec, const std::optional<std::uint64_t>& n,
                               const std::string& range) {
  if (n && !range.empty()) throw ParseError("give either --n or --range");
  if (n) return {Index(spec.arity(), *n)};
  if (range.empty()) throw ParseError("one of --n or --range is required");
  return IndexRange::parse(range, spec.arity()).indices();
}

Json no_fit_json(const NoFitError& e) {
  Json attempts = Json::array();
  for (const auto& a : e.attempts()) {
    attempts.push_back(Json{{"period", a.period},
                            {"first_failing_index", a.first_failing_index.empty() ? Json(nullptr)
                                                                                  : Json(a.first_failing_index)}});
  }
  return Json{{"error", e.what()}, {"attempts", std::move(attempts)}};
}

struct Globals {
  bool json = false;
  bool csv = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  double timeout = 0;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epsilon multiplicities and local cohomology lengths of monomial ideals", "eps"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Globals g;
  app.add_flag("--json", g.json, "JSON output (default)");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", g.seed, "Seed for randomized cases");
  app.add_option("--timeout", g.timeout, "Give up after this many seconds")->check(CLI::NonNegativeNumber);

  Job job;

  // h0
  auto* h0 = app.add_subcommand("h0", "Length of H^0_m(R/I)");
  std::string h0_ideal, h0_method = "box";
  bool h0_witnesses = false;
  h0->add_option("--ideal", h0_ideal, "Ideal")->required();
  h0->add_option("--method", h0_method, "box|staircase|takayama");
  h0->add_flag("--witnesses", h0_witnesses, "List the points of sat(I) \\ I");
  h0->callback([&] {
    job = [ideal = h0_ideal, method = h0_method, witnesses = h0_witnesses, threads = g.threads] {
      H0Options opts;
      opts.method = parse_h0_method(method);
      opts.witnesses = witnesses;
      opts.threads = threads;
      const auto parsed = parse_ideal(ideal);
      const auto count = opts.method == H0Method::takayama ? h0_length_takayama(parsed, opts) : h0_length(parsed, opts);
      return Outcome{0, to_json(count), std::nullopt};
    };
  });

  // newton
  auto* newton = app.add_subcommand("newton", "Newton polyhedron, analytic spread and out-region volume");
  std::string np_ideal;
  bool np_facets = false, np_vertices = false, np_spread = false, np_epsilon = false;
  newton->add_option("--ideal", np_ideal, "Ideal")->required();
  newton->add_flag("--facets", np_facets, "Facets only");
  newton->add_flag("--vertices", np_vertices, "Vertices only");
  newton->add_flag("--spread", np_spread, "Analytic spread only");
  newton->add_flag("--epsilon", np_epsilon, "Out-region volume and epsilon only");
  newton->callback([&] {
    job = [ideal = np_ideal, facets = np_facets, vertices = np_vertices, spread = np_spread, epsilon = np_epsilon] {
      const auto parsed = parse_ideal(ideal);
      const bool all = !(facets || vertices || spread || epsilon);
      Json report = Json::object();
      if (all || facets || vertices) {
        const auto np = newton_polyhedron(parsed);
        const Json full = to_json(np);
        if (all) {
          report["polyhedron"] = full;
        } else {
          if (facets) report["facets"] = full["facets"];
          if (vertices) report["vertices"] = full["vertices"];
        }
      }
      if (all || spread) report["analytic_spread"] = analytic_spread(parsed);
      if (all || epsilon) report["out_region"] = to_json(out_region(parsed));
      return Outcome{0, std::move(report), std::nullopt};
    };
  });

  // epsilon
  auto* eps = app.add_subcommand("epsilon", "Epsilon multiplicity by exact fit, by volume, or both");
  std::string eps_ideal, eps_method = "both";
  std::uint64_t eps_max_n = 12;
  eps->add_option("--ideal", eps_ideal, "Ideal")->required();
  eps->add_option("--method", eps_method, "fit|volume|both")->check(CLI::IsMember({"fit", "volume", "both"}));
  eps->add_option("--max-n", eps_max_n, "Largest power used by the fit")->check(CLI::Range(2, 200));
  eps->callback([&] {
    job = [ideal = eps_ideal, method = eps_method, max_n = eps_max_n, threads = g.threads] {
      const auto parsed = parse_ideal(ideal);
      if (method == "volume") {
        const auto r = out_region(parsed);
        return Outcome{0, Json{{"epsilon", to_json(r.epsilon)}, {"out_region", to_json(r)}}, std::nullopt};
      }
      const auto fit = fit_epsilon(parsed, max_n, threads);
      if (method == "fit") {
        Json report{{"epsilon", to_json(fit.report.epsilon)},
                    {"fit", to_json(fit.fit)},
                    {"report", to_json(fit.report)},
                    {"stable", fit.stable ? Json(*fit.stable) : Json(nullptr)}};
        return Outcome{0, std::move(report), std::nullopt};
      }
      const auto volume = out_region(parsed).epsilon;
      if (fit.report.epsilon == volume) {
        return Outcome{0, Json{{"epsilon", to_json(volume)}, {"methods_agree", true}}, std::nullopt};
      }
      return Outcome{3,
                     Json{{"epsilon", to_json(volume)}, {"epsilon_fit", to_json(fit.report.epsilon)},
                          {"methods_agree", false}},
                     std::nullopt};
    };
  });

  // mixed
  auto* mixed = app.add_subcommand("mixed", "Mixed epsilon multiplicities from a product grid");
  std::string mx_ideals, mx_grid = "1:8";
  std::size_t mx_degree = 0, mx_max_period = 6, mx_holdout = 2;
  std::optional<std::uint64_t> mx_start;
  mixed->add_option("--ideals", mx_ideals, "Ideals separated by ';'")->required();
  mixed->add_option("--grid", mx_grid, "Index range a:b for every coordinate");
  mixed->add_option("--degree", mx_degree, "Degree bound, default d");
  mixed->add_option("--max-period", mx_max_period, "Largest period tried")->check(CLI::Range(1, 64));
  mixed->add_option("--holdout", mx_holdout, "Points per residue class held out");
  mixed->add_option("--start", mx_start, "First index of the fit window");
  mixed->callback([&] {
    job = [ideals = mx_ideals, grid = mx_grid, degree = mx_degree, max_period = mx_max_period, holdout = mx_holdout,
           start = mx_start, threads = g.threads] {
      std::vector<MonomialIdeal> parsed;
      for (const auto& part : split(ideals, ';')) {
        parsed.push_back(parse_ideal(part, parsed.empty() ? std::nullopt : std::optional(parsed.front().dim())));
      }
      const auto spec = FamilySpec::product_grid(parsed);
      const auto table = length_table(spec, IndexRange::parse(grid, parsed.size()), TableOptions{threads});
      FitOptions opts;
      opts.degree = degree == 0 ? spec.dim() : degree;
      opts.max_period = max_period;
      opts.holdout = holdout;
      opts.start = start;
      try {
        const auto fit = fit_quasi_polynomial(table, opts);
        return Outcome{0, Json{{"fit", to_json(fit)}, {"epsilons", to_json(extract_epsilons(fit, spec.dim()))}},
                       std::nullopt};
      } catch (const NoFitError& e) {
        return Outcome{3, no_fit_json(e), std::nullopt};
      }
    };
  });

  // family
  auto* family = app.add_subcommand("family", "Graded families of monomial ideals");
  family->require_subcommand(1);
  std::string fam_spec, fam_range, fam_mode = "graded", fam_normalizer;
  std::optional<std::uint64_t> fam_n;
  std::uint64_t fam_bound = 10;
  std::optional<std::size_t> fam_degree;
  std::vector<std::string> fam_csv;

  auto* fam_eval = family->add_subcommand("eval", "Generators of I_n");
  fam_eval->add_option("--spec", fam_spec, "Family spec file or inline JSON")->required();
  fam_eval->add_option("--n", fam_n, "Index");
  fam_eval->add_option("--range", fam_range, "Index range a:b");
  fam_eval->callback([&] {
    job = [spec_arg = fam_spec, n = fam_n, range = fam_range] {
      const auto spec = load_spec(spec_arg);
      Json values = Json::array();
      for (const auto& idx : indices_for(spec, n, range)) {
        const auto ideal = eval_family(spec, idx);
        values.push_back(Json{{"index", idx}, {"ideal", to_json(ideal)}, {"text", to_string(ideal)}});
      }
      return Outcome{0, Json{{"spec_hash", spec.hash()}, {"values", std::move(values)}}, std::nullopt};
    };
  });

  auto* fam_check = family->add_subcommand("check", "Graded family or filtration axioms up to N");
  fam_check->add_option("--spec", fam_spec, "Family spec file or inline JSON")->required();
  fam_check->add_option("--N", fam_bound, "Bound N")->check(CLI::Range(2, 100000));
  fam_check->add_option("--mode", fam_mode, "graded|filtration")->check(CLI::IsMember({"graded", "filtration"}));
  fam_check->callback([&] {
    job = [spec_arg = fam_spec, bound = fam_bound, mode = fam_mode] {
      const auto spec = load_spec(spec_arg);
      return Outcome{0, to_json(check_structure(spec, bound, parse_structure_mode(mode))), std::nullopt};
    };
  });

  auto* fam_growth = family->add_subcommand("growth", "Socle degree and truncation constants");
  fam_growth->add_option("--spec", fam_spec, "Family spec file or inline JSON")->required();
  fam_growth->add_option("--n", fam_n, "Index");
  fam_growth->add_option("--range", fam_range, "Index range a:b");
  fam_growth->callback([&] {
    job = [spec_arg = fam_spec, n = fam_n, range = fam_range] {
      const auto spec = load_spec(spec_arg);
      Json values = Json::array();
      for (const auto& idx : indices_for(spec, n, range)) values.push_back(to_json(growth_constants(spec, idx.front())));
      return Outcome{0, Json{{"spec_hash", spec.hash()}, {"values", std::move(values)}}, std::nullopt};
    };
  });

  auto* fam_run = family->add_subcommand("run", "Length table with convergence diagnostics");
  fam_run->add_option("--spec", fam_spec, "Family spec file or inline JSON")->required();
  fam_run->add_option("--range", fam_range, "Index range a:b")->required();
  fam_run->add_option("--normalizer", fam_normalizer, "n^p or n^p*ln(n), default n^d");
  fam_run->add_option("--degree", fam_degree, "Also fit a quasi-polynomial of this degree");
  fam_run->add_option("--csv", fam_csv, "Write index,length,normalized value rows (to stdout without a path)")
      ->expected(0, 1);
  fam_run->callback([&] {
    const bool csv_requested = fam_run->count("--csv") > 0;
    job = [spec_arg = fam_spec, range = fam_range, normalizer = fam_normalizer, degree = fam_degree,
           csv_path = fam_csv.empty() ? std::string() : fam_csv.front(), csv_requested, threads = g.threads] {
      const auto spec = load_spec(spec_arg);
      const auto table = length_table(spec, IndexRange::parse(range, spec.arity()), TableOptions{threads});
      Json report{{"table", to_json(table)}};
      const Normalizer norm =
          normalizer.empty() ? Normalizer{Rational(spec.dim()), false} : Normalizer::parse(normalizer);
      std::string csv = "index,length,normalized_value\n";
      for (const auto& [n, len] : table.entries) {
        csv += index_text(n) + "," + to_string(len) + ",";
        if (spec.arity() == 1) {
          const double scale = norm(static_cast<double>(n[0]));
          if (scale != 0) {
            std::ostringstream v;
            v.precision(17);
            v << to_double(Rational(len)) / scale;
            csv += v.str();
          }
        }
        csv += "\n";
      }
      if (spec.arity() == 1) report["convergence"] = to_json(convergence_report(table, norm));
      int code = 0;
      if (degree) {
        FitOptions opts;
        opts.degree = *degree;
        try {
          const auto fit = fit_quasi_polynomial(table, opts);
          report["fit"] = to_json(fit);
          if (*degree >= spec.dim()) report["epsilons"] = to_json(extract_epsilons(fit, spec.dim()));
        } catch (const NoFitError& e) {
          report["fit"] = no_fit_json(e);
          code = 3;
        }
      }
      std::optional<std::string> csv_out;
      if (csv_requested && csv_path.empty()) {
        csv_out = csv;
      } else if (csv_requested) {
        std::ofstream f(csv_path);
        if (!f) throw PreconditionError("cannot write '" + csv_path + "'");
        f << csv;
      }
      return Outcome{code, std::move(report), csv_out};
    };
  });

  // delta
  auto* delta = app.add_subcommand("delta", "Degree complex and graded local cohomology at a point");
  std::string dl_ideal, dl_point;
  delta->add_option("--ideal", dl_ideal, "Ideal")->required();
  delta->add_option("--a", dl_point, "Exponent vector, comma separated")->required();
  delta->callback([&] {
    job = [ideal = dl_ideal, point = dl_point] {
      const auto parsed = parse_ideal(ideal);
      std::vector<Natural> exps;
      for (const auto& part : split(point, ',')) exps.push_back(parse_natural(part));
      const Monomial a(std::move(exps));
      if (a.dim() != parsed.dim()) throw DimensionMismatch("point and ideal dimensions differ");
      const auto k = delta_complex(parsed, a);
      Json betti = Json::array();
      Json local = Json::array();
      for (int q = -1; q + 1 < static_cast<int>(parsed.dim()); ++q) betti.push_back(reduced_betti(k, q));
      for (int t = 0; t <= static_cast<int>(parsed.dim()); ++t) {
        local.push_back(local_cohomology_graded_dim(parsed, a, t));
      }
      return Outcome{0,
                     Json{{"complex", to_json(k)}, {"text", to_string(k)}, {"reduced_betti", std::move(betti)},
                          {"local_cohomology", std::move(local)}},
                     std::nullopt};
    };
  });

  // repro
  auto* repro = app.add_subcommand("repro", "Reproduce a worked example and report a verdict");
  std::string rp_case;
  std::vector<std::string> case_names = repro_cases();
  case_names.push_back("all");
  repro->add_option("--case", rp_case, "Case name or all")->required()->check(CLI::IsMember(case_names));
  repro->callback([&] {
    job = [name = rp_case, threads = g.threads, seed = g.seed] {
      ReproOptions opts{threads, seed};
      if (name != "all") {
        auto r = run_repro(name, opts);
        return Outcome{r.pass ? 0 : 3, std::move(r.report), std::nullopt};
      }
      Json cases = Json::array();
      bool pass = true;
      for (const auto& c : repro_cases()) {
        auto r = run_repro(c, opts);
        pass = pass && r.pass;
        cases.push_back(std::move(r.report));
      }
      return Outcome{pass ? 0 : 3, Json{{"cases", std::move(cases)}, {"pass", pass}}, std::nullopt};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }
  if (g.json && g.csv) {
    err << "error: --json and --csv are exclusive\n";
    return 1;
  }
  if (!job) {
    err << app.help();
    return 1;
  }

  auto guarded = [job]() -> Outcome {
    try {
      return job();
    } catch (const ParseError& e) {
      return Outcome{1, Json{{"error", e.what()}}, std::nullopt};
    } catch (const NoFitError& e) {
      return Outcome{3, no_fit_json(e), std::nullopt};
    } catch (const InsufficientDataError& e) {
      return Outcome{3, Json{{"error", e.what()}}, std::nullopt};
    } catch (const TheoremViolation& e) {
      return Outcome{3, Json{{"error", e.what()}}, std::nullopt};
    } catch (const Error& e) {
      return Outcome{2, Json{{"error", e.what()}}, std::nullopt};
    } catch (const std::exception& e) {
      return Outcome{2, Json{{"error", e.what()}}, std::nullopt};
    }
  };

  Outcome result;
  if (g.timeout > 0) {
    auto promise = std::make_shared<std::promise<Outcome>>();
    auto future = promise->get_future();
    std::thread([promise, guarded] { promise->set_value(guarded()); }).detach();
    if (future.wait_for(std::chrono::duration<double>(g.timeout)) != std::future_status::ready) {
      err << "error: timed out after " << g.timeout << " s\n";
      return 3;
    }
    result = future.get();
  } else {
    result = guarded();
  }

  if (result.report.contains("error") && result.report.size() <= 2 && result.code != 0) {
    err << "error: " << result.report["error"].get<std::string>() << "\n";
    if (result.code == 1) {
      err << app.help();
      return 1;
    }
    if (!result.report.contains("attempts")) return result.code;
  }
  if (g.csv) {
    out << (result.csv ? *result.csv : generic_csv(result.report));
  } else if (result.csv) {
    out << *result.csv;
  } else {
    out << result.report.dump() << "\n";
  }
  return result.code;
}

}  // namespace epsmult

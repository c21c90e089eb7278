// Command-line front end. JSON on stdout by default, plain text with --human.
// Exit codes: 0 success (verify: accepted), 1 verify rejected or repro
// failure, 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dilates/acceptance.hpp"
#include "dilates/dilates.hpp"

using namespace dilates;
using Json = nlohmann::ordered_json;

namespace {

struct Usage : Error {
  using Error::Error;
};

std::vector<std::int64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Usage(std::string("malformed ") + what + " '" + text + "'");
    }
  }
  if (out.empty()) throw Usage(std::string("empty ") + what);
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text, const char* what) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw Usage(std::string(what) + " must look like lo..hi");
  auto lo = parse_list(text.substr(0, dots), what);
  auto hi = parse_list(text.substr(dots + 2), what);
  if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw Usage(std::string("bad ") + what + " '" + text + "'");
  return {lo[0], hi[0]};
}

ModeSpec parse_mode(const std::string& mode, std::int64_t modulus) {
  if (mode == "integer") return ModeSpec::integer();
  if (mode == "modular") {
    if (modulus < 1) throw Usage("--mode modular needs --modulus");
    return ModeSpec::modular(modulus);
  }
  throw Usage("mode must be 'integer' or 'modular'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Usage("cannot write " + path);
  out << text;
}

std::string braces(std::span<const std::int64_t> xs) { return "{" + join(xs, ",") + "}"; }

void emit(bool human, const Json& j, const std::string& text) {
  if (human) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density bounds for sets avoiding a value of a sum of dilates"};
  app.require_subcommand(1);
  app.fallthrough();
  bool human = false;
  app.add_flag("--human", human, "Plain-text output instead of JSON");

  // bound
  auto* bound = app.add_subcommand("bound", "Build, solve, prune and certify the atomic-density program");
  std::string b_witness, b_coeffs = "1,1,-2", b_mode = "integer", b_emit, b_dump, b_atoms = "dense";
  std::int64_t b_d = 6, b_modulus = 0, b_objective = 0;
  bool b_has_objective = false, b_no_prune = false;
  std::uint64_t b_seed = 1;
  int b_restarts = 50, b_threads = 1;
  bound->add_option("--witness", b_witness, "Witness elements, comma separated")->required();
  bound->add_option("--d", b_d, "Excluded value")->capture_default_str();
  bound->add_option("--coeffs", b_coeffs, "Dilation coefficients")->capture_default_str();
  bound->add_option("--mode", b_mode, "integer | modular")->capture_default_str();
  bound->add_option("--modulus", b_modulus, "Modulus for modular mode");
  bound->add_option("--objective", b_objective, "Objective element (default: smallest witness element)")
      ->each([&](const std::string&) { b_has_objective = true; });
  bound->add_option("--prune-seed", b_seed, "Seed for row pruning")->capture_default_str();
  bound->add_option("--restarts", b_restarts, "Pruning restarts")->capture_default_str();
  bound->add_flag("--no-prune", b_no_prune, "Keep every congruence row");
  bound->add_option("--atoms", b_atoms, "Atom enumeration: dense | dfs")->capture_default_str();
  bound->add_option("--emit-cert", b_emit, "Write the certificate to this path");
  bound->add_option("--dump-lp", b_dump, "Write PREFIX.json and PREFIX.txt describing the full program");
  bound->add_option("--threads", b_threads, "Worker threads for pruning")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Check a certificate file independently");
  std::string v_path;
  bool v_slack = false;
  verify->add_option("cert", v_path, "Certificate path")->required();
  verify->add_flag("--slack", v_slack, "Include the full slack vector");

  // brute
  auto* brute = app.add_subcommand("brute", "Largest A in Z_p with d missing from the dilate sumset");
  std::int64_t br_p = 0, br_d = 1;
  std::string br_coeffs = "1,1,-2";
  int br_threads = 1;
  brute->add_option("--p", br_p, "Prime modulus (at most 64)")->required();
  brute->add_option("--coeffs", br_coeffs, "Dilation coefficients")->capture_default_str();
  brute->add_option("--d", br_d, "Excluded residue")->capture_default_str();
  brute->add_option("--threads", br_threads, "Worker threads")->capture_default_str();

  // delta
  auto* delta = app.add_subcommand("delta", "Largest d-avoiding subset of an integer interval");
  std::string de_interval, de_coeffs = "1,1,-2";
  std::int64_t de_d = 6;
  std::uint64_t de_budget = 0;
  int de_threads = 1;
  std::size_t de_all = 0;
  delta->add_option("--interval", de_interval, "lo..hi")->required();
  delta->add_option("--d", de_d, "Excluded value")->capture_default_str();
  delta->add_option("--coeffs", de_coeffs, "Dilation coefficients")->capture_default_str();
  delta->add_option("--node-budget", de_budget, "Stop after this many nodes (0: unlimited)")->capture_default_str();
  delta->add_option("--threads", de_threads, "Worker threads")->capture_default_str();
  delta->add_option("--all", de_all, "Also list up to N optimal witnesses");

  // count
  auto* count = app.add_subcommand("count", "Count k-subsets of {0..m-1} avoiding given differences");
  int c_m = 14, c_k = 5;
  std::string c_diffs = "1,2";
  count->add_option("--m", c_m, "Interval length")->capture_default_str();
  count->add_option("--k", c_k, "Subset size")->capture_default_str();
  count->add_option("--diffs", c_diffs, "Forbidden differences")->capture_default_str();

  // identities
  auto* ids = app.add_subcommand("identities", "Shift identities sum l_i (a + s_i) = target");
  std::string i_coeffs = "10,12,15,20,30,-87", i_gaps = "1..6";
  std::int64_t i_target = 60;
  ids->add_option("--coeffs", i_coeffs, "Coefficients summing to zero")->capture_default_str();
  ids->add_option("--target", i_target, "Target value")->capture_default_str();
  ids->add_option("--gaps", i_gaps, "Gap range lo..hi")->capture_default_str();

  // fourier
  auto* fourier = app.add_subcommand("fourier", "Exploratory Fourier-augmented bound (not a proof)");
  std::string f_witness = "0,2,3,4,7,8,9,10", f_coeffs = "1,1,-2", f_profile;
  std::int64_t f_d = 6, f_p = 43;
  double f_width = 1e-7;
  fourier->add_option("--witness", f_witness, "Witness elements")->capture_default_str();
  fourier->add_option("--d", f_d, "Excluded value")->capture_default_str();
  fourier->add_option("--p", f_p, "Odd prime modulus")->capture_default_str();
  fourier->add_option("--coeffs", f_coeffs, "Dilation coefficients")->capture_default_str();
  fourier->add_option("--width", f_width, "Bisection stopping width")->capture_default_str();
  fourier->add_option("--profile", f_profile, "Instead: cosine profile of this set A mod p");

  // search
  auto* search = app.add_subcommand("search", "Seeded local search for witness sets");
  WitnessSearchOptions s_opts;
  std::string s_coeffs = "1,1,-2", s_mode = "integer";
  std::int64_t s_modulus = 0;
  search->add_option("--d", s_opts.d, "Excluded value")->capture_default_str();
  search->add_option("--coeffs", s_coeffs, "Dilation coefficients")->capture_default_str();
  search->add_option("--mode", s_mode, "integer | modular")->capture_default_str();
  search->add_option("--modulus", s_modulus, "Modulus for modular mode");
  search->add_option("--range", s_opts.range_limit, "Elements drawn from 0..range")->capture_default_str();
  search->add_option("--n-max", s_opts.n_max, "Largest witness size")->capture_default_str();
  search->add_option("--seed", s_opts.seed, "Random seed")->capture_default_str();
  search->add_option("--budget", s_opts.budget, "Maximum LP solves")->capture_default_str();

  // plot
  auto* plot = app.add_subcommand("plot", "Circular SVG diagram of a witness set in Z_n");
  std::int64_t p_n = 0;
  std::string p_elements, p_out, p_title;
  plot->add_option("--modulus", p_n, "Modulus n")->required();
  plot->add_option("--elements", p_elements, "Witness elements")->required();
  plot->add_option("--title", p_title, "Title text");
  plot->add_option("--out", p_out, "Output path (default: stdout)");

  // repro
  auto* repro = app.add_subcommand("repro", "Run every reproduction check and print a pass/fail table");
  std::string r_only;
  repro->add_option("--only", r_only, "Run a single check by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*bound) {
      WitnessSet x(parse_list(b_witness, "witness"));
      DilateEquation eq(parse_list(b_coeffs, "coefficients"));
      auto mode = parse_mode(b_mode, b_modulus);
      LpProblem prob{x, eq, b_d, mode, b_has_objective ? b_objective : x[0]};
      BoundOptions opts;
      opts.prune = !b_no_prune;
      opts.prune_opts.seed = b_seed;
      opts.prune_opts.restarts = b_restarts;
      opts.prune_opts.threads = b_threads;
      if (b_atoms == "dfs") opts.atoms = AtomEnumeration::Dfs;
      else if (b_atoms != "dense") throw Usage("--atoms must be dense or dfs");
      if (!b_dump.empty()) {
        auto lp = build_lp(prob, opts.atoms);
        write_file(b_dump + ".json", lp_metadata_json(prob, lp).dump(2) + "\n");
        write_file(b_dump + ".txt", lp_matrix_text(x, lp));
      }
      auto out = run_bound_pipeline(prob, opts);
      if (!b_emit.empty()) write_file(b_emit, serialize(out.certificate));
      Json j;
      j["bound"] = out.value.str();
      j["atoms"] = out.atoms;
      j["congruences"] = out.full_rows;
      j["kept_congruences"] = out.kept_rows.size();
      j["integer_dual"] = out.integerized.all_integer && !out.used_solver_dual;
      j["certificate"] = out.report.accepted ? "accepted" : "rejected";
      j["applicability"] = out.report.applicability;
      if (!b_emit.empty()) j["certificate_path"] = b_emit;
      std::ostringstream h;
      h << out.value << "\n"
        << out.atoms << " atoms, " << out.full_rows << " congruences, " << out.kept_rows.size() << " kept\n"
        << "certificate " << (out.report.accepted ? "accepted" : "rejected") << "; " << out.report.applicability;
      emit(human, j, h.str());
      return 0;
    }

    if (*verify) {
      Certificate cert;
      try {
        cert = parse_certificate(read_file(v_path));
      } catch (const Error& e) {
        Json j{{"verdict", "malformed"}, {"detail", e.what()}};
        emit(human, j, std::string("malformed: ") + e.what());
        return 2;
      }
      auto rep = verify_certificate(cert);
      Json j;
      j["verdict"] = rep.accepted ? "accepted" : "rejected";
      j["atoms"] = rep.atom_count;
      j["min_slack"] = rep.min_slack ? rep.min_slack->str() : "";
      j["bound"] = cert.bound().str();
      j["applicability"] = rep.applicability;
      if (!rep.excluded_moduli.empty()) j["excluded_moduli"] = rep.excluded_moduli;
      j["detail"] = rep.detail;
      if (v_slack) {
        auto& s = j["slack"] = Json::array();
        for (const auto& v : rep.slack) s.push_back(v.str());
      }
      std::ostringstream h;
      h << (rep.accepted ? "accepted" : "rejected") << ": " << rep.atom_count << " atoms, min slack "
        << (rep.min_slack ? rep.min_slack->str() : "n/a") << "\n"
        << rep.detail;
      if (rep.accepted) h << "\n" << rep.applicability;
      emit(human, j, h.str());
      return rep.accepted ? 0 : 1;
    }

    if (*brute) {
      DilateEquation eq(parse_list(br_coeffs, "coefficients"));
      SearchOptions opts;
      opts.canonical = true;
      opts.threads = br_threads;
      auto r = max_excluding_set(br_p, eq, br_d, opts);
      auto construction = interval_construction(br_p);
      const bool construction_optimal =
          construction.size() == r.optimum && !dilate_sumset(eq, construction).is_full();
      Json j;
      j["p"] = br_p;
      j["M"] = r.optimum;
      j["proved"] = r.proved;
      j["construction"] = construction.members();
      j["construction_optimal"] = construction_optimal;
      j["witness"] = construction_optimal ? construction.members() : r.witness;
      j["d"] = floor_mod(br_d, br_p);
      j["d_witness"] = r.witness;
      j["nodes"] = r.nodes;
      std::ostringstream h;
      h << "M=" << r.optimum << ", witness " << braces(construction_optimal ? construction.members() : r.witness)
        << "\nsmallest set missing " << floor_mod(br_d, br_p) << ": " << braces(r.witness)
        << (r.proved ? "" : " (search budget hit; not proved)");
      emit(human, j, h.str());
      return 0;
    }

    if (*delta) {
      auto [lo, hi] = parse_range(de_interval, "interval");
      auto inst = AvoidanceInstance::interval(lo, hi, DilateEquation(parse_list(de_coeffs, "coefficients")), de_d);
      SearchOptions opts;
      opts.node_budget = de_budget;
      opts.threads = de_threads;
      opts.canonical = de_threads == 1;
      auto r = max_avoiding_subset(inst, opts);
      Json j;
      j["delta"] = r.optimum;
      j["proved"] = r.proved;
      j["interval_size"] = hi - lo + 1;
      j["density_bound"] = density_bound_from_delta(r.optimum, hi - lo + 1).str();
      j["witness"] = r.witness;
      j["nodes"] = r.nodes;
      std::ostringstream h;
      h << r.optimum << (r.proved ? "" : " (lower bound; budget hit)") << "\nwitness " << braces(r.witness)
        << "\ndensity bound " << density_bound_from_delta(r.optimum, hi - lo + 1);
      if (de_all > 0 && r.proved) {
        auto all = all_optimal_witnesses(inst, r.optimum, de_all);
        j["optimal_witnesses"] = all;
        h << "\n" << all.size() << " optimal witnesses listed";
        for (const auto& w : all) h << "\n  " << braces(w);
      }
      emit(human, j, h.str());
      return 0;
    }

    if (*count) {
      std::vector<int> diffs;
      for (auto v : parse_list(c_diffs, "differences")) diffs.push_back(static_cast<int>(v));
      auto n = count_avoiding_subsets(c_m, c_k, diffs);
      Json j{{"m", c_m}, {"k", c_k}, {"count", n}};
      emit(human, j, std::to_string(n));
      return 0;
    }

    if (*ids) {
      DilateEquation eq(parse_list(i_coeffs, "coefficients"));
      auto [lo, hi] = parse_range(i_gaps, "gaps");
      if (lo < 1) throw Usage("gaps must be positive");
      Json j = Json::array();
      std::ostringstream h;
      for (auto g = lo; g <= hi; ++g) {
        auto id = find_shift_identity(eq, g, i_target);
        Json e{{"gap", g}};
        if (id) {
          e["shifts"] = id->shifts;
          e["identity"] = id->str(eq);
          e["verified"] = id->verify(eq);
          h << "gap " << g << ": " << id->str(eq) << (id->verify(eq) ? "" : "  (FAILED CHECK)") << "\n";
        } else {
          e["identity"] = nullptr;
          h << "gap " << g << ": none\n";
        }
        j.push_back(std::move(e));
      }
      emit(human, j, h.str());
      return 0;
    }

    if (*fourier) {
      if (!f_profile.empty()) {
        auto a = residue_set_from_list(f_p, parse_list(f_profile, "set"));
        auto prof = positive_definite_profile(a);
        Json j;
        j["p"] = f_p;
        j["kappa"] = prof.kappa;
        j["min_kappa"] = prof.min_kappa;
        j["reconstruction_error"] = prof.reconstruction_error;
        j["positive_definite"] = prof.ok;
        std::ostringstream h;
        h << "min kappa " << prof.min_kappa << ", reconstruction error " << prof.reconstruction_error
          << (prof.ok ? ", positive definite" : ", NOT positive definite");
        emit(human, j, h.str());
        return 0;
      }
      FourierOptions opts;
      opts.width = f_width;
      auto rep = fourier_bound(WitnessSet(parse_list(f_witness, "witness")),
                               DilateEquation(parse_list(f_coeffs, "coefficients")), f_d, f_p, opts);
      std::ostringstream h;
      h << "base " << rep.base_bound << " (" << rep.base_bound.to_double() << "), augmented " << rep.augmented_bound
        << ", status " << rep.status << "; floating point, not a proof";
      emit(human, fourier_json(rep), h.str());
      return 0;
    }

    if (*search) {
      s_opts.eq = DilateEquation(parse_list(s_coeffs, "coefficients"));
      s_opts.mode = parse_mode(s_mode, s_modulus);
      auto r = search_witness(s_opts);
      Json j;
      j["witness"] = r.witness;
      j["bound"] = r.bound.str();
      j["evaluations"] = r.evaluations;
      j["budget_exhausted"] = r.budget_exhausted;
      std::ostringstream h;
      h << "best witness " << braces(r.witness) << " bound " << r.bound << " after " << r.evaluations << " solves";
      emit(human, j, h.str());
      return 0;
    }

    if (*plot) {
      auto svg = svg_witness_diagram(p_n, parse_list(p_elements, "elements"), p_title);
      if (p_out.empty()) {
        std::cout << svg;
      } else {
        write_file(p_out, svg);
        emit(human, Json{{"written", p_out}}, "wrote " + p_out);
      }
      return 0;
    }

    if (*repro) {
      std::vector<acceptance::CriterionResult> results;
      if (r_only.empty()) {
        results = acceptance::run_all();
      } else {
        for (auto& r : acceptance::run_all_ids(r_only)) results.push_back(std::move(r));
        if (results.empty()) throw Usage("unknown check id '" + r_only + "'");
      }
      bool all = true;
      Json j = Json::array();
      std::ostringstream h;
      for (const auto& r : results) {
        all = all && r.passed;
        j.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"seconds", r.seconds},
                     {"limit_seconds", r.limit_seconds},
                     {"detail", r.detail}});
        char line[64];
        std::snprintf(line, sizeof line, "%-4s %s %8.2fs  ", r.id.c_str(), r.passed ? "PASS" : "FAIL", r.seconds);
        h << line << r.name << "\n     " << r.detail << "\n";
      }
      emit(human, j, h.str());
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

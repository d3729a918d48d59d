// Command-line front end: every analysis is a batch subcommand that prints a
// single JSON document on stdout. Diagnostics go to stderr. Exit codes:
// 0 success, 1 domain error, 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "projshape/projshape.hpp"

namespace {

using nlohmann::json;
using namespace projshape;

double global_tol() {
  if (const char* env = std::getenv("PROJSHAPE_TOL")) {
    try {
      const double tol = std::stod(env);
      if (tol > 0.0 && tol < 1.0) return tol;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid PROJSHAPE_TOL='" << env << "'\n";
  }
  return kDefaultRankTol;
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json split_witness_json(const SplitWitness& w) {
  return json{{"indices", w.indices}, {"dim", w.dim}};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw Error(errc::parse_error, "empty entry in integer list");
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(tok, &used);
    } catch (...) {
      throw Error(errc::parse_error, "cannot parse integer '" + tok + "'");
    }
    if (used != tok.size()) throw Error(errc::parse_error, "cannot parse integer '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

json analyze(const Configuration& c, const std::optional<std::vector<int>>& sn, double tol) {
  json out;
  out["schema"] = "projshape/analyze/1";
  out["input"] = json{{"d", c.d()},
                      {"k", c.k()},
                      {"digest", fnv1a_digest(configuration_to_json(c).dump())}};
  out["rank"] = configuration_rank(c, tol);
  const auto report = constraint_flats(c, tol);
  out["flats"] = constraint_report_to_json(report)["flats"];
  out["general_position"] = report.trivial_only();

  const auto witness = is_splittable(c, tol);
  out["splittable"] = witness.has_value();
  out["split_witness"] = witness ? split_witness_json(*witness) : json(nullptr);
  out["free"] = !witness.has_value();
  out["tyler_regular"] = is_tyler_regular(c, tol);
  const auto standardizable = is_standardizable(c, tol);
  out["standardizable"] = to_string(standardizable.kind);
  out["balanced_split_witness"] =
      standardizable.witness ? split_witness_json(*standardizable.witness) : json(nullptr);

  const auto frame = find_frame(c, tol);
  out["frame"] = frame ? json(*frame) : json(nullptr);
  const auto pf = find_pseudo_frame(c, tol);
  out["pseudo_frame"] = pf ? pseudo_frame_to_json(*pf) : json(nullptr);
  out["chart_dimension"] = pf ? json(c.d() * (c.k() - c.d() - 2)) : json(nullptr);

  if (sn) {
    SubspaceNumbers numbers(*sn, c.d(), c.k());
    out["subspace_numbers"] = json{{"n", numbers.values()},
                                   {"satisfied", satisfies_subspace_numbers(c, numbers, tol)},
                                   {"hausdorff", is_hausdorff_numbers(numbers)}};
  }
  return out;
}

json standardize_report(const Configuration& c, double tol, int max_iter, double rank_tol) {
  const auto st = tyler_standardize(c, tol, max_iter);
  json out = standardization_to_json(st);
  out["schema"] = "projshape/standardize/1";
  out["classification"] = to_string(is_standardizable(c, rank_tol).kind);
  return out;
}

json distance_report(const Configuration& a, const Configuration& b, double tol, int max_iter,
                     double rank_tol) {
  const auto sa = tyler_standardize(a, tol, max_iter);
  const auto sb = tyler_standardize(b, tol, max_iter);
  const auto result = shape_distance_signed(sa, sb);
  const auto ca = is_standardizable(a, rank_tol);
  const auto cb = is_standardizable(b, rank_tol);
  json out;
  out["schema"] = "projshape/distance/1";
  out["distance"] = result.distance;
  out["signs"] = result.signs;
  out["a"] = json{{"residual", sa.residual},
                  {"iterations", sa.iterations},
                  {"classification", to_string(ca.kind)}};
  out["b"] = json{{"residual", sb.residual},
                  {"iterations", sb.iterations},
                  {"classification", to_string(cb.kind)}};
  // The sign action is only free on Tyler regular shapes; distances touching
  // balanced splittable inputs fall outside the proven metric regime.
  out["metric_regime"] = ca.kind == Standardizability::tyler_regular &&
                         cb.kind == Standardizability::tyler_regular;
  return out;
}

json tyler_numbers_report(int d, int k) {
  const auto t = tyler_numbers(d, k);
  return json{{"schema", "projshape/tyler-numbers/1"},
              {"d", d},
              {"k", k},
              {"t", t.values()},
              {"hausdorff", is_hausdorff_numbers(t)},
              {"maximal", is_maximal_numbers(t)},
              {"gcd", std::gcd(k, d + 1)}};
}

json check_sn_report(int d, int k, const std::vector<int>& values) {
  const SubspaceNumbers n(values, d, k);
  json out;
  out["schema"] = "projshape/check-sn/1";
  out["d"] = d;
  out["k"] = k;
  out["n"] = n.values();
  const auto violations = hausdorff_violations(n);
  out["hausdorff"] = violations.empty();
  if (violations.empty()) {
    out["maximal"] = is_maximal_numbers(n);
  } else {
    out["violating_j"] = violations.back();
    out["violations"] = violations;
  }
  return out;
}

json witness_report(int d, int k, double tol) {
  const auto pair = nonhausdorff_witness(d, k);
  const Configuration p = Configuration::from_matrix(pair.p);
  const Configuration q = Configuration::from_matrix(pair.q);
  json out = block_pair_to_json(pair);
  out["schema"] = "projshape/witness/1";
  out["free_p"] = is_free(p, tol);
  out["free_q"] = is_free(q, tol);
  out["shape_equal"] = shape_equal(p, q, 1e-8, tol);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projshape: computational analysis of projective shapes"};
  app.require_subcommand(1);
  const double tol = global_tol();

  std::string path, path_b;
  std::string constraint_text, sn_text;
  int arg_d = 1, arg_k = 4, terms = 100;
  std::uint64_t seed = 1;
  double std_tol = 1e-10;
  int max_iter = 10000;

  auto* cmd_analyze = app.add_subcommand("analyze", "Classify a configuration file");
  cmd_analyze->add_option("file", path, "configuration (.json or .csv)")->required();
  cmd_analyze->add_option("--sn", sn_text, "subspace numbers n1,...,nd to check against");

  auto* cmd_std = app.add_subcommand("standardize", "Tyler standardize a configuration");
  cmd_std->add_option("file", path)->required();
  cmd_std->add_option("--tol", std_tol, "residual tolerance");
  cmd_std->add_option("--max-iter", max_iter, "iteration cap");

  auto* cmd_dist = app.add_subcommand("distance", "Shape distance between two configurations");
  cmd_dist->add_option("fileA", path)->required();
  cmd_dist->add_option("fileB", path_b)->required();
  cmd_dist->add_option("--tol", std_tol, "standardization tolerance");
  cmd_dist->add_option("--max-iter", max_iter, "iteration cap");

  auto* cmd_tn = app.add_subcommand("tyler-numbers", "Tyler subspace numbers of (d, k)");
  cmd_tn->add_option("d", arg_d)->required();
  cmd_tn->add_option("k", arg_k)->required();

  auto* cmd_sn = app.add_subcommand("check-sn", "Hausdorff/maximality check for subspace numbers");
  cmd_sn->add_option("d", arg_d)->required();
  cmd_sn->add_option("k", arg_k)->required();
  cmd_sn->add_option("n", sn_text, "comma separated n1,...,nd")->required();

  auto* cmd_wit = app.add_subcommand("witness", "Canonical non-Hausdorff shape pair");
  cmd_wit->add_option("d", arg_d)->required();
  cmd_wit->add_option("k", arg_k)->required();

  auto* cmd_blur = app.add_subcommand("blur", "Blur sequence of a splittable configuration");
  cmd_blur->add_option("file", path)->required();
  cmd_blur->add_option("--terms", terms, "number of terms");

  auto* cmd_merge = app.add_subcommand("merge", "Merge sequence for the witness pair of (d, k)");
  cmd_merge->add_option("d", arg_d)->required();
  cmd_merge->add_option("k", arg_k)->required();
  cmd_merge->add_option("--terms", terms, "number of terms");

  auto* cmd_gen = app.add_subcommand("generate", "Seeded random configuration");
  cmd_gen->add_option("d", arg_d)->required();
  cmd_gen->add_option("k", arg_k)->required();
  cmd_gen->add_option("--seed", seed, "random seed");
  cmd_gen->add_option("--constraint", constraint_text, "planted constraint 'i1,i2,...:j'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json out;
    if (cmd_analyze->parsed()) {
      std::optional<std::vector<int>> sn;
      if (!sn_text.empty()) sn = parse_int_list(sn_text);
      out = analyze(load_configuration(path), sn, tol);
    } else if (cmd_std->parsed()) {
      out = standardize_report(load_configuration(path), std_tol, max_iter, tol);
    } else if (cmd_dist->parsed()) {
      out = distance_report(load_configuration(path), load_configuration(path_b), std_tol,
                            max_iter, tol);
    } else if (cmd_tn->parsed()) {
      out = tyler_numbers_report(arg_d, arg_k);
    } else if (cmd_sn->parsed()) {
      out = check_sn_report(arg_d, arg_k, parse_int_list(sn_text));
    } else if (cmd_wit->parsed()) {
      out = witness_report(arg_d, arg_k, tol);
    } else if (cmd_blur->parsed()) {
      const auto seq = blur_sequence(load_configuration(path), terms, tol);
      out = sequence_to_json(seq);
      out["schema"] = "projshape/blur/1";
    } else if (cmd_merge->parsed()) {
      const auto pair = nonhausdorff_witness(arg_d, arg_k);
      out = sequence_to_json(merge_sequence(pair, terms));
      out["pair"] = block_pair_to_json(pair);
      out["schema"] = "projshape/merge/1";
    } else if (cmd_gen->parsed()) {
      Configuration c = [&]() {
        if (constraint_text.empty()) return random_general_position(arg_d, arg_k, seed, tol);
        const auto colon = constraint_text.find(':');
        if (colon == std::string::npos)
          throw Error(errc::parse_error, "constraint must look like 'i1,i2,...:j'");
        const auto indices = parse_int_list(constraint_text.substr(0, colon));
        const int j = parse_int_list(constraint_text.substr(colon + 1)).at(0);
        return random_with_constraint(arg_d, arg_k, indices, j, seed, tol);
      }();
      out = configuration_to_json(c);
      out["schema"] = "projshape/configuration/1";
      out["seed"] = seed;
    }
    std::cout << out.dump(2) << std::endl;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    json err{{"schema", "projshape/error/1"}, {"error", e.what()}, {"code", to_string(e.code())}};
    std::cout << err.dump(2) << std::endl;
    return e.code() == errc::parse_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

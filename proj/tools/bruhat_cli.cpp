// bruhat: enumeration, coproduct evaluation, verification sweeps, tiling
// rendering and Steenrod squares from the command line.
//
// Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bruhat/io_json.hpp"
#include "bruhat/suites.hpp"
#include "bruhat/svg.hpp"

using namespace bruhat;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

json parse_json_arg(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(flag + " is not valid JSON: " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

// ---- enum

struct EnumArgs {
  int n = 2;
  int r = 1;
  bool count_only = false;
  std::string format = "json";
  std::size_t cap = kDefaultElementCap;
};

int run_enum(const EnumArgs& a) {
  const auto els = enumerate_bruhat(a.n, a.r, a.cap);
  if (a.count_only) {
    std::cout << els.size() << '\n';
    return kOk;
  }
  if (a.format == "table") {
    for (std::size_t j = 0; j < els.size(); ++j) {
      std::cout << j << '\t' << els[j].to_string() << '\n';
    }
    return kOk;
  }
  json list = json::array();
  for (const auto& u : els) list.push_back(io::to_json(u.members()));
  print({{"n", a.n}, {"r", a.r}, {"count", els.size()}, {"elements", list}});
  return kOk;
}

// ---- coproduct

struct CoproductArgs {
  int n = 2;
  int i = 1;
  std::string inversions = "[]";
  std::string face;
  std::string format = "json";
};

int run_coproduct(const CoproductArgs& a) {
  const auto members =
      io::family_from_json(parse_json_arg(a.inversions, "--inversions"));
  const ConsistentSet u = ConsistentSet::make(a.n, a.i + 1, members);
  const VertexSet face =
      a.face.empty() ? VertexSet::full(a.n)
                     : io::vertex_set_from_json(parse_json_arg(a.face, "--face"));
  const TensorChain value = delta_from_U(u, a.i)(face);
  if (a.format == "text") {
    std::cout << value.to_string() << '\n';
  } else {
    print({{"n", a.n},
           {"i", a.i},
           {"inversions", io::to_json(u.members())},
           {"face", io::to_json(face)},
           {"value", io::to_json(value)}});
  }
  return kOk;
}

// ---- verify

struct VerifyArgs {
  std::string suite;
  int n_max = -1;  // -1: the acceptance scale of the suite
  int i_max = -1;
};

CheckReport run_suite(const VerifyArgs& a, int& n_used, int& i_used) {
  auto pick = [](int given, int dflt) { return given < 0 ? dflt : given; };
  const std::string& s = a.suite;
  if (s == "homotopy") {
    n_used = pick(a.n_max, 6), i_used = pick(a.i_max, 3);
    return suites::homotopy(n_used, i_used);
  }
  if (s == "complement") {
    n_used = pick(a.n_max, 6), i_used = pick(a.i_max, 3);
    return suites::complement(n_used, i_used);
  }
  if (s == "steenrod") {
    n_used = pick(a.n_max, 7), i_used = pick(a.i_max, 4);
    return suites::steenrod(n_used, i_used);
  }
  if (s == "appendix") {
    n_used = pick(a.n_max, 8);
    return suites::appendix(n_used);
  }
  if (s == "chains") {
    n_used = pick(a.n_max, 4);
    return suites::chains(n_used);
  }
  if (s == "reoriented") {
    n_used = pick(a.n_max, 3);
    return suites::reoriented(n_used);
  }
  if (s == "covers") {
    n_used = pick(a.n_max, 4), i_used = pick(a.i_max, 2);
    return suites::covers(n_used, i_used);
  }
  if (s == "key") {
    n_used = pick(a.n_max, 6);
    return suites::key_decomposition(n_used);
  }
  if (s == "minimal") return suites::minimal();
  throw UsageError("unknown suite " + s);
}

int run_verify(const VerifyArgs& a) {
  int n_used = -1;
  int i_used = -1;
  const auto start = std::chrono::steady_clock::now();
  const CheckReport r = run_suite(a, n_used, i_used);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  json out{{"suite", a.suite}, {"passed", r.passed}, {"cases", r.cases}};
  if (n_used >= 0) out["n_max"] = n_used;
  if (i_used >= 0) out["i_max"] = i_used;
  if (!r.passed) out["first_failure"] = r.first_failure;
  print(out);
  // Timing goes to stderr so stdout stays byte-identical across runs.
  std::fprintf(stderr, "%s: %.2f s\n", a.suite.c_str(), secs);
  return r.passed ? kOk : kFailed;
}

// ---- render

struct RenderArgs {
  int n = 2;
  std::string inversions = "[]";
  std::string out;
  bool labels = false;
  bool terms = false;
};

int run_render(const RenderArgs& a) {
  const auto members =
      io::family_from_json(parse_json_arg(a.inversions, "--inversions"));
  const ConsistentSet u = ConsistentSet::make(a.n, 2, members);
  const std::string svg =
      render_svg(cubillage_of(u), RenderOptions{a.labels, a.terms, 40});
  if (a.out.empty() || a.out == "-") {
    std::cout << svg;
    return kOk;
  }
  std::ofstream file(a.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + a.out);
  file << svg;
  if (!file) throw UsageError("write to " + a.out + " failed");
  return kOk;
}

// ---- sq

struct SqArgs {
  std::string complex_path;
  int i = 0;
  int p = 1;
  std::string inversions = "[]";
  bool all_u = false;
  std::size_t cap = kDefaultElementCap;
};

// Rows index the target basis, columns the source basis.
json matrix_rows(const Mod2Matrix& columns, std::size_t target_dim) {
  json rows = json::array();
  for (std::size_t t = 0; t < target_dim; ++t) {
    json row = json::array();
    for (const auto& col : columns) row.push_back(col.at(t));
    rows.push_back(row);
  }
  return rows;
}

int run_sq(const SqArgs& a) {
  const SimplicialComplex sigma =
      io::complex_from_json(read_json_file(a.complex_path));
  if (a.i < 0 || a.p < 0) throw UsageError("--i and --p must be >= 0");
  const auto members =
      io::family_from_json(parse_json_arg(a.inversions, "--inversions"));
  const SigmaConsistentSet set = SigmaConsistentSet::make(sigma, a.i + 1, members);
  const std::size_t source = cohomology_mod2(sigma, a.p).dimension();
  const std::size_t target = cohomology_mod2(sigma, 2 * a.p - a.i).dimension();
  const Mod2Matrix m = steenrod_square_matrix(set, a.i, a.p);
  json out{{"i", a.i},
           {"p", a.p},
           {"source_dimension", source},
           {"target_degree", 2 * a.p - a.i},
           {"target_dimension", target},
           {"inversions", io::to_json(set.members())},
           {"matrix", matrix_rows(m, target)}};
  int code = kOk;
  if (a.all_u) {
    const SqInvarianceReport r = sq_invariance_check(sigma, a.i, a.p, a.cap);
    json inv{{"passed", r.check.passed},
             {"global_elements", r.global_elements},
             {"distinct_restrictions", r.distinct_restrictions}};
    if (!r.check.passed) inv["first_failure"] = r.check.first_failure;
    out["invariance"] = inv;
    if (!r.check.passed) code = kFailed;
  }
  print(out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher Bruhat orders and cup-i coproducts"};
  app.require_subcommand(1);

  EnumArgs ea;
  auto* en = app.add_subcommand("enum", "List B([0,n], r)");
  en->add_option("--n", ea.n, "Largest vertex")->required()->check(CLI::Range(0, 20));
  en->add_option("--r", ea.r, "Level (members have r+1 elements)")
      ->required()
      ->check(CLI::Range(0, 21));
  en->add_flag("--count-only", ea.count_only, "Print only the count");
  en->add_option("--format", ea.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  en->add_option("--cap", ea.cap, "Maximum number of elements");

  CoproductArgs ca;
  auto* co = app.add_subcommand("coproduct", "Evaluate Δ_i^U on a face");
  co->add_option("--n", ca.n, "Largest vertex")->required()->check(CLI::Range(0, 20));
  co->add_option("--i", ca.i, "Degree")->required()->check(CLI::Range(0, 20));
  co->add_option("--inversions", ca.inversions,
                 "JSON list of (i+2)-subsets, e.g. [[0,1,2]]");
  co->add_option("--face", ca.face, "JSON face, default [0..n]");
  co->add_option("--format", ca.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  VerifyArgs va;
  auto* ve = app.add_subcommand("verify", "Run an exhaustive check");
  ve->add_option("--suite", va.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"homotopy", "steenrod", "complement", "appendix",
                             "chains", "minimal", "reoriented", "covers",
                             "key"}));
  ve->add_option("--n-max", va.n_max, "Largest n")->check(CLI::Range(0, 12));
  ve->add_option("--i-max", va.i_max, "Largest i")->check(CLI::Range(0, 12));

  RenderArgs ra;
  auto* re = app.add_subcommand("render", "Draw the rhombus tiling of U ∈ B([0,n],2)");
  re->add_option("--n", ra.n, "Largest vertex")->required()->check(CLI::Range(1, 20));
  re->add_option("--inversions", ra.inversions, "JSON list of 3-subsets");
  re->add_option("--out", ra.out, "Output path (default stdout)");
  re->add_flag("--labels", ra.labels, "Label vertices");
  re->add_flag("--terms", ra.terms, "Write the signed term in each tile");

  SqArgs sa;
  auto* sq = app.add_subcommand("sq", "Steenrod square Sq_i on H^p");
  sq->add_option("--complex", sa.complex_path, "Complex JSON file")->required();
  sq->add_option("--i", sa.i, "Cup-i degree")->required();
  sq->add_option("--p", sa.p, "Cohomological degree")->required();
  sq->add_option("--inversions", sa.inversions,
                 "Σ-consistent (i+2)-simplices, default []");
  sq->add_flag("--all-U", sa.all_u, "Check invariance over all restrictions");
  sq->add_option("--cap", sa.cap, "Maximum number of global elements");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*en) return run_enum(ea);
    if (*co) return run_coproduct(ca);
    if (*ve) return run_verify(va);
    if (*re) return run_render(ra);
    if (*sq) return run_sq(sa);
  } catch (const InconsistentSetError& e) {
    std::cerr << "inconsistent input: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

// spn: constructive membership for symplectic groups over the shared
// library's C API.  Exit codes: 0 success, 1 semantic failure
// (verification / not in group), 2 input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spnmember.h"

namespace {

constexpr int kExitOk = 0, kExitSemantic = 1, kExitInput = 2;

struct CtxGuard {
  spn_context* ctx = nullptr;
  ~CtxGuard() { spn_context_destroy(ctx); }
};

struct StrGuard {
  char* s = nullptr;
  ~StrGuard() { spn_string_free(s); }
};

int fail(const spn_context* ctx, spn_status st) {
  const char* detail = ctx ? spn_last_error(ctx) : "";
  std::cerr << "error: " << spn_status_message(st);
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  switch (st) {
    case SPN_E_NOTINGROUP:
    case SPN_E_STEPFAILED:
      return kExitSemantic;
    default:
      return kExitInput;
  }
}

int make_context(int n, int p, int k, const std::string& modulus, CtxGuard& g) {
  spn_status st = spn_context_create(n, p, k, modulus.empty() ? nullptr : modulus.c_str(), &g.ctx);
  if (st != SPN_OK) {
    std::cerr << "error: " << spn_status_message(st) << "\n";
    return kExitInput;
  }
  return kExitOk;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(kExitInput);
  }
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(kExitInput);
  }
  f << text;
}

const char* kGenNames[6] = {"s", "t", "delta", "u", "v", "x"};

struct Cell {
  int n, p, k;
};

std::vector<Cell> default_grid() {
  std::vector<Cell> cells;
  for (int n : {1, 2, 3})
    for (Cell c : {Cell{n, 3, 1}, Cell{n, 5, 1}, Cell{n, 7, 1}, Cell{n, 3, 2}})
      cells.push_back(c);
  for (Cell c : {Cell{2, 11, 1}, Cell{2, 13, 1}, Cell{2, 5, 2}, Cell{2, 3, 3}})
    cells.push_back(c);
  cells.push_back({4, 3, 1});
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive membership for Sp(2n,q): rewrite group elements "
               "as straight-line programs over the standard generators"};
  app.require_subcommand(1);

  int n = 2, p = 3, k = 1;
  std::string modulus;
  std::uint64_t seed = 1;
  int trials = 20, word_length = 50;
  std::string in_path, out_path;
  bool white = false, verify = false, stats = false, json_out = false, with_slp = false;

  auto add_field = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "number of hyperbolic pairs")->check(CLI::PositiveNumber);
    cmd->add_option("--p", p, "field characteristic (odd prime)");
    cmd->add_option("--k", k, "extension degree, q = p^k")->check(CLI::PositiveNumber);
    cmd->add_option("--modulus", modulus, "field modulus c0,c1,...,ck (default: smallest irreducible)");
  };

  auto* cmd_gens = app.add_subcommand("gens", "print the six standard generators");
  add_field(cmd_gens);

  auto* cmd_rewrite = app.add_subcommand("rewrite", "rewrite a matrix as an SLP over the generators");
  add_field(cmd_rewrite);
  cmd_rewrite->add_option("--in", in_path, "input matrix file (default stdin)");
  cmd_rewrite->add_option("--out", out_path, "output program file (default stdout)");
  cmd_rewrite->add_option("--seed", seed, "black-box scramble seed");
  cmd_rewrite->add_flag("--white", white, "use the natural-representation algorithm");
  cmd_rewrite->add_flag("--verify", verify, "re-evaluate the program and compare");
  cmd_rewrite->add_flag("--stats", stats, "print oracle counters to stderr");

  auto* cmd_eval = app.add_subcommand("eval", "evaluate an SLPv1 program to a matrix");
  add_field(cmd_eval);
  cmd_eval->add_option("--in", in_path, "input program file (default stdin)");
  cmd_eval->add_option("--out", out_path, "output matrix file (default stdout)");

  auto* cmd_random = app.add_subcommand("random", "print a seeded random group element");
  add_field(cmd_random);
  cmd_random->add_option("--seed", seed, "random seed");
  cmd_random->add_option("--word-length", word_length, "generator word length")->check(CLI::PositiveNumber);
  cmd_random->add_option("--out", out_path, "output matrix file (default stdout)");
  cmd_random->add_flag("--slp", with_slp, "also print the construction program");

  auto* cmd_selftest = app.add_subcommand("selftest", "round-trip the acceptance grid against frozen ceilings");
  cmd_selftest->add_option("--trials", trials, "rewrites per grid cell")->check(CLI::PositiveNumber);
  cmd_selftest->add_option("--seed", seed, "base seed");
  cmd_selftest->add_flag("--json", json_out, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  if (cmd_gens->parsed()) {
    CtxGuard g;
    if (int rc = make_context(n, p, k, modulus, g)) return rc;
    for (int slot = 0; slot < 6; ++slot) {
      StrGuard s;
      spn_status st = spn_generator(g.ctx, slot, &s.s);
      if (st != SPN_OK) return fail(g.ctx, st);
      std::cout << "# " << kGenNames[slot] << "\n" << s.s;
    }
    return kExitOk;
  }

  if (cmd_rewrite->parsed()) {
    CtxGuard g;
    if (int rc = make_context(n, p, k, modulus, g)) return rc;
    std::string text = read_input(in_path);
    StrGuard slp;
    spn_rewrite_stats rs{};
    spn_status st = spn_rewrite(g.ctx, text.c_str(), white ? 1 : 0, seed,
                                verify ? 1 : 0, &slp.s, &rs);
    if (st != SPN_OK) return fail(g.ctx, st);
    write_output(out_path, slp.s);
    if (stats)
      std::cerr << "stats: mul=" << rs.mul_calls << " inv=" << rs.inv_calls
                << " eq=" << rs.eq_calls << " slp_len=" << rs.slp_length << "\n";
    return kExitOk;
  }

  if (cmd_eval->parsed()) {
    CtxGuard g;
    if (int rc = make_context(n, p, k, modulus, g)) return rc;
    std::string text = read_input(in_path);
    StrGuard out;
    spn_status st = spn_slp_eval(g.ctx, text.c_str(), &out.s);
    if (st != SPN_OK) return fail(g.ctx, st);
    write_output(out_path, out.s);
    return kExitOk;
  }

  if (cmd_random->parsed()) {
    CtxGuard g;
    if (int rc = make_context(n, p, k, modulus, g)) return rc;
    StrGuard out, slp;
    spn_status st = spn_random_element(g.ctx, seed, word_length, &out.s,
                                       with_slp ? &slp.s : nullptr);
    if (st != SPN_OK) return fail(g.ctx, st);
    std::string text = out.s;
    if (with_slp) text += slp.s;
    write_output(out_path, text);
    return kExitOk;
  }

  // selftest
  bool all_pass = true;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const Cell& c : default_grid()) {
    int q = 1;
    for (int i = 0; i < c.k; ++i) q *= c.p;
    CtxGuard g;
    if (int rc = make_context(c.n, c.p, c.k, "", g)) return rc;
    long ceiling_calls = 0, ceiling_len = 0;
    spn_rewrite_ceilings(c.n, q, &ceiling_calls, &ceiling_len);
    long max_calls = 0, max_len = 0;
    double sum_calls = 0;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
      StrGuard m, slp;
      spn_status st = spn_random_element(g.ctx, seed + t, word_length, &m.s, nullptr);
      if (st != SPN_OK) return fail(g.ctx, st);
      spn_rewrite_stats rs{};
      st = spn_rewrite(g.ctx, m.s, 0, seed + 1000 + t, 1, &slp.s, &rs);
      if (st != SPN_OK) {
        ++failures;
        continue;
      }
      long calls = rs.mul_calls + rs.inv_calls + rs.eq_calls - rs.kit_calls;
      max_calls = std::max(max_calls, calls);
      sum_calls += double(calls);
      max_len = std::max(max_len, rs.slp_length);
    }
    bool pass = failures == 0 && max_calls <= ceiling_calls && max_len <= ceiling_len;
    all_pass = all_pass && pass;
    double mean_calls = trials ? sum_calls / trials : 0.0;
    if (json_out) {
      nlohmann::ordered_json cell;
      cell["n"] = c.n;
      cell["q"] = q;
      cell["trials"] = trials;
      cell["failures"] = failures;
      cell["max_calls"] = max_calls;
      cell["mean_calls"] = mean_calls;
      cell["ceiling_calls"] = ceiling_calls;
      cell["max_slp_length"] = max_len;
      cell["ceiling_slp_length"] = ceiling_len;
      cell["pass"] = pass;
      cells.push_back(cell);
    } else {
      std::cout << "n=" << c.n << " q=" << q << " trials=" << trials
                << " failures=" << failures << " max_calls=" << max_calls
                << "/" << ceiling_calls << " mean_calls=" << mean_calls
                << " max_slp_len=" << max_len << "/" << ceiling_len << " "
                << (pass ? "pass" : "FAIL") << "\n";
    }
  }
  if (json_out) {
    nlohmann::ordered_json root;
    root["cells"] = cells;
    root["pass"] = all_pass;
    std::cout << root.dump(2) << "\n";
  } else {
    std::cout << (all_pass ? "selftest: pass" : "selftest: FAIL") << "\n";
  }
  return all_pass ? kExitOk : kExitSemantic;
}

// dglforge: exact computations with free dgls over Q.
//
// Exit codes: 0 verified, 1 verified negative, 2 usage or parse error,
// 3 budget exhausted.

#include "dglforge/certificate.hpp"
#include "dglforge/constructions.hpp"
#include "dglforge/dgl_format.hpp"
#include "dglforge/minimal_model.hpp"
#include "dglforge/quillen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace dglforge;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

struct Globals {
  std::optional<int> max_degree;
  std::optional<double> budget_seconds;
  std::string json_path;
  bool quiet = false;
  bool timings = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

DglPresentation load(const std::string& path) { return parse_dgl(read_file(path)).presentation; }

class Runner {
 public:
  explicit Runner(const Globals& g) : g_(g), budget_(g.budget_seconds ? Budget(*g.budget_seconds) : Budget()) {}

  void say(const std::string& line) const {
    if (!g_.quiet) std::cout << line << "\n";
  }
  void emit(Certificate c) const {
    if (g_.timings) c.timings["total_seconds"] = budget_.elapsed_seconds();
    if (!g_.json_path.empty()) write_file(g_.json_path, c.to_json().dump(2) + "\n");
  }
  void checkpoint(const std::string& stage, std::map<std::string, std::size_t> dims = {}) const {
    if (budget_.expired()) throw BudgetExhausted(stage, std::move(dims));
  }
  void extra_d2(const DglPresentation& p) const {
    if (!g_.max_degree) return;
    const D2Report r = check_d_squared(p, *g_.max_degree);
    if (!r.ok) throw std::logic_error("d^2 != 0 on " + p.alphabet()[*r.first_failure].name);
  }
  int cap_or(int fallback) const { return g_.max_degree.value_or(fallback); }
  const Budget& budget() const { return budget_; }

 private:
  const Globals& g_;
  Budget budget_;
};

void print_or_write(const Runner& run, const std::string& out, const std::string& text) {
  if (!out.empty())
    write_file(out, text);
  else
    run.say(text.substr(0, text.empty() ? 0 : text.size() - 1));
}

std::string stages_line(const DglPresentation& p, const FiltrationAssignment& f) {
  std::string s;
  for (Letter l : p.alphabet().letters())
    s += (s.empty() ? "" : " ") + p.alphabet()[l].name + ":" + std::to_string(f.stage[l]);
  return s;
}

std::vector<Letter> letters_from(const DglPresentation& p, const std::string& csv) {
  std::vector<Letter> out;
  if (csv.empty()) return p.alphabet().letters();
  std::stringstream ss(csv);
  for (std::string n; std::getline(ss, n, ',');) out.push_back(p.alphabet().at(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with free differential graded Lie algebras over Q"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--max-degree", g.max_degree, "Degree cap for checks");
  app.add_option("--budget-seconds", g.budget_seconds, "Wall-clock budget");
  app.add_option("--json", g.json_path, "Write the certificate to this file");
  app.add_flag("--quiet", g.quiet, "No output on stdout");
  app.add_flag("--timings", g.timings, "Record timings in the certificate");

  int k = 3, gen_degree = 4, power = 3;
  std::string file, out, prefix = "a", target, letters, input;
  std::vector<std::string> maps;
  std::size_t min_weight = 1;
  std::optional<std::size_t> max_weight;
  bool control = false, no_modular = false;

  auto* lstar_cmd = app.add_subcommand("build-lstar", "L_*(Q[u]/u^power) as a .dgl file");
  lstar_cmd->add_option("--degree", gen_degree, "|u| (even)")->required();
  lstar_cmd->add_option("--power", power, "Truncation power")->required();
  lstar_cmd->add_option("--prefix", prefix, "Generator name prefix");
  lstar_cmd->add_option("--out", out, "Output .dgl file");

  auto* lk_cmd = app.add_subcommand("build-lk", "Build L_k");
  lk_cmd->add_option("--k", k)->required()->check(CLI::Range(3, 64));
  lk_cmd->add_option("--out", out, "Output .dgl file");

  auto* d2_cmd = app.add_subcommand("check-d2", "Check d^2 = 0 on generators");
  d2_cmd->add_option("file", file)->required();

  auto* hom_cmd = app.add_subcommand("homology", "Homology dimensions through the degree cap");
  hom_cmd->add_option("file", file)->required();

  auto* solve_cmd = app.add_subcommand("solve-boundary", "Find e with d e = target");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_option("--target", target, "Target expression")->required();
  solve_cmd->add_option("--letters", letters, "Comma-separated generators of the search space");
  solve_cmd->add_option("--min-weight", min_weight);
  solve_cmd->add_option("--max-weight", max_weight);

  auto* subst_cmd = app.add_subcommand("substitute", "Apply generator substitutions g=expr");
  subst_cmd->add_option("file", file)->required();
  subst_cmd->add_option("--map", maps, "Substitution g=expr (repeatable)")->required();
  subst_cmd->add_option("--out", out, "Output .dgl file");

  auto* dec_cmd = app.add_subcommand("decompose", "Greedy decomposition length");
  dec_cmd->add_option("file", file)->required();

  auto* cat_cmd = app.add_subcommand("cat-cert", "Category certificate for L_k");
  cat_cmd->add_option("--k", k)->required()->check(CLI::Range(3, 64));

  auto* p51_cmd = app.add_subcommand("check-prop51", "Decide whether dv can be corrected into L(V_{<=k-1})");
  p51_cmd->add_option("--k", k)->required()->check(CLI::Range(3, 64));
  p51_cmd->add_flag("--control", control, "Use the solvable control instance");
  p51_cmd->add_flag("--no-modular", no_modular, "Skip the modular pre-pass");

  auto* claim_cmd = app.add_subcommand("claim-check", "Cancellation identity for L_k");
  claim_cmd->add_option("--k", k)->required()->check(CLI::Range(3, 64));

  auto* min_cmd = app.add_subcommand("minimalize", "Minimal model through the degree cap");
  min_cmd->add_option("file", file)->required();
  min_cmd->add_option("--out", out, "Output .dgl file");

  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate");
  verify_cmd->add_option("certificate", file)->required();
  verify_cmd->add_option("--input", input, "Input .dgl for check-d2 and decompose certificates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Runner run(g);
  try {
    if (lstar_cmd->parsed()) {
      const DglPresentation p = lstar(truncated_monogenic(gen_degree, power, prefix));
      run.extra_d2(p);
      print_or_write(run, out, print_dgl(p));
      run.emit(lstar_certificate(p, gen_degree, power));
      return kOk;
    }
    if (lk_cmd->parsed()) {
      const LkBundle b = build_Lk(k);
      run.extra_d2(b.Lk);
      print_or_write(run, out, print_dgl(b.Lk));
      run.emit(lk_certificate(b));
      return kOk;
    }
    if (d2_cmd->parsed()) {
      const DglPresentation p = load(file);
      const int cap = run.cap_or(p.max_degree());
      const D2Report r = check_d_squared(p, cap);
      run.say(r.ok ? "d^2 = 0 through degree " + std::to_string(cap)
                   : "d^2 != 0 on " + p.alphabet()[*r.first_failure].name);
      run.emit(d2_certificate(p, cap, r));
      return r.ok ? kOk : kNegative;
    }
    if (hom_cmd->parsed()) {
      const DglPresentation p = load(file);
      const int cap = run.cap_or(p.max_degree() + 1);
      require_d_squared(p, cap + 1);
      for (int n = 1; n <= cap; ++n) {
        run.checkpoint("homology", {{"degree", static_cast<std::size_t>(n)}});
        run.say("H_" + std::to_string(n) + " = " + std::to_string(homology_dimension(p, n)));
      }
      run.emit(homology_certificate(p, cap));
      return kOk;
    }
    if (solve_cmd->parsed()) {
      const DglPresentation p = load(file);
      const LieElement t = parse_expression(target, p.alphabet());
      if (t.is_zero()) throw UsageError("target is zero");
      SearchSpace space{letters_from(p, letters), min_weight, max_weight, *t.degree() + 1};
      const BoundaryResult r = solve_boundary_with_witness(p, t, space);
      if (r.solution) {
        run.say(to_string(*r.solution, p.alphabet()));
        return kOk;
      }
      run.say("not a boundary in the search space (" + std::to_string(r.farkas.size()) + "-term Farkas witness)");
      return kNegative;
    }
    if (subst_cmd->parsed()) {
      const DglPresentation p = load(file);
      std::map<Letter, LieElement> subst;
      for (const auto& m : maps) {
        const auto eq = m.find('=');
        if (eq == std::string::npos) throw UsageError("--map expects g=expr, got " + m);
        std::string name = m.substr(0, eq);
        name.erase(name.find_last_not_of(' ') + 1);
        name.erase(0, name.find_first_not_of(' '));
        subst[p.alphabet().at(name)] = parse_expression(m.substr(eq + 1), p.alphabet());
      }
      const DglPresentation q = substitute_generators(p, subst);
      print_or_write(run, out, print_dgl(q));
      return kOk;
    }
    if (dec_cmd->parsed()) {
      const DglPresentation p = load(file);
      const auto f = infer_decomposition(p);
      if (f) {
        run.say("length " + std::to_string(f->length()));
        run.say(stages_line(p, *f));
      } else {
        run.say("no decomposition");
      }
      run.emit(decomposition_certificate(p, f));
      return f ? kOk : kNegative;
    }
    if (cat_cmd->parsed()) {
      const LkBundle b = build_Lk(k);
      run.extra_d2(b.Lk);
      run.checkpoint("construction");
      const CatResult r = cat_certificate_data(b);
      const Certificate c = cat_certificate(b, r);
      run.say("dv' = " + to_string(r.dv_after, r.after.alphabet()));
      run.say("identity " + std::string(r.identity_holds ? "holds" : "fails") + "; length before " +
              std::to_string(r.greedy_before.length()) + ", after " + std::to_string(r.greedy_after.length()));
      run.emit(c);
      return c.status == "VERIFIED" ? kOk : kNegative;
    }
    if (p51_cmd->parsed()) {
      const LkBundle b = build_Lk(k);
      run.extra_d2(b.Lk);
      Prop51Options o;
      o.budget = run.budget();
      o.control = control;
      o.modular_prepass = !no_modular;
      Prop51Result r;
      try {
        r = check_prop51(b, o);
      } catch (const BudgetExhausted& e) {
        Certificate c = prop51_certificate(b, r, control, false);
        c.status = "BUDGET_EXHAUSTED";
        c.witnesses["stage"] = e.stage();
        for (const auto& [key, v] : e.dimensions()) c.dimensions[key] = v;
        run.emit(c);
        throw;
      }
      const bool verified = verify_prop51(b, r);
      const Certificate c = prop51_certificate(b, r, control, verified);
      run.say(c.status + (verified ? " (verified)" : " (verification failed)"));
      for (const auto& [key, v] : r.dimensions) run.say("  " + key + " = " + std::to_string(v));
      run.emit(c);
      const bool expected = control ? r.feasible : !r.feasible;
      const bool agree = !r.modular_feasible || *r.modular_feasible == r.feasible;
      return expected && verified && agree ? kOk : kNegative;
    }
    if (claim_cmd->parsed()) {
      const LkBundle b = build_Lk(k);
      const ClaimResult r = verify_claim_identity(b);
      const Certificate c = claim_certificate(b, r);
      run.say("remainder in L(V_{<=k-1}): " + std::string(r.remainder_in_lower ? "yes" : "no"));
      run.say("literal combination in L(V_{<=k-1}): " + std::string(r.literal_in_lower ? "yes" : "no"));
      run.say("multilinear dimension " + std::to_string(r.multilinear_dimension));
      run.emit(c);
      return c.status == "VERIFIED" ? kOk : kNegative;
    }
    if (min_cmd->parsed()) {
      const DglPresentation p = load(file);
      const int cap = run.cap_or(p.max_degree() + 1);
      const MinimalModel m = minimalize(p, cap);
      const MinimalModelCheck check = check_minimal_model(p, m, cap);
      print_or_write(run, out, print_dgl(m.minimal));
      run.emit(minimal_model_certificate(p, m, check, cap));
      return check.ok() ? kOk : kNegative;
    }
    if (verify_cmd->parsed()) {
      const Json cert = Json::parse(read_file(file));
      std::optional<DglPresentation> in;
      if (!input.empty()) in = load(input);
      const VerifyReport rep = verify_certificate(cert, in ? &*in : nullptr);
      run.say(rep.ok ? "certificate verified" : "certificate rejected");
      for (const auto& f : rep.failures) run.say("  " + f);
      return rep.ok ? kOk : kNegative;
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "dglforge: " << e.what() << "\n";
    for (const auto& [key, v] : e.dimensions()) std::cerr << "  " << key << " = " << v << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "dglforge: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "dglforge: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error, out_of_range: bad input or cap.
    std::cerr << "dglforge: " << e.what() << "\n";
    return dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e) ||
                   dynamic_cast<const std::out_of_range*>(&e)
               ? kUsage
               : kNegative;
  }
  return kUsage;
}

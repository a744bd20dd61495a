#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "parayb/io.hpp"
#include "parayb/parayb.hpp"

using namespace parayb;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

struct Globals {
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
  std::optional<std::uint64_t> budget;
  bool timings = false;
  std::size_t max_dim = 4096;
};

// Everything a run reports. Artifact commands (brace, build, extract,
// enumerate, dumps, trees) put their product in `artifact`.
struct Run {
  json command = json::array();
  json inputs = json::array();
  json checks = json::array();
  json result = json::object();
  std::optional<std::string> artifact;
  bool failed = false;

  json load(const std::string& path) {
    auto text = io::read_file(path);
    inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
    return io::parse(text, path);
  }

  void add(const Verdict& v, const Carrier* carrier = nullptr) {
    checks.push_back(io::verdict_to_json(v, carrier));
    failed = failed || !v.ok;
  }

  void add_error(const Error& e) {
    checks.push_back({{"check", e.kind()}, {"passed", false}, {"detail", e.what()}});
    failed = true;
  }
};

std::string render_text(const json& report) {
  std::ostringstream os;
  std::string cmd;
  for (const auto& a : report["command"]) cmd += (cmd.empty() ? "" : " ") + a.get<std::string>();
  os << cmd << '\n';
  for (const auto& in : report["inputs"]) os << "  input " << in["path"].get<std::string>() << "  sha256 " << in["sha256"].get<std::string>() << '\n';
  for (const auto& c : report["checks"]) {
    os << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>();
    if (c.contains("counterexample")) {
      const auto& ce = c["counterexample"];
      os << "  [" << ce["relation"].get<std::string>();
      for (const auto& [k, v] : ce["at"].items()) os << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
      os << ']';
      if (ce.contains("detail")) os << ' ' << ce["detail"].get<std::string>();
    }
    if (c.contains("detail")) os << "  " << c["detail"].get<std::string>();
    os << '\n';
  }
  for (const auto& [k, v] : report["result"].items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  if (report.contains("wall_time_ms")) os << "wall time: " << report["wall_time_ms"].get<double>() << " ms\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

struct Bundle {
  ParamFamily shelf;
  std::optional<ParamFamily> sigma, bullet;
};

// A bundle file is {"shelf": family, "sigma": family, "bullet": family} with
// the last two optional; a bare family is read as the shelf.
Bundle load_bundle(Run& run, const std::string& path, const std::string& bullet_path) {
  auto j = run.load(path);
  Bundle b;
  if (j.contains("family")) {
    b.shelf = io::family_from_json(j, path);
  } else {
    b.shelf = io::family_from_json(io::detail::field(j, "shelf", path), path + "/shelf");
    if (j.contains("sigma")) b.sigma = io::family_from_json(j["sigma"], path + "/sigma");
    if (j.contains("bullet")) b.bullet = io::family_from_json(j["bullet"], path + "/bullet");
  }
  if (!bullet_path.empty()) b.bullet = io::family_from_json(run.load(bullet_path), bullet_path);
  for (const auto* f : {b.sigma ? &*b.sigma : nullptr, b.bullet ? &*b.bullet : nullptr})
    if (f && !f->same_shape(b.shelf)) throw InputError(path + ": families differ in carrier or parameters");
  return b;
}

Elem element(const Carrier& c, const std::string& label, const char* what) {
  auto e = c.find(label);
  if (!e) throw InputError(std::string(what) + " " + label + " is not an element of the carrier");
  return *e;
}

std::size_t param_position(const ParamFamily& f, const std::string& label, const char* what) {
  auto pos = f.params().position(element(f.carrier(), label, what));
  if (!pos) throw InputError(std::string(what) + " " + label + " is not in Y");
  return *pos;
}

void cap_dimension(const Globals& g, std::size_t n, std::size_t legs) {
  std::size_t dim = 1;
  for (std::size_t k = 0; k < legs; ++k) {
    dim *= n;
    if (dim > g.max_dim)
      throw InputError("n^" + std::to_string(legs) + " exceeds the matrix cap " + std::to_string(g.max_dim) + " (raise --max-dim)");
  }
}

json admissibility_json(const Admissibility& a) {
  return {{"right_distributive", a.right_distributive}, {"central_in_add", a.central_in_add},
          {"params_commute", a.params_commute},         {"xi_in_params", a.xi_in_params},
          {"xi_central_mul", a.xi_central_mul}};
}

json classification_json(const Classification& c) {
  return {{"left_nondegenerate", c.left_nondegenerate}, {"right_nondegenerate", c.right_nondegenerate},
          {"nondegenerate", c.nondegenerate},           {"invertible", c.invertible},
          {"reversible", c.reversible}};
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Parametric set-theoretic Yang-Baxter toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("parayb ") + kVersion);

  Globals g;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--out", g.out, "Write the artifact (or the report) to this file");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Enumeration budget in table cells (default: PARAYB_BUDGET or built-in)");
  app.add_option("--max-dim", g.max_dim, "Largest matrix dimension a coalgebra check may build");
  app.add_flag("--timings", g.timings, "Include wall time in the report");

  Run run;
  for (int i = 0; i < argc; ++i) run.command.push_back(i == 0 ? std::string("parayb") : std::string(argv[i]));
  std::function<void()> action;

  // verify-shelf
  std::string file;
  bool rack = false;
  auto* vs = app.add_subcommand("verify-shelf", "Check the p-shelf (and optionally p-rack) axioms");
  vs->add_option("file", file, "Family JSON")->required();
  vs->add_flag("--rack", rack, "Also require bijective left translations");
  vs->callback([&] {
    action = [&] {
      auto f = io::family_from_json(run.load(file), file);
      Exec ex{g.jobs};
      run.add(check_p_shelf(f, ex), &f.carrier());
      if (rack) run.add(check_p_rack(f, ex), &f.carrier());
      run.result = {{"n", f.n()}, {"m", f.m()}};
    };
  });

  // verify-solution
  std::string method = "direct";
  auto* vsol = app.add_subcommand("verify-solution", "Check the parametric braid relation for a set map");
  vsol->add_option("file", file, "Solution JSON")->required();
  vsol->add_option("--method", method)->check(CLI::IsMember({"direct", "components", "both"}));
  vsol->callback([&] {
    action = [&] {
      auto r = io::solution_from_json(run.load(file), file);
      Exec ex{g.jobs};
      for (auto [name, m] : {std::pair{"direct", YbeMethod::direct}, std::pair{"components", YbeMethod::components}}) {
        if (method != "both" && method != name) continue;
        run.add(check_ybe(r, m, ex), &r.sigma.carrier());
      }
      run.result = {{"n", r.n()}, {"m", r.m()}, {"classification", classification_json(classify(r))}};
    };
  });

  // brace
  std::string source, emit = "shelf", xi_label;
  int brace_m = 0;
  std::vector<std::string> y_labels;
  auto* br = app.add_subcommand("brace", "Build the data derived from a skew brace");
  br->add_option("source", source, "\"cyclic\" or a brace JSON file")->required();
  br->add_option("--m", brace_m, "Exponent for the cyclic brace on U(Z/2^m)");
  br->add_option("--xi", xi_label, "Twisting element (label; residues for the cyclic brace)")->required();
  br->add_option("--Y", y_labels, "Parameter set (labels; default: the whole brace)");
  br->add_option("--emit", emit)->check(CLI::IsMember({"shelf", "sigma", "tau", "bullet", "solution", "rack-solution", "brace"}));
  br->callback([&] {
    action = [&] {
      SkewBrace b = source == "cyclic" ? (brace_m < 1 ? throw InputError("cyclic brace needs --m") : cyclic_brace(brace_m))
                                       : io::brace_from_json(run.load(source), source);
      run.add(check_skew_brace(b.size(), b.add_table(), b.mul_table()));
      const auto& c = b.carrier();
      ParamSubset y;
      if (y_labels.empty()) y = ParamSubset::whole(b.size());
      for (const auto& l : y_labels) y.elems.push_back(element(c, l, "Y element"));
      y.validate(b.size());
      Elem xi = element(c, xi_label, "xi");
      auto adm = check_admissible_Y(b, y, xi);
      run.result = {{"n", b.size()}, {"Y", y_labels.empty() ? json(c.labels()) : json(y_labels)},
                    {"xi", xi_label}, {"admissibility", admissibility_json(adm)}};
      json art;
      if (emit == "brace") {
        art = io::brace_to_json(b);
      } else if (emit == "shelf" || emit == "rack-solution") {
        auto s = brace_shelf(b, y, xi);
        run.add(check_p_rack(s, {g.jobs}), &c);
        if (emit == "shelf") art = io::family_to_json(s);
        else {
          auto r = shelf_solution(s);
          run.add(check_ybe(r, YbeMethod::direct, {g.jobs}), &c);
          art = io::solution_to_json(r);
        }
      } else if (emit == "bullet") {
        art = io::family_to_json(brace_bullet(b, y, xi));
      } else {
        auto r = brace_sigma_tau(b, y, xi);
        run.add(check_ybe(r, YbeMethod::direct, {g.jobs}), &c);
        art = emit == "sigma" ? io::family_to_json(r.sigma) : emit == "tau" ? io::family_to_json(r.tau) : io::solution_to_json(r);
      }
      run.artifact = art.dump() + "\n";
    };
  });

  // build
  std::string shelf_path, sigma_path;
  auto* bu = app.add_subcommand("build", "Build the solution of an admissible twist over a p-rack");
  bu->add_option("--shelf", shelf_path)->required();
  bu->add_option("--sigma", sigma_path)->required();
  bu->callback([&] {
    action = [&] {
      auto s = io::family_from_json(run.load(shelf_path), shelf_path);
      auto sg = io::family_from_json(run.load(sigma_path), sigma_path);
      if (!s.same_shape(sg)) throw InputError("shelf and sigma differ in carrier or parameters");
      Exec ex{g.jobs};
      run.add(check_p_rack(s, ex), &s.carrier());
      run.add(check_admissible_twist(sg, s, ex), &s.carrier());
      if (run.failed) return;
      auto r = build_solution(sg, s, ex);
      run.add(check_ybe(r, YbeMethod::direct, ex), &s.carrier());
      run.result = {{"classification", classification_json(classify(r))}};
      run.artifact = io::solution_to_json(r).dump() + "\n";
    };
  });

  // extract
  std::string solution_path;
  auto* exs = app.add_subcommand("extract", "Recover the p-shelf and twist of a left non-degenerate solution");
  exs->add_option("--solution", solution_path)->required();
  exs->callback([&] {
    action = [&] {
      auto r = io::solution_from_json(run.load(solution_path), solution_path);
      Exec ex{g.jobs};
      auto e = extract_shelf(r, ex);
      run.add(check_p_shelf(e.shelf, ex), &r.sigma.carrier());
      auto back = build_solution(e.sigma, e.shelf, ex);
      bool same = back.sigma == r.sigma && back.tau == r.tau;
      run.add(same ? Verdict::pass("round-trip") : Verdict::fail("round-trip", {"rebuilt solution differs", {}, ""}));
      run.artifact = json{{"shelf", io::family_to_json(e.shelf)}, {"sigma", io::family_to_json(e.sigma)}}.dump() + "\n";
    };
  });

  // enumerate
  std::size_t en_n = 2, en_m = 1;
  bool en_iso = false;
  auto* en = app.add_subcommand("enumerate", "List p-shelves on {0..n-1} with Y = {0..m-1}, one JSON object per line");
  en->add_option("--n", en_n)->required();
  en->add_option("--m", en_m)->required();
  en->add_flag("--rack", rack);
  en->add_flag("--iso", en_iso, "One representative per relabeling class");
  en->callback([&] {
    action = [&] {
      EnumerateOptions opt{en_n, en_m, rack, en_iso};
      if (g.budget) opt.budget = *g.budget;
      std::string lines;
      auto count = enumerate_p_shelves(opt, [&](const ParamFamily& f) { lines += io::family_to_json(f).dump() + "\n"; });
      run.result = {{"count", count}};
      run.artifact = std::move(lines);
    };
  });

  // tensor
  std::string tensor_action, bundle_path, bullet_path, tier = "decorated", zi_label, zj_label;
  bool unchecked = false, twisted = false, swapped_tau = false;
  std::size_t nfold_legs = 3;
  auto* te = app.add_subcommand("tensor", "Checks in the fundamental representation");
  te->add_option("action", tensor_action)->required()->check(CLI::IsMember({"ybe", "frt", "commute", "twist", "algebra", "dump"}));
  te->add_option("bundle", bundle_path, "Bundle JSON")->required();
  te->add_option("--bullet", bullet_path, "Bullet family JSON");
  te->add_option("--tier", tier)->check(CLI::IsMember({"p-rack", "decorated", "p-set", "special"}));
  te->add_flag("--unchecked", unchecked, "Build the matrices without validating the shelf and twist");
  te->add_option("--zi", zi_label, "First parameter for dump");
  te->add_option("--zj", zj_label, "Second parameter for dump");
  te->add_flag("--twisted", twisted, "Dump the twisted R-matrix");
  te->add_flag("--swapped-tau", swapped_tau, "Write the w-w exchange with tau^{kj} instead of tau^{jk}");
  te->add_option("--legs", nfold_legs, "Legs for the n-fold twist comparison")->check(CLI::Range(3, 4));
  te->callback([&] {
    action = [&] {
      auto bd = load_bundle(run, bundle_path, bullet_path);
      const auto* c = &bd.shelf.carrier();
      auto b = unchecked ? make_rep_unchecked(bd.shelf, bd.sigma) : fundamental_rep(bd.shelf, bd.sigma, {g.jobs});
      if (tensor_action == "ybe" || tensor_action == "frt" || tensor_action == "commute") {
        auto rep = universal_r_in_rep(b);
        if (tensor_action == "ybe") {
          run.add(rep.ybe, c);
          run.add(rep.inverse, c);
        }
        if (tensor_action == "frt") run.add(rep.frt, c);
        if (tensor_action == "commute") run.add(rep.t_commute, c);
      } else if (tensor_action == "twist") {
        auto rep = twist_in_rep(b, nfold_legs);
        for (const auto& v : {rep.factorization, rep.twisted_matches_solution, rep.orthogonal, rep.exchange, rep.nfold}) run.add(v, c);
        if (rep.special) run.add(*rep.special, c);
        auto sol = build_solution(*b.sigma, b.shelf);
        run.add(check_tensor_ybe([&](std::size_t i, std::size_t j) { return twisted_r(b, i, j); }, b.n, b.params()), c);
        run.result = {{"classification", classification_json(classify(sol))}};
      } else if (tensor_action == "algebra") {
        AlgebraTier t = tier == "p-rack" ? AlgebraTier::p_rack
                        : tier == "decorated" ? AlgebraTier::decorated
                        : tier == "p-set" ? AlgebraTier::p_set
                                          : AlgebraTier::special;
        run.add(check_algebra_relations(b, t, {swapped_tau, bd.bullet}), c);
      } else {
        if (zi_label.empty() || zj_label.empty()) throw InputError("dump needs --zi and --zj");
        auto i = param_position(bd.shelf, zi_label, "--zi"), j = param_position(bd.shelf, zj_label, "--zj");
        if (twisted && !b.decorated()) throw MissingConstraintOp("the twisted R-matrix needs sigma");
        std::ostringstream os;
        write_coo(os, twisted ? twisted_r(b, i, j) : universal_r(b, i, j), b.n, 2);
        run.artifact = os.str();
      }
    };
  });

  // coalgebra
  std::string co_action, generator = "q", variant = "shelf", zo_label, zhat_label;
  std::size_t arity = 3;
  bool weak = false, report_mode = false;
  auto* co = app.add_subcommand("coalgebra", "Coproducts, coassociativity, transfer matrices");
  co->add_option("action", co_action)->required()->check(CLI::IsMember({"coassoc", "intertwine", "homomorphism", "transfer", "trees"}));
  co->add_option("bundle", bundle_path, "Bundle JSON (not needed for trees)");
  co->add_option("--arity", arity)->check(CLI::Range(1, 16));
  co->add_option("--bullet", bullet_path, "Bullet family JSON");
  co->add_option("--generator", generator)->check(CLI::IsMember({"q", "w", "h-bullet", "h-shelf"}));
  co->add_option("--variant", variant)->check(CLI::IsMember({"shelf", "bullet", "twisted"}));
  co->add_flag("--weak", weak, "Use the fixed outer parameters z_o and z_hat");
  co->add_option("--zo", zo_label, "z_o (an element of Y)");
  co->add_option("--zhat", zhat_label, "z_hat (an element of Y)");
  co->add_flag("--report", report_mode, "Evaluate the transfer identities even when the hypothesis fails");
  co->callback([&] {
    action = [&] {
      if (co_action == "trees") {
        if (arity < 2) throw InputError("trees need arity >= 2");
        run.result = {{"trees", std::size_t{1} << (arity - 2)}};
        run.artifact = render_trees(coproduct_trees(arity), weak);
        return;
      }
      if (bundle_path.empty()) throw InputError(co_action + " needs a bundle file");
      auto bd = load_bundle(run, bundle_path, bullet_path);
      const auto* c = &bd.shelf.carrier();
      Coherence coh;
      if (weak) {
        if (zo_label.empty() || zhat_label.empty()) throw InputError("--weak needs --zo and --zhat");
        coh = {true, param_position(bd.shelf, zo_label, "--zo"), param_position(bd.shelf, zhat_label, "--zhat")};
      }
      auto b = fundamental_rep(bd.shelf, bd.sigma, {g.jobs});
      const ParamFamily* bullet = bd.bullet ? &*bd.bullet : nullptr;
      Generator gen = generator == "q" ? Generator::q
                      : generator == "w" ? Generator::w
                      : generator == "h-bullet" ? Generator::h_bullet
                                                : Generator::h_shelf;
      if (co_action == "coassoc") {
        cap_dimension(g, b.n, arity);
        auto rep = check_coassociativity(b, arity, gen, bullet, coh);
        run.add(rep.asserted, c);
        run.result = {{"tree_agrees", rep.tree_agrees}};
      } else if (co_action == "intertwine") {
        auto v = variant == "shelf" ? IntertwineVariant::shelf : variant == "bullet" ? IntertwineVariant::bullet : IntertwineVariant::twisted;
        run.add(check_intertwining(b, v, bullet), c);
      } else if (co_action == "homomorphism") {
        cap_dimension(g, b.n, arity);
        if (co->count("--generator") == 0) gen = Generator::h_bullet;
        if (gen != Generator::h_bullet && gen != Generator::h_shelf) throw InputError("homomorphism takes --generator h-bullet or h-shelf");
        run.add(check_homomorphism(b, arity, gen, bullet, coh), c);
      } else {
        if (!bullet) throw MissingConstraintOp("transfer needs a bullet family");
        cap_dimension(g, b.n, arity + 1);
        auto rep = transfer_and_t(b, *bullet, arity, report_mode ? TransferMode::report : TransferMode::assert_hypothesis);
        run.result = {{"hypothesis", rep.hypothesis}};
        if (rep.hypothesis_failure) run.result["hypothesis_failure"] = io::counterexample_to_json(*rep.hypothesis_failure, c);
        for (const auto& v : {rep.commutators, rep.head_factorization, rep.tail_factorization}) {
          // Without the hypothesis these identities are informational.
          if (rep.hypothesis) run.add(v, c);
          else run.result[v.check] = io::verdict_to_json(v, c);
        }
      }
    };
  });

  // demo
  std::string example;
  auto* de = app.add_subcommand("demo", "Reproduce a worked example");
  de->add_option("--example,--paper-example", example)->required()->check(CLI::IsMember({"good1"}));
  de->callback([&] {
    action = [&] {
      auto b = cyclic_brace(3);
      auto y = ParamSubset::whole(b.size());
      const auto& c = b.carrier();
      auto s = brace_shelf(b, y, element(c, "3", "xi"));
      auto at = [&](const char* zi, const char* zj, const char* a, const char* x) {
        auto i = *y.position(element(c, zi, "z")), j = *y.position(element(c, zj, "z"));
        return c.label(s.at(i, j, element(c, a, "a"), element(c, x, "b")));
      };
      auto v13 = at("1", "3", "1", "3"), v15 = at("1", "5", "1", "3");
      run.result = {{"carrier", "U(Z/8)"}, {"xi", "3"}, {"1 >_13 3", v13}, {"1 >_15 3", v15}};
      bool ok = v13 == "3" && v15 == "7";
      run.add(ok ? Verdict::pass("worked-values") : Verdict::fail("worked-values", {"expected 3 and 7", {}, ""}));
      run.add(check_p_rack(s), &c);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int status = 0;
  try {
    action();
    status = run.failed ? 1 : 0;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const MissingConstraintOp& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    // A precondition of the requested construction does not hold.
    run.add_error(e);
    run.artifact.reset();
    status = 1;
  }

  json report{{"command", run.command}, {"inputs", run.inputs}, {"checks", run.checks},
              {"result", run.result},   {"passed", status == 0}, {"version", kVersion}};
  if (g.timings)
    report["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const std::string rendered = g.format == "json" ? report.dump(2) + "\n" : render_text(report);

  try {
    if (run.artifact) {
      if (g.out.empty()) {
        std::cout << *run.artifact;
        std::cerr << rendered;
      } else {
        write_file(g.out, *run.artifact);
        std::cout << rendered;
      }
    } else if (g.out.empty()) {
      std::cout << rendered;
    } else {
      write_file(g.out, rendered);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
  return status;
}

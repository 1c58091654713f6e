#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "amalgam/amal.hpp"
#include "amalgam/io.hpp"
#include "amalgam/stone.hpp"

namespace {

using amalgam::BudgetError;
using amalgam::ContractError;
using amalgam::DefectError;
using amalgam::Mask;
using amalgam::Rng;
using json = amalgam::io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::size_t max_index_size = 6;
  std::uint32_t max_fiber = 3;
  std::uint64_t product_budget = 1'000'000;
  std::size_t box_draws = 20;
  bool verbose = false;
};

std::string fault_injection() {
  const char* v = std::getenv("AMALGAM_FAULT_INJECT");
  return v ? v : "";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open input file '" + path + "'");
  return json::parse(in);
}

void emit(const Options& opt, const json& report, const std::string& summary) {
  std::cout << summary;
  if (!opt.output.empty()) {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw ContractError("cannot open output file '" + opt.output + "'");
    out << amalgam::io::dump(report);
  }
}

json violations_to_json(const std::vector<amalgam::diagram::SystemViolation>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json e;
    e["kind"] = v.kind;
    e["witness"] = v.detail;
    out.push_back(std::move(e));
  }
  return out;
}

// Validation outcome of a system file: either a usable system or the list of
// mathematical violations found on the way.
struct LoadedSystem {
  std::optional<amalgam::diagram::BASystem> system;
  json violations = json::array();
};

LoadedSystem load_system_reporting(const json& j) {
  LoadedSystem out;
  if (!j.is_object() || !j.contains("index") || !j.contains("algebras") || !j.contains("maps"))
    throw ContractError("input file: system needs 'index', 'algebras' and 'maps'");

  auto raw = j["index"];
  if (!raw.is_object() || !raw.contains("elements") || !raw.contains("leq"))
    throw ContractError("input file: poset needs 'elements' and 'leq'");
  std::vector<std::string> elements;
  for (const auto& e : raw["elements"]) elements.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : raw["leq"]) pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  auto poset_report = amalgam::order::validate_poset(elements, pairs);
  if (!poset_report.ok()) {
    for (const auto& v : poset_report.violations) {
      json e;
      e["kind"] = "poset-" + v.law;
      e["witness"] = v.witness;
      out.violations.push_back(std::move(e));
    }
    return out;
  }
  auto lattice_check = amalgam::order::check_almost_lattice(*poset_report.poset);
  if (!lattice_check.ok) {
    for (const auto& v : lattice_check.violations) {
      json e;
      e["kind"] = std::string("axiom-") + amalgam::order::axiom_name(v.axiom);
      e["witness"] = v.witness;
      e["detail"] = v.detail;
      out.violations.push_back(std::move(e));
    }
    return out;
  }
  auto system = amalgam::io::system_from_json(j);
  auto report = amalgam::diagram::validate_system(system);
  if (!report.ok) {
    out.violations = violations_to_json(report.violations);
    return out;
  }
  out.system = std::move(system);
  return out;
}

int cmd_validate(const Options& opt) {
  const json input = read_json_file(opt.input);
  json verdicts;
  json witnesses = json::array();
  bool ok = false;

  if (amalgam::io::looks_discrete(input)) {
    auto ds = amalgam::io::discrete_from_json(input);
    auto report = amalgam::stone::validate_discrete(ds);
    ok = report.ok;
    verdicts["kind"] = "discrete";
    verdicts["valid"] = ok;
    witnesses = violations_to_json(report.violations);
  } else {
    auto loaded = load_system_reporting(input);
    ok = loaded.system.has_value();
    verdicts["kind"] = "algebra";
    verdicts["valid"] = ok;
    witnesses = loaded.violations;
  }

  json inputs;
  inputs["input"] = opt.input;
  const json report = amalgam::io::make_report("validate", inputs, verdicts, witnesses);
  std::ostringstream summary;
  summary << "validate: " << (ok ? "valid" : "invalid") << "\n";
  for (const auto& w : witnesses)
    summary << "  violation: " << w["kind"].get<std::string>() << "\n";
  emit(opt, report, summary.str());
  return ok ? kExitOk : kExitVerdict;
}

int cmd_amalgamate(const Options& opt) {
  const json input = read_json_file(opt.input);
  auto loaded = load_system_reporting(input);
  json inputs;
  inputs["input"] = opt.input;

  if (!loaded.system) {
    const json report = amalgam::io::make_report(
        "amalgamate", inputs, json{{"valid", false}}, loaded.violations);
    emit(opt, report, "amalgamate: input system invalid\n");
    return kExitVerdict;
  }
  const auto& system = *loaded.system;
  auto limit = amalgam::amal::amalgamated_limit(system);
  auto emb = amalgam::amal::verify_embeddability(system, limit);
  auto degen = amalgam::amal::degenerate_identities(system, limit);

  json verdicts;
  verdicts["valid"] = true;
  verdicts["conditions"] = limit.conditions.size();
  verdicts["limit_atoms"] = limit.algebra.atom_count();
  json per_index;
  for (const auto& [id, good] : emb.per_index) per_index[id] = good;
  verdicts["complete_embeddings"] = per_index;
  verdicts["meet_identity"] = emb.meet_identity;
  verdicts["density"] = emb.density;
  verdicts["extended_correct"] = emb.extended_ok;
  verdicts["embeddability"] = emb.ok;
  json dg;
  if (degen.max_index) {
    dg["max_index"] = *degen.max_index;
    dg["iso_to_max"] = degen.iso_to_max;
    dg["direct_limit_agrees"] = degen.direct_limit_agrees;
  }
  dg["lattice"] = degen.lattice;
  if (degen.product_shape) dg["iso_to_free_product"] = degen.iso_to_free_product;
  verdicts["degenerate"] = dg;

  json witnesses = json::array();
  for (const auto& f : emb.failures) witnesses.push_back(f);

  const json report = amalgam::io::make_report("amalgamate", inputs, verdicts, witnesses);
  std::ostringstream summary;
  summary << "amalgamate: |D|=" << limit.conditions.size() << " limit_atoms="
          << limit.algebra.atom_count() << " embeddability=" << (emb.ok ? "ok" : "FAILED") << "\n";
  if (degen.max_index)
    summary << "  maximum index " << *degen.max_index
            << (degen.iso_to_max ? ": limit isomorphic to its algebra" : ": ISO CHECK FAILED")
            << "\n";
  if (degen.product_shape)
    summary << "  product shape: free-product isomorphism "
            << (degen.iso_to_free_product ? "holds" : "FAILED") << "\n";
  emit(opt, report, summary.str());
  bool degen_ok = (!degen.max_index || (degen.iso_to_max && degen.direct_limit_agrees)) &&
                  (!degen.product_shape || degen.iso_to_free_product);
  return emb.ok && degen_ok ? kExitOk : kExitVerdict;
}

json points_to_json(const amalgam::stone::DiscreteSpace& sp, const std::vector<std::uint32_t>& pts) {
  json out = json::array();
  for (std::uint32_t p : pts) out.push_back(sp.points[p]);
  return out;
}

int cmd_threads(const Options& opt) {
  const json input = read_json_file(opt.input);
  json inputs;
  inputs["input"] = opt.input;
  inputs["seed"] = opt.seed;
  inputs["product_budget"] = opt.product_budget;

  std::optional<amalgam::diagram::BASystem> system;
  std::optional<amalgam::stone::DiscreteSystem> ds;
  if (amalgam::io::looks_discrete(input)) {
    ds = amalgam::io::discrete_from_json(input);
    auto rep = amalgam::stone::validate_discrete(*ds);
    if (!rep.ok) {
      const json report = amalgam::io::make_report("threads", inputs, json{{"valid", false}},
                                                   violations_to_json(rep.violations));
      emit(opt, report, "threads: input system invalid\n");
      return kExitVerdict;
    }
  } else {
    auto loaded = load_system_reporting(input);
    if (!loaded.system) {
      const json report =
          amalgam::io::make_report("threads", inputs, json{{"valid", false}}, loaded.violations);
      emit(opt, report, "threads: input system invalid\n");
      return kExitVerdict;
    }
    system = std::move(loaded.system);
    ds = amalgam::stone::dualize(*system);
  }

  auto threads = amalgam::stone::thread_space(*ds, opt.product_budget);

  json verdicts;
  verdicts["valid"] = true;
  verdicts["thread_count"] = threads.threads.size();
  verdicts["oracle_agrees"] = threads.oracle_agrees;
  json surj;
  for (std::size_t i = 0; i < ds->count(); ++i) {
    std::vector<std::uint8_t> seen(ds->space(i).points.size(), 0);
    for (const auto& t : threads.threads) seen[t[i]] = 1;
    surj[ds->index().id(i)] = std::find(seen.begin(), seen.end(), 0) == seen.end();
  }
  verdicts["surjective"] = surj;
  verdicts["extended_commutes"] = threads.extended_commutes;
  verdicts["extended_correct"] = threads.extended_correct;

  // Seeded box-image spot checks.
  Rng rng(opt.seed);
  std::size_t box_pass = 0;
  json box_failures = json::array();
  for (std::size_t draw = 0; draw < opt.box_draws; ++draw) {
    std::vector<std::size_t> seed_set;
    const std::size_t picks = 1 + rng.below(std::min<std::size_t>(3, ds->count()));
    for (std::size_t k = 0; k < picks; ++k) seed_set.push_back(rng.below(ds->count()));
    auto domain = amalgam::order::closure(ds->index(), seed_set);
    std::vector<std::vector<std::uint32_t>> boxes;
    for (std::size_t m : domain.members()) {
      std::vector<std::uint32_t> box;
      const std::uint64_t style = rng.below(10);
      for (std::uint32_t p = 0; p < ds->space(m).points.size(); ++p) {
        if (style == 0) continue;                       // empty box
        if (style == 1 || rng.chance(1, 2)) box.push_back(p);  // full or half
      }
      boxes.push_back(std::move(box));
    }
    auto rep = amalgam::stone::box_image(*ds, threads.threads, domain, boxes);
    if (rep.ok())
      ++box_pass;
    else
      box_failures.push_back("draw " + std::to_string(draw));
  }
  verdicts["box_draws"] = opt.box_draws;
  verdicts["box_pass"] = box_pass;

  std::string bridge_verdict = "not_applicable";
  if (system) {
    try {
      auto limit = amalgam::amal::amalgamated_limit(*system);
      auto bridge = amalgam::stone::duality_bridge(*system, limit, *ds, threads.threads);
      bridge_verdict = bridge.ok() ? "bijective" : "FAILED";
    } catch (const BudgetError&) {
      bridge_verdict = "skipped_budget";
    }
  }
  verdicts["bridge"] = bridge_verdict;

  json witnesses = json::array();
  for (const auto& f : threads.failures) witnesses.push_back(f);
  for (const auto& f : box_failures) witnesses.push_back(f);

  const json report = amalgam::io::make_report("threads", inputs, verdicts, witnesses);
  std::ostringstream summary;
  summary << "threads: |X|=" << threads.threads.size()
          << " oracle_agrees=" << (threads.oracle_agrees ? "yes" : "NO") << " boxes=" << box_pass
          << "/" << opt.box_draws << " bridge=" << bridge_verdict << "\n";
  emit(opt, report, summary.str());

  const bool ok = threads.ok() && box_pass == opt.box_draws &&
                  (bridge_verdict == "bijective" || bridge_verdict == "not_applicable" ||
                   bridge_verdict == "skipped_budget");
  return ok ? kExitOk : kExitVerdict;
}

int cmd_generate(const Options& opt) {
  amalgam::diagram::GeneratorBudgets budgets;
  budgets.max_index_size = opt.max_index_size;
  budgets.max_fiber = opt.max_fiber;
  budgets.product_budget = opt.product_budget;
  auto generated = amalgam::diagram::random_coordinate_system(opt.seed, budgets);
  const json file = amalgam::io::system_to_json(generated.system);
  const std::string text = amalgam::io::dump(file);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw ContractError("cannot open output file '" + opt.output + "'");
    out << text;
    std::cout << "generate: seed=" << opt.seed << " shape=" << generated.shape << " |I|="
              << generated.system.count() << " -> " << opt.output << "\n";
  }
  return kExitOk;
}

// Literal enumeration of the regular open down-sets of the condition preorder.
std::uint64_t literal_regular_open_count(const amalgam::amal::ConditionSet& conds) {
  const std::size_t n = conds.size();
  if (n > 18) throw BudgetError("oracle: condition set too large for literal enumeration (" +
                                std::to_string(n) + " > 18)");
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (conds.leq(a, b)) below[b].push_back(a);
  std::uint64_t count = 0;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
    bool down = true;
    for (std::size_t p = 0; p < n && down; ++p) {
      if (!(u >> p & 1)) continue;
      for (std::size_t q : below[p])
        if (!(u >> q & 1)) { down = false; break; }
    }
    if (!down) continue;
    // regular open: u == interior of closure of u
    bool regular = true;
    for (std::size_t p = 0; p < n && regular; ++p) {
      bool dense_below = true;
      for (std::size_t q : below[p]) {
        bool meets = false;
        for (std::size_t r : below[q])
          if (u >> r & 1) { meets = true; break; }
        if (!meets) { dense_below = false; break; }
      }
      if (dense_below != static_cast<bool>(u >> p & 1)) regular = false;
    }
    if (regular) ++count;
  }
  return count;
}

int cmd_oracle(const Options& opt) {
  const json input = read_json_file(opt.input);
  json inputs;
  inputs["input"] = opt.input;
  inputs["seed"] = opt.seed;
  auto loaded = load_system_reporting(input);
  if (!loaded.system) {
    const json report =
        amalgam::io::make_report("oracle", inputs, json{{"valid", false}}, loaded.violations);
    emit(opt, report, "oracle: input system invalid\n");
    return kExitVerdict;
  }
  const auto& system = *loaded.system;
  const std::string fault = fault_injection();

  json verdicts;
  json witnesses = json::array();
  bool all_ok = true;

  auto limit = amalgam::amal::amalgamated_limit(system);

  {  // completion vs literal regular-open enumeration
    std::uint64_t literal = literal_regular_open_count(limit.conditions);
    std::uint64_t fast = std::uint64_t{1} << limit.algebra.atom_count();
    if (fault == "completion" && limit.algebra.atom_count() > 0) fast >>= 1;
    const bool ok = literal == fast;
    verdicts["completion_oracle"] = ok;
    if (!ok) {
      all_ok = false;
      witnesses.push_back("regular-open count " + std::to_string(literal) +
                          " differs from completion size " + std::to_string(fast));
    }
  }

  {  // canonical vs existential witness order
    const auto& D = limit.conditions;
    if (D.size() > 200)
      throw BudgetError("oracle: |D| = " + std::to_string(D.size()) +
                        " too large for the existential-witness sweep (cap 200)");
    bool ok = true;
    std::string counterexample;
    for (std::size_t a = 0; a < D.size() && ok; ++a)
      for (std::size_t b = 0; b < D.size(); ++b) {
        bool fast = D.leq(a, b);
        if (fault == "order" && a == 0 && b == D.size() - 1) fast = !fast;
        if (fast != D.leq_existential(D.at(a), D.at(b))) {
          ok = false;
          counterexample = D.describe(D.at(a)) + " vs " + D.describe(D.at(b));
          break;
        }
      }
    // Reflexivity and transitivity of the order.
    for (std::size_t a = 0; a < D.size() && ok; ++a)
      if (!D.leq(a, a)) { ok = false; counterexample = "reflexivity at " + D.describe(D.at(a)); }
    verdicts["order_oracle"] = ok;
    if (!ok) {
      all_ok = false;
      witnesses.push_back("order disagreement: " + counterexample);
    }
  }

  {  // thread filtration vs constructive enumeration
    auto ds = amalgam::stone::dualize(system);
    auto threads = amalgam::stone::thread_space(ds, opt.product_budget);
    bool ok = threads.oracle_agrees;
    if (fault == "threads") ok = false;
    verdicts["thread_oracle"] = ok;
    if (!ok) {
      all_ok = false;
      witnesses.push_back(fault == "threads" ? "injected thread fault"
                                             : threads.failures.front());
    }

    // box-image recipe vs brute force
    Rng rng(opt.seed);
    bool boxes_ok = true;
    std::string box_witness;
    for (std::size_t draw = 0; draw < opt.box_draws && boxes_ok; ++draw) {
      std::vector<std::size_t> seed_set;
      const std::size_t picks = 1 + rng.below(std::min<std::size_t>(3, ds.count()));
      for (std::size_t k = 0; k < picks; ++k) seed_set.push_back(rng.below(ds.count()));
      auto domain = amalgam::order::closure(ds.index(), seed_set);
      std::vector<std::vector<std::uint32_t>> boxes;
      for (std::size_t m : domain.members()) {
        std::vector<std::uint32_t> box;
        for (std::uint32_t p = 0; p < ds.space(m).points.size(); ++p)
          if (rng.chance(1, 2)) box.push_back(p);
        boxes.push_back(std::move(box));
      }
      auto rep = amalgam::stone::box_image(ds, threads.threads, domain, boxes);
      bool ok_draw = rep.ok();
      if (fault == "boxes" && draw == 0) ok_draw = false;
      if (!ok_draw) {
        boxes_ok = false;
        box_witness = "draw " + std::to_string(draw);
      }
    }
    verdicts["box_oracle"] = boxes_ok;
    if (!boxes_ok) {
      all_ok = false;
      witnesses.push_back("box-image disagreement at " + box_witness);
    }
  }

  const json report = amalgam::io::make_report("oracle", inputs, verdicts, witnesses);
  std::ostringstream summary;
  summary << "oracle: " << (all_ok ? "all oracles agree" : "DISAGREEMENT") << "\n";
  for (const auto& w : witnesses) summary << "  " << w.get<std::string>() << "\n";
  emit(opt, report, summary.str());
  return all_ok ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite workbench for amalgamated limits of Boolean-algebra systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) cmd->add_option("--input", opt.input, "input file")->required();
    cmd->add_option("--output", opt.output, "report/output file");
    cmd->add_option("--seed", opt.seed, "random seed")->envname("AMALGAM_SEED");
    cmd->add_option("--max-index-size", opt.max_index_size, "largest index set generated");
    cmd->add_option("--max-fiber", opt.max_fiber, "largest fiber value-set generated");
    cmd->add_option("--product-budget", opt.product_budget, "bound on the thread-space product");
    cmd->add_option("--box-draws", opt.box_draws, "box-image spot checks");
    cmd->add_flag("--verbose", opt.verbose, "timing and progress on stderr");
  };

  auto* validate = app.add_subcommand("validate", "validate a system file");
  add_common(validate, true);
  auto* amalgamate = app.add_subcommand("amalgamate", "build and verify the amalgamated limit");
  add_common(amalgamate, true);
  auto* threads = app.add_subcommand("threads", "enumerate coherent threads and check the dual limit");
  add_common(threads, true);
  auto* generate = app.add_subcommand("generate", "emit a seeded random system file");
  add_common(generate, false);
  auto* oracle = app.add_subcommand("oracle", "run every brute-force oracle against the fast paths");
  add_common(oracle, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInput : kExitOk;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = kExitInput;
  try {
    if (validate->parsed()) code = cmd_validate(opt);
    else if (amalgamate->parsed()) code = cmd_amalgamate(opt);
    else if (threads->parsed()) code = cmd_threads(opt);
    else if (generate->parsed()) code = cmd_generate(opt);
    else if (oracle->parsed()) code = cmd_oracle(opt);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    code = kExitBudget;
  } catch (const DefectError& e) {
    std::cerr << "defect: " << e.what() << "\n";
    code = kExitVerdict;
  } catch (const ContractError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    code = kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    code = kExitInput;
  }
  if (opt.verbose) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cerr << "elapsed_ms=" << elapsed << "\n";
  }
  return code;
}

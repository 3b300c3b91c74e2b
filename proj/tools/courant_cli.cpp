// courant: batch command-line surface for the Courant algebroid engine.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "courant/charclass.hpp"
#include "courant/cohomology.hpp"
#include "courant/dirac.hpp"
#include "courant/error.hpp"
#include "courant/io.hpp"
#include "courant/selftest.hpp"

#ifndef COURANT_PRESETS_DIR
#define COURANT_PRESETS_DIR "presets"
#endif

using namespace courant;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2 };

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  int instances = 40;
  int k = 1;
  int degree = -1;
  int bound = 2;
  std::string structure, connection, connection2, frame, linear, metric, presets = COURANT_PRESETS_DIR;
  std::string cochain, cochain2, mutate;
  std::vector<std::string> sections;
};

/// Input errors are reported with exit code 2 before any report is printed.
struct InputFailure {
  std::string message;
};

StructurePtr load_structure(const Options& o) {
  StructurePtr E = structure_from_json(read_json_file(o.structure));
  if (!o.mutate.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(o.mutate);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4) throw InputFailure{"--mutate expects a,b,d,delta (1-based frame indices)"};
    int a = std::stoi(parts[0]) - 1, b = std::stoi(parts[1]) - 1, d = std::stoi(parts[2]) - 1;
    if (std::min({a, b, d}) < 0 || std::max({a, b, d}) >= E->r()) throw InputFailure{"--mutate index out of range"};
    E = mutate_structure(*E, a, b, d, parse_rat(parts[3]));
  }
  return E;
}

void require_theta(const StructurePtr& E) {
  if (!E->has_theta()) throw StructureError("not a Courant algebroid: " + E->theta_error());
}

std::vector<Section> load_sections(const CourantStructure& E, const Options& o) {
  std::vector<Section> out;
  for (const auto& s : o.sections) out.push_back(parse_section(E, s));
  return out;
}

Json witness_json(const CourantStructure& E, const AxiomWitness& w) {
  Json j;
  j["axiom"] = axiom_name(w.axiom);
  Json secs = Json::array();
  for (const auto& s : w.sections) secs.push_back(to_json(s));
  j["sections"] = secs;
  j["function"] = to_json(w.function);
  j["residual"] = w.residual;
  j["replayed"] = replay(E, w);
  return j;
}

Json lform_json(const LForm& w) {
  Json rows = Json::array();
  for (const auto& [mask, v] : w.components()) {
    Json idx = Json::array();
    for (int a = 0; a < w.m(); ++a)
      if (mask & (1u << a)) idx.push_back(a + 1);
    Json e;
    e["frame"] = idx;
    e["value"] = to_json(v);
    rows.push_back(e);
  }
  Json out;
  out["degree"] = w.degree();
  out["components"] = rows;
  return out;
}

Json end_cochain_json(const EndCochain& F) {
  Json rows = Json::array();
  for (int nu = 0; nu < F.m(); ++nu) {
    Json row = Json::array();
    for (int mu = 0; mu < F.m(); ++mu) row.push_back(F(nu, mu).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json exactness_json(const ExactnessResult& res) {
  Json j;
  j["exact"] = res.exact;
  j["bound"] = res.bound;
  j["witness"] = res.witness ? to_json(*res.witness) : Json(nullptr);
  return j;
}

// Commands fill `report` and return the exit code.

int cmd_check_axioms(const Options& o, Json& report) {
  auto E = load_structure(o);
  AxiomReport rep = check_axioms(*E, o.seed, o.instances);
  report["seed"] = rep.seed;
  Json results = Json::array();
  for (const auto& res : rep.results) {
    Json j;
    j["axiom"] = axiom_name(res.axiom);
    j["pass"] = res.pass;
    j["instances"] = res.instances;
    if (res.witness) j["witness"] = witness_json(*E, *res.witness);
    results.push_back(j);
  }
  report["results"] = results;
  report["theta"] = E->has_theta() ? Json(E->theta().to_string()) : Json(nullptr);
  if (!E->has_theta()) report["theta_error"] = E->theta_error();
  bool pass = rep.all_pass() && E->has_theta();
  if (E->has_theta()) {
    bool master = pbracket(E->theta(), E->theta()).is_zero();
    report["master_equation"] = master;
    pass = pass && master;
  }
  return pass ? kPass : kFail;
}

int cmd_bracket(const Options& o, Json& report) {
  auto E = load_structure(o);
  auto s = load_sections(*E, o);
  if (s.size() != 2) throw InputFailure{"bracket needs exactly two --section arguments"};
  report["bracket"] = to_json(bracket(*E, s[0], s[1]));
  report["anchor"] = to_json(anchor_of(*E, s[0]));
  report["pairing"] = to_json(pairing(*E, s[0], s[1]));
  return kPass;
}

int cmd_d(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  Cochain w = parse_cochain(E, o.cochain, o.degree);
  Cochain dw = dE(w);
  report["input"] = to_json(w);
  report["dE"] = to_json(dw);
  report["closed"] = dw.is_zero();
  return kPass;
}

int cmd_cup(const Options& o, Json& report) {
  auto E = load_structure(o);
  Cochain a = parse_cochain(E, o.cochain, -1), b = parse_cochain(E, o.cochain2, -1);
  report["cup"] = to_json(cup(a, b));
  return kPass;
}

int cmd_evaluate(const Options& o, Json& report) {
  auto E = load_structure(o);
  Cochain w = parse_cochain(E, o.cochain, o.degree);
  auto s = load_sections(*E, o);
  if (static_cast<int>(s.size()) != w.degree())
    throw InputFailure{"evaluate needs " + std::to_string(w.degree()) + " --section arguments"};
  report["value"] = to_json(evaluate(w, s));
  return kPass;
}

int cmd_symbol(const Options& o, Json& report) {
  auto E = load_structure(o);
  Cochain w = parse_cochain(E, o.cochain, o.degree);
  auto s = load_sections(*E, o);
  if (w.degree() < 2 || static_cast<int>(s.size()) != w.degree() - 2)
    throw InputFailure{"symbol needs a cochain of degree k >= 2 and k - 2 --section arguments"};
  report["symbol"] = to_json(symbol(w, s));
  return kPass;
}

int cmd_curvature(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  Connection nabla = connection_from_json(E, read_json_file(o.connection));
  EndCochain F = curvature(nabla);
  report["curvature"] = end_cochain_json(F);
  report["flat"] = F.is_zero();
  return kPass;
}

int cmd_bianchi(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  Connection nabla = connection_from_json(E, read_json_file(o.connection));
  EndCochain defect = end_derivative(nabla, curvature(nabla));
  report["defect"] = end_cochain_json(defect);
  report["pass"] = defect.is_zero();
  return defect.is_zero() ? kPass : kFail;
}

int cmd_modular(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  Connection line = connection_from_json(E, read_json_file(o.connection));
  if (line.m() != 1) throw InputFailure{"modular needs a line bundle connection (m = 1)"};
  EndCochain F = curvature(line);
  if (!F.is_zero()) {
    report["flat"] = false;
    report["curvature"] = end_cochain_json(F);
    return kFail;
  }
  auto mc = modular_cocycle(line);
  report["flat"] = true;
  report["xi"] = to_json(mc.xi);
  report["closed"] = dE(mc.xi).is_zero();
  report["exactness"] = exactness_json(certify_exact(mc.xi, o.bound));
  return report["closed"].get<bool>() ? kPass : kFail;
}

int cmd_unimodular(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  auto cert = unimodularity_certificate(E, o.bound);
  report["xi_top"] = to_json(cert.xi);
  report["closed"] = dE(cert.xi).is_zero();
  report["bound"] = cert.bound;
  report["witness"] = cert.witness ? to_json(*cert.witness) : Json(nullptr);
  return cert.witness && report["closed"].get<bool>() ? kPass : kFail;
}

int cmd_chern(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  Connection nabla = connection_from_json(E, read_json_file(o.connection));
  Cochain ch = chern(nabla, o.k);
  report["k"] = o.k;
  report["chern"] = to_json(ch);
  report["closed"] = dE(ch).is_zero();
  return report["closed"].get<bool>() ? kPass : kFail;
}

int cmd_chern_simons(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  Connection a = connection_from_json(E, read_json_file(o.connection));
  Connection b = connection_from_json(E, read_json_file(o.connection2));
  Cochain cs = cs_between(a, b, o.k);
  bool ok = dE(cs) == chern(b, o.k) - chern(a, o.k);
  report["k"] = o.k;
  report["chern_simons"] = to_json(cs);
  report["transgression"] = ok;
  return ok ? kPass : kFail;
}

int cmd_secondary(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  LinearConnection L = o.linear.empty() ? zero_linear_connection(*E)
                                        : linear_connection_from_json(*E, read_json_file(o.linear));
  RatMatrix g = o.metric.empty() ? RatMatrix::identity(E->r()) : metric_from_json(read_json_file(o.metric), E->r());
  Cochain cs = secondary_class(E, L, g, o.k);
  report["k"] = o.k;
  report["degree"] = cs.degree();
  report["representative"] = to_json(cs);
  report["table"] = evaluation_table(cs);
  report["closed"] = dE(cs).is_zero();
  return report["closed"].get<bool>() ? kPass : kFail;
}

int cmd_cohomology(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  if (!o.cochain.empty()) {
    Cochain w = parse_cochain(E, o.cochain, o.degree);
    report["cochain"] = to_json(w);
    report["closed"] = certify_closed(w);
    report["exactness"] = exactness_json(certify_exact(w, o.bound));
    return kPass;
  }
  if (E->n() != 0) throw InputFailure{"cohomology dimensions need n = 0; pass --cochain to certify a class"};
  if (o.degree < 0) throw InputFailure{"cohomology needs --degree"};
  auto pc = cohomology_point(E, o.degree);
  report["k"] = pc.k;
  report["dim"] = pc.dimension;
  report["N"] = 0;
  Json reps = Json::array();
  for (const auto& w : pc.representatives) reps.push_back(to_json(w));
  report["representatives"] = reps;
  return kPass;
}

int cmd_dirac_check(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  auto frame = frame_from_json(*E, read_json_file(o.frame));
  auto rep = check_dirac(E, frame);
  report["isotropic"] = rep.isotropic;
  report["involutive"] = rep.involutive;
  report["dirac"] = rep.is_dirac();
  if (rep.witness) {
    Json w;
    w["kind"] = rep.witness->kind;
    Json idx = Json::array();
    for (int i : rep.witness->indices) idx.push_back(i + 1);
    w["frame"] = idx;
    w["value"] = to_json(rep.witness->value);
    w["replayed"] = replay(*E, frame, *rep.witness);
    report["witness"] = w;
    return kFail;
  }
  const auto& A = rep.subbundle->algebroid();
  Json anchor = Json::array();
  for (const auto& v : A.anchor) anchor.push_back(to_json(v));
  Json c = Json::array();
  for (int a = 0; a < A.m; ++a) {
    Json rows = Json::array();
    for (int b = 0; b < A.m; ++b) rows.push_back(to_json(A.c[a][b]));
    c.push_back(rows);
  }
  report["anchor"] = anchor;
  report["c"] = c;
  report["jacobi"] = rep.jacobi;
  auto rmc = relative_modular_class(*rep.subbundle, o.bound);
  Json mod;
  mod["xi"] = lform_json(rmc.xi);
  mod["closed"] = rmc.closed;
  mod["bound"] = rmc.bound;
  mod["witness"] = rmc.witness ? lform_json(*rmc.witness) : Json(nullptr);
  report["relative_modular_class"] = mod;
  return rep.jacobi && rmc.closed ? kPass : kFail;
}

int cmd_restrict(const Options& o, Json& report) {
  auto E = load_structure(o);
  require_theta(E);
  auto frame = frame_from_json(*E, read_json_file(o.frame));
  auto rep = check_dirac(E, frame);
  if (!rep.is_dirac()) {
    report["dirac"] = false;
    return kFail;
  }
  Cochain w = parse_cochain(E, o.cochain, o.degree);
  report["restriction"] = lform_json(restrict(w, *rep.subbundle));
  bool ok = restriction_commutes(w, *rep.subbundle);
  report["commutes_with_differentials"] = ok;
  return ok ? kPass : kFail;
}

int cmd_export(const Options& o, Json& report) {
  report = structure_to_json(*load_structure(o));
  return kPass;
}

int cmd_selftest(const Options& o, Json& report) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(o.presets)) throw InputFailure{"presets directory '" + o.presets + "' not found"};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.presets))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputFailure{"no corpus files in '" + o.presets + "'"};
  bool all = true;
  Json corpus = Json::array();
  for (const auto& path : files) {
    Json doc = read_json_file(path.string());
    Json entry;
    entry["file"] = path.filename().string();
    if (!doc.contains("n")) {
      entry["skipped"] = "not an algebroid";
      corpus.push_back(entry);
      continue;
    }
    auto E = structure_from_json(doc);
    Json checks = Json::array();
    for (const auto& c : invariant_suite(E, o.seed)) {
      Json j;
      j["check"] = c.name;
      j["pass"] = c.pass;
      j["instances"] = c.instances;
      if (!c.pass) j["detail"] = c.detail;
      all = all && c.pass;
      checks.push_back(j);
    }
    entry["checks"] = checks;
    corpus.push_back(entry);
  }
  report["corpus"] = corpus;
  return all ? kPass : kFail;
}

void print_text(const Json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    out << indent << it.key() << ":";
    if (v.is_object()) {
      out << "\n";
      print_text(v, indent + "  ", out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << "\n";
      for (const auto& e : v) {
        out << indent << "  -\n";
        print_text(e, indent + "    ", out);
      }
    } else if (v.is_string()) {
      out << " " << v.get<std::string>() << "\n";
    } else {
      out << " " << v.dump() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic engine for Courant algebroids"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Print the report as JSON");
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();

  using Handler = int (*)(const Options&, Json&);
  std::map<CLI::App*, std::pair<std::string, Handler>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Handler h, bool structure = true) {
    CLI::App* s = app.add_subcommand(name, help);
    if (structure) s->add_option("structure", o.structure, "Algebroid JSON file")->required()->check(CLI::ExistingFile);
    handlers[s] = {name, h};
    return s;
  };
  auto cochain_opts = [&](CLI::App* s, bool need_degree) {
    s->add_option("--cochain", o.cochain, "Cochain in graded text form, e.g. 1/2*x1*xi{1,3}*p2")->required();
    auto d = s->add_option("--degree", o.degree, "Cochain degree (inferred when omitted)");
    if (need_degree) d->required();
  };

  sub("check-axioms", "Verify C1-C4, A1, A2 and the master equation", cmd_check_axioms)
      ->add_option("--instances", o.instances, "Random instances per axiom")
      ->capture_default_str();
  for (auto* s : app.get_subcommands({}))
    s->add_option("--mutate", o.mutate, "Shift one structure function: a,b,d,delta (1-based)");
  auto* br = sub("bracket", "Dorfman bracket of two sections", cmd_bracket);
  br->add_option("--section", o.sections, "Section components, comma separated")->required();
  cochain_opts(sub("d", "Differential dE of a cochain", cmd_d), false);
  auto* cu = sub("cup", "Cup product of two cochains", cmd_cup);
  cu->add_option("--a", o.cochain, "First cochain")->required();
  cu->add_option("--b", o.cochain2, "Second cochain")->required();
  auto* ev = sub("evaluate", "Evaluate a cochain on sections", cmd_evaluate);
  cochain_opts(ev, false);
  ev->add_option("--section", o.sections, "Section components, comma separated");
  auto* sy = sub("symbol", "Symbol of a cochain on k - 2 sections", cmd_symbol);
  cochain_opts(sy, false);
  sy->add_option("--section", o.sections, "Section components, comma separated");
  for (auto [name, help, h] : {std::tuple{"curvature", "Curvature of an E-connection", cmd_curvature},
                               std::tuple{"bianchi", "Check the Bianchi identity", cmd_bianchi},
                               std::tuple{"modular", "Modular cocycle of a flat line connection", cmd_modular}}) {
    auto* s = sub(name, help, h);
    s->add_option("connection", o.connection, "Connection JSON file")->required()->check(CLI::ExistingFile);
    if (std::string(name) == "modular") s->add_option("--bound", o.bound, "Degree bound for exactness")->capture_default_str();
  }
  sub("unimodular", "Modular cocycle of the top representation and its primitive", cmd_unimodular)
      ->add_option("--bound", o.bound, "Degree bound for the primitive")
      ->capture_default_str();
  auto* ch = sub("chern", "Chern form tr F^k", cmd_chern);
  ch->add_option("connection", o.connection, "Connection JSON file")->required()->check(CLI::ExistingFile);
  ch->add_option("--k", o.k, "Index k")->capture_default_str();
  auto* cs = sub("chern-simons", "Chern-Simons form along the straight line", cmd_chern_simons);
  cs->add_option("from", o.connection, "Connection JSON file")->required()->check(CLI::ExistingFile);
  cs->add_option("to", o.connection2, "Connection JSON file")->required()->check(CLI::ExistingFile);
  cs->add_option("--k", o.k, "Index k")->capture_default_str();
  auto* se = sub("secondary", "Secondary characteristic class representative", cmd_secondary);
  se->add_option("--k", o.k, "Class index; the degree is 4k - 3")->capture_default_str();
  se->add_option("--linear", o.linear, "Linear connection JSON (default zero)")->check(CLI::ExistingFile);
  se->add_option("--metric", o.metric, "Positive definite metric JSON (default identity)")->check(CLI::ExistingFile);
  auto* co = sub("cohomology", "Point cohomology dimensions, or a closed/exact certificate", cmd_cohomology);
  co->add_option("--degree", o.degree, "Cochain degree");
  co->add_option("--cochain", o.cochain, "Cochain to certify");
  co->add_option("--bound", o.bound, "Degree bound for the primitive")->capture_default_str();
  auto* dc = sub("dirac-check", "Check a Dirac structure and its induced Lie algebroid", cmd_dirac_check);
  dc->add_option("frame", o.frame, "Dirac frame JSON file")->required()->check(CLI::ExistingFile);
  dc->add_option("--bound", o.bound, "Degree bound for the modular primitive")->capture_default_str();
  auto* re = sub("restrict", "Restrict a cochain to a Dirac structure", cmd_restrict);
  re->add_option("frame", o.frame, "Dirac frame JSON file")->required()->check(CLI::ExistingFile);
  cochain_opts(re, false);
  sub("export", "Print the algebroid as raw tables", cmd_export);
  sub("selftest", "Run the invariant suite on the bundled corpus", cmd_selftest, false)
      ->add_option("--presets", o.presets, "Corpus directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto& [name, handler] = handlers.at(chosen);
  Json report;
  report["command"] = name;
  int code = kInput;
  try {
    code = handler(o, report);
  } catch (const InputFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ContextMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const StructureError& e) {
    report["pass"] = false;
    report["error"] = e.what();
    code = kFail;
  }
  if (name != "export") report["pass"] = code == kPass;
  if (o.json || name == "export")
    std::cout << report.dump(2) << "\n";
  else
    print_text(report, "", std::cout);
  return code;
}

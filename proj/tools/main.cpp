// su3forge command-line front end.  Every subcommand emits one JSON report
// (schema version "su3-forge/1") to stdout or --output FILE.
// Exit codes: 0 success, 1 no solution / no relation, 2 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "su3forge/cartan.hpp"
#include "su3forge/cost.hpp"
#include "su3forge/dod.hpp"
#include "su3forge/errors.hpp"
#include "su3forge/gates.hpp"
#include "su3forge/gellmann.hpp"
#include "su3forge/mat3.hpp"
#include "su3forge/symmetry.hpp"

namespace {

using nlohmann::json;
using namespace su3forge;

constexpr const char* kSchemaVersion = "su3-forge/1";

// ---------------------------------------------------------------------------
// JSON plumbing.  Complex numbers travel as [re, im]; matrices as 3x3 nested
// arrays of those pairs, row-major.

json cx_to_json(const Cx& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const CMat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(cx_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Cx cx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex entries must be [re, im] number pairs");
  }
  return Cx(j[0].get<double>(), j[1].get<double>());
}

CMat3 matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.size() != 3) {
    throw std::invalid_argument("matrix must be an array of exactly 3 rows");
  }
  CMat3 m;
  for (int r = 0; r < 3; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 3) {
      throw std::invalid_argument("matrix rows must hold exactly 3 entries");
    }
    for (int c = 0; c < 3; ++c) m(r, c) = cx_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json params_to_json(const DodParams& p) {
  return json{{"phi", {p.phi[0], p.phi[1], p.phi[2]}},
              {"m01", cx_to_json(p.m01)},
              {"m02", cx_to_json(p.m02)},
              {"m12", cx_to_json(p.m12)}};
}

DodParams params_from_json(const json& j) {
  const json& phi = j.at("phi");
  if (!phi.is_array() || phi.size() != 3) {
    throw std::invalid_argument("phi must hold exactly 3 angles");
  }
  DodParams p;
  for (int i = 0; i < 3; ++i) p.phi[static_cast<std::size_t>(i)] = phi[static_cast<std::size_t>(i)].get<double>();
  p.m01 = cx_from_json(j.at("m01"));
  p.m02 = cx_from_json(j.at("m02"));
  p.m12 = cx_from_json(j.at("m12"));
  return p;
}

json discrepancies_to_json(const DiscrepancyReport& rep) {
  json out = json::array();
  for (const DiscrepancyEntry& e : rep.entries) {
    out.push_back({{"item", e.item},
                   {"printed", e.printed},
                   {"recomputed", e.recomputed},
                   {"delta", e.delta},
                   {"match", e.match}});
  }
  return out;
}

json make_report(const std::string& command, json inputs) {
  return json{{"version", kSchemaVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"results", json::object()},
              {"discrepancies", json::array()}};
}

int emit_report(const json& report, const std::string& out_path, int code) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return code;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return 2;
  }
  out << text;
  return code;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json doc;
  in >> doc;
  return doc;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Input helpers.

CMat3 gate_by_name(const std::string& name) {
  if (name == "wh") return walsh_hadamard();
  if (name == "swap12") return swap12();
  if (name == "identity") return CMat3::identity();
  throw std::invalid_argument("unknown gate: " + name);
}

// Accepts either a bare matrix document {"rows": ...} or a report from the
// random subcommand that carries exactly one matrix.
CMat3 load_matrix_document(const std::string& path) {
  const json doc = load_json_file(path);
  if (doc.contains("rows")) return matrix_from_json(doc.at("rows"));
  if (doc.contains("results") && doc.at("results").contains("matrices")) {
    const json& mats = doc.at("results").at("matrices");
    if (mats.is_array() && mats.size() == 1 && mats[0].contains("rows")) {
      return matrix_from_json(mats[0].at("rows"));
    }
    throw std::invalid_argument(path + ": expected exactly one matrix under results.matrices");
  }
  throw std::invalid_argument(path + ": expected a matrix document with \"rows\"");
}

// Reads a solution collection: either a decompose report (descends into
// "results") or a bare {"target", "solutions", ...} object.  Residuals are
// recomputed when absent or inconsistent.
SolutionSet solutions_from_json(const json& doc) {
  const json* body = &doc;
  if (doc.contains("results") && doc.at("results").contains("solutions")) body = &doc.at("results");
  if (!body->contains("target") || !body->contains("solutions")) {
    throw std::invalid_argument("solutions document needs \"target\" and \"solutions\"");
  }
  SolutionSet set;
  set.target = matrix_from_json(body->at("target"));
  for (const json& s : body->at("solutions")) set.solutions.push_back(params_from_json(s));
  if (body->contains("residuals") && body->at("residuals").size() == set.solutions.size()) {
    for (const json& r : body->at("residuals")) set.residuals.push_back(r.get<double>());
  } else {
    for (const DodParams& p : set.solutions) {
      set.residuals.push_back(frobenius_distance(compose_dod(p), set.target));
    }
  }
  return set;
}

std::vector<DodParams> load_reference_rows(const std::string& fixtures_dir) {
  const json doc = load_json_file(fixtures_dir + "/table1.json");
  std::vector<DodParams> rows;
  for (const json& r : doc.at("rows")) rows.push_back(params_from_json(r));
  if (rows.size() != 5) {
    throw std::invalid_argument("table1.json must hold exactly five parameter rows");
  }
  return rows;
}

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t expect,
                                      const std::string& what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument(what + ": bad number '" + tok + "'");
    vals.push_back(v);
  }
  if (vals.size() != expect) {
    throw std::invalid_argument(what + ": expected " + std::to_string(expect) +
                                " comma-separated values");
  }
  return vals;
}

std::string variant_name(DiagonalVariant v) {
  switch (v) {
    case DiagonalVariant::Standard: return "standard";
    case DiagonalVariant::NineEleven: return "variant9-11";
    case DiagonalVariant::TenTwelve: return "variant10-12";
  }
  throw std::invalid_argument("unknown diagonal variant");
}

DiagonalVariant variant_by_name(const std::string& name) {
  if (name == "standard") return DiagonalVariant::Standard;
  if (name == "variant9-11") return DiagonalVariant::NineEleven;
  if (name == "variant10-12") return DiagonalVariant::TenTwelve;
  throw std::invalid_argument("unknown basis: " + name);
}

// ---------------------------------------------------------------------------
// decompose

json cartan_factors_to_json(const CartanFactors& f, const CMat3& target) {
  return json{{"split", std::string(1, f.split.name)},
              {"global_phase", f.global_phase},
              {"diag_coeffs", f.diag_coeffs},
              {"first_off", f.first_off},
              {"second_off", f.second_off},
              {"residual", frobenius_distance(compose_factors(f), target)}};
}

int run_decompose(const std::string& method, const CMat3& u, const SolveConfig& cfg,
                  json inputs, const std::string& out_path) {
  json report = make_report("decompose", std::move(inputs));
  json& res = report["results"];
  res["method"] = method;
  res["target"] = matrix_to_json(u);

  if (method == "dod") {
    SolutionSet set;
    try {
      set = solve_dod(u, cfg);
    } catch (const NoSolutionFound& ex) {
      res["count"] = 0;
      res["solutions"] = json::array();
      res["residuals"] = json::array();
      std::fprintf(stderr, "no solution: %s\n", ex.what());
      return emit_report(report, out_path, 1);
    }
    json sols = json::array();
    json resid = json::array();
    for (const DodParams& p : set.solutions) sols.push_back(params_to_json(p));
    for (double r : set.residuals) resid.push_back(r);
    res["count"] = set.solutions.size();
    res["solutions"] = std::move(sols);
    res["residuals"] = std::move(resid);
    return emit_report(report, out_path, set.solutions.empty() ? 1 : 0);
  }

  if (method == "givens") {
    const GivensChain chain = eliminate_two_photon(cartan_decompose(u, split('C')));
    json factors = json::array();
    for (const GivensFactor& f : chain.factors) {
      factors.push_back({{"support", f.support},
                         {"angle", f.angle},
                         {"variant", variant_name(f.coeffs.variant)},
                         {"coeffs", f.coeffs.c}});
    }
    res["source_split"] = std::string(1, chain.source.split.name);
    res["factors"] = std::move(factors);
    res["compresses_to_three"] = chain.compresses_to_three();
    res["residual"] = frobenius_distance(compose_chain(chain), u);
    return emit_report(report, out_path, 0);
  }

  // cartan-a | cartan-b | cartan-c
  const char split_name = static_cast<char>(std::toupper(static_cast<unsigned char>(method.back())));
  const CartanFactors f = cartan_decompose(u, split(split_name));
  res.update(cartan_factors_to_json(f, u));
  return emit_report(report, out_path, 0);
}

// ---------------------------------------------------------------------------
// verify-paper

struct SectionOutcome {
  json checks = json::array();
  DiscrepancyReport discrepancies;
  bool passed = true;

  void check(const std::string& item, double value, bool pass) {
    checks.push_back({{"item", item}, {"value", value}, {"pass", pass}});
    passed = passed && pass;
  }
};

// A published table is "verified" when its recomputation mismatches exactly
// the documented set: no new failures, and every documented failure observed.
void audit_against_known(SectionOutcome& out, const DiscrepancyReport& rep,
                         const json& known, const std::string& section) {
  out.discrepancies = rep;
  std::set<std::string> observed;
  for (const DiscrepancyEntry& e : rep.entries) {
    if (!e.match) observed.insert(e.item);
  }
  std::set<std::string> documented;
  if (known.contains(section)) {
    for (const json& item : known.at(section)) documented.insert(item.get<std::string>());
  }
  std::size_t undocumented = 0;
  std::size_t unreproduced = 0;
  for (const std::string& it : observed) {
    if (documented.count(it) == 0) ++undocumented;
  }
  for (const std::string& it : documented) {
    if (observed.count(it) == 0) ++unreproduced;
  }
  out.check(section + " undocumented mismatches", static_cast<double>(undocumented),
            undocumented == 0);
  out.check(section + " documented mismatches reproduced",
            static_cast<double>(documented.size() - unreproduced), unreproduced == 0);
}

SectionOutcome section_table1(const std::vector<DodParams>& rows) {
  SectionOutcome out;
  const CMat3 w = walsh_hadamard();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = frobenius_distance(compose_dod(rows[i]), w);
    out.check("row " + std::to_string(i + 1) + " reconstruction", d, d <= 5e-3);
  }
  return out;
}

SectionOutcome section_table2(const std::vector<DodParams>& rows, const json& known) {
  SectionOutcome out;
  SolutionSet set;
  set.target = walsh_hadamard();
  for (const DodParams& p : rows) {
    set.solutions.push_back(p);
    set.residuals.push_back(frobenius_distance(compose_dod(p), set.target));
  }
  const CostReport rep = table2_report(set);
  out.check("audit entries", static_cast<double>(rep.discrepancies.entries.size()),
            rep.discrepancies.entries.size() == 17);
  audit_against_known(out, rep.discrepancies, known, "table2");
  return out;
}

SectionOutcome section_appendix(const json& known) {
  SectionOutcome out;
  audit_against_known(out, verify_constant_tables(), known, "appendix");
  return out;
}

SectionOutcome section_gates(const json& known) {
  SectionOutcome out;
  const DiscrepancyReport rep = verify_wh_relations();
  out.check("relation count", static_cast<double>(rep.entries.size()), rep.entries.size() == 4);
  audit_against_known(out, rep, known, "gates");
  return out;
}

SectionOutcome section_gfin(const json& known) {
  SectionOutcome out;
  const CMat3 w = walsh_hadamard();
  const GivensChain chain = eliminate_two_photon(cartan_decompose(w, split('C')));
  out.check("chain reconstruction", frobenius_distance(compose_chain(chain), w),
            frobenius_distance(compose_chain(chain), w) <= 1e-9);

  // Outer-pair purity: no factor may lean on the generators coupling the
  // outermost level pair.
  double outer = 0.0;
  for (const GivensFactor& f : chain.factors) {
    const std::array<int, 9> idx = basis_indices(f.coeffs.variant);
    for (std::size_t slot = 0; slot < idx.size(); ++slot) {
      if (idx[slot] == 4 || idx[slot] == 5) outer += std::abs(f.coeffs.c[slot]);
    }
  }
  out.check("outer-pair weight", outer, outer <= 1e-9);

  // The published three-pulse parameter list composes to a gate that is close
  // to, but measurably short of, the stated target; the fidelity is pinned as
  // a regression value and reported as a documented discrepancy.
  const CMat3 h1 = CMat3::diag(0.9631, -0.6091, 0.8471);
  const CMat3 h2 = gell(6);
  const CMat3 h3 = 0.5907 * gell(2) + 0.8069 * gell(7);
  const CMat3 g = expm_hermitian_generator(6.5239 * h1) *
                  expm_hermitian_generator(5.9977 * h2) *
                  expm_hermitian_generator(4.4994 * h3);
  const double fid = std::abs(trace(adjoint(g) * w)) / 3.0;
  out.check("printed chain fidelity regression", fid,
            std::abs(fid - 0.9179930394618383) <= 1e-9);

  DiscrepancyReport rep;
  DiscrepancyEntry e;
  e.item = "printed chain fidelity";
  e.printed = "1";
  e.recomputed = format_value(fid);
  e.delta = std::abs(1.0 - fid);
  e.match = e.delta <= 1e-3;
  rep.entries.push_back(e);
  audit_against_known(out, rep, known, "gfin");
  return out;
}

int run_verify_paper(const std::string& section, const std::string& fixtures_dir,
                     const std::string& out_path) {
  json report = make_report("verify-paper",
                            json{{"section", section}, {"fixtures", fixtures_dir}});
  const json known = load_json_file(fixtures_dir + "/known_discrepancies.json");
  const std::vector<DodParams> rows = load_reference_rows(fixtures_dir);

  std::vector<std::string> wanted;
  if (section == "all") {
    wanted = {"table1", "table2", "appendix", "gates", "gfin"};
  } else {
    wanted = {section};
  }

  bool all_pass = true;
  json sections = json::array();
  DiscrepancyReport aggregate;
  for (const std::string& name : wanted) {
    SectionOutcome out;
    if (name == "table1") {
      out = section_table1(rows);
    } else if (name == "table2") {
      out = section_table2(rows, known);
    } else if (name == "appendix") {
      out = section_appendix(known);
    } else if (name == "gates") {
      out = section_gates(known);
    } else {
      out = section_gfin(known);
    }
    sections.push_back({{"name", name}, {"passed", out.passed}, {"checks", out.checks}});
    for (const DiscrepancyEntry& e : out.discrepancies.entries) aggregate.entries.push_back(e);
    all_pass = all_pass && out.passed;
  }
  report["results"]["sections"] = std::move(sections);
  report["results"]["passed"] = all_pass;
  report["discrepancies"] = discrepancies_to_json(aggregate);
  return emit_report(report, out_path, all_pass ? 0 : 1);
}

// ---------------------------------------------------------------------------
// cost

int run_cost(const std::string& input, const std::string& out_path) {
  const SolutionSet set = solutions_from_json(load_json_file(input));
  const CostReport rep = table2_report(set);
  json report = make_report("cost", json{{"input", input}});
  json rows = json::array();
  for (const CostRow& r : rep.per_decomposition) {
    rows.push_back({{"label", r.label},
                    {"diag_cost", r.diag_cost},
                    {"offdiag_cost", r.offdiag_cost},
                    {"total", r.total},
                    {"drive_power_proxy", r.drive_power_proxy}});
  }
  report["results"]["per_decomposition"] = std::move(rows);
  report["results"]["single_pulse"] = {{"half_trace", rep.single_pulse.half_trace},
                                       {"third_trace", rep.single_pulse.third_trace},
                                       {"generator", matrix_to_json(rep.single_pulse.generator)}};
  report["results"]["ranking"] = rep.ranking;
  report["discrepancies"] = discrepancies_to_json(rep.discrepancies);
  return emit_report(report, out_path, 0);
}

// ---------------------------------------------------------------------------
// symmetry

int run_symmetry_theta(const CMat3& u, const std::string& theta_arg, json inputs,
                       const std::string& out_path) {
  const std::vector<double> vals = parse_csv_doubles(theta_arg, 3, "--theta");
  json report = make_report("symmetry", std::move(inputs));
  const CommutantFamily fam = commutant(u);
  const CMat3 t = fam.sample({vals[0], vals[1], vals[2]});
  report["results"]["mode"] = "theta";
  report["results"]["matrix"] = matrix_to_json(t);
  report["results"]["frame"] = matrix_to_json(fam.frame);
  report["results"]["commutator_residual"] = frobenius_distance(t * u, u * t);
  return emit_report(report, out_path, 0);
}

int run_symmetry_relate(const std::string& relate_arg, const std::string& fixtures_dir,
                        json inputs, const std::string& out_path) {
  const std::vector<double> pair = parse_csv_doubles(relate_arg, 2, "--relate");
  const int a = static_cast<int>(pair[0]);
  const int b = static_cast<int>(pair[1]);
  const std::vector<DodParams> rows = load_reference_rows(fixtures_dir);
  const int n = static_cast<int>(rows.size());
  if (a < 1 || a > n || b < 1 || b > n || pair[0] != a || pair[1] != b) {
    throw std::invalid_argument("--relate wants two 1-based set indices in 1.." +
                                std::to_string(n));
  }
  json report = make_report("symmetry", std::move(inputs));
  json& res = report["results"];
  res["mode"] = "relate";
  RelationReport rel;
  try {
    rel = relate_solutions(rows[static_cast<std::size_t>(a - 1)],
                           rows[static_cast<std::size_t>(b - 1)], walsh_hadamard());
  } catch (const NoRelationFound& ex) {
    res["found"] = false;
    std::fprintf(stderr, "no relation: %s\n", ex.what());
    return emit_report(report, out_path, 1);
  }
  json affine = json::array();
  for (const auto& [scale, shift] : rel.affine) {
    affine.push_back({{"scale", scale}, {"shift", shift}});
  }
  res["found"] = true;
  res["permutation"] = rel.permutation;
  res["affine"] = std::move(affine);
  res["residual"] = rel.residual;
  res["base_eigenvalues"] = rel.base_eigenvalues;
  res["base_index"] = rel.base_index;
  res["frame_transform"] = rel.frame_transform;
  return emit_report(report, out_path, 0);
}

// ---------------------------------------------------------------------------
// structconst

int run_structconst(const std::string& basis, const std::string& out_path) {
  const DiagonalVariant v = variant_by_name(basis);
  const std::array<int, 9> idx = basis_indices(v);
  json f_list = json::array();
  json d_list = json::array();
  constexpr double kZero = 1e-12;
  for (int a = 0; a < 9; ++a) {
    for (int b = a; b < 9; ++b) {
      for (int c = b; c < 9; ++c) {
        const std::size_t ia = static_cast<std::size_t>(a);
        const std::size_t ib = static_cast<std::size_t>(b);
        const std::size_t ic = static_cast<std::size_t>(c);
        if (a < b && b < c) {
          const double fv = f_constant(idx[ia], idx[ib], idx[ic]);
          if (std::abs(fv) > kZero) {
            f_list.push_back({{"i", idx[ia]}, {"j", idx[ib]}, {"k", idx[ic]}, {"value", fv}});
          }
        }
        const double dv = d_constant(idx[ia], idx[ib], idx[ic]);
        if (std::abs(dv) > kZero) {
          d_list.push_back({{"i", idx[ia]}, {"j", idx[ib]}, {"k", idx[ic]}, {"value", dv}});
        }
      }
    }
  }
  json report = make_report("structconst", json{{"basis", basis}});
  report["results"]["basis"] = basis;
  report["results"]["indices"] = idx;
  report["results"]["f"] = std::move(f_list);
  report["results"]["d"] = std::move(d_list);
  return emit_report(report, out_path, 0);
}

// ---------------------------------------------------------------------------
// random

int run_random(int count, std::uint64_t seed, const std::string& out_path) {
  if (count < 1) throw std::invalid_argument("--count must be at least 1");
  json mats = json::array();
  for (int i = 0; i < count; ++i) {
    mats.push_back({{"label", "random " + std::to_string(i)},
                    {"rows", matrix_to_json(haar_random_unitary(seed + static_cast<std::uint64_t>(i)))}});
  }
  json report = make_report("random", json{{"count", count}, {"seed", seed}});
  report["results"]["matrices"] = std::move(mats);
  return emit_report(report, out_path, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qutrit gate decomposition toolkit"};
  app.require_subcommand(1);

  // decompose
  auto* dec = app.add_subcommand("decompose", "factor a 3x3 unitary into product forms");
  std::string dec_method;
  std::string dec_input;
  std::string dec_gate;
  std::string dec_output;
  SolveConfig cfg;
  dec->add_option("--method", dec_method, "dod | cartan-a | cartan-b | cartan-c | givens")
      ->required()
      ->check(CLI::IsMember({"dod", "cartan-a", "cartan-b", "cartan-c", "givens"}));
  auto* dec_in = dec->add_option("--input", dec_input, "matrix document (JSON)");
  auto* dec_gt = dec->add_option("--gate", dec_gate, "built-in target")
                     ->check(CLI::IsMember({"wh", "swap12", "identity"}));
  dec_in->excludes(dec_gt);
  dec_gt->excludes(dec_in);
  dec->add_option("--starts", cfg.starts, "phase grid resolution per axis");
  dec->add_option("--branches", cfg.branch_range, "log-branch offsets searched in [-r, r]");
  dec->add_option("--tol", cfg.tol, "Frobenius acceptance tolerance");
  dec->add_option("--seed", cfg.seed, "reserved; the start grid is deterministic");
  dec->add_option("--output", dec_output, "write the report here instead of stdout");

  // verify-paper
  auto* ver = app.add_subcommand("verify-paper", "recompute the published reference values");
  std::string ver_section;
  std::string ver_fixtures = "fixtures";
  std::string ver_output;
  ver->add_option("--section", ver_section, "table1 | table2 | appendix | gates | gfin | all")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "appendix", "gates", "gfin", "all"}));
  ver->add_option("--fixtures", ver_fixtures, "directory holding the reference fixtures");
  ver->add_option("--output", ver_output, "write the report here instead of stdout");

  // cost
  auto* cst = app.add_subcommand("cost", "pulse-cost audit of a solution collection");
  std::string cst_input;
  std::string cst_output;
  cst->add_option("--input", cst_input, "solutions document or decompose report")->required();
  cst->add_option("--output", cst_output, "write the report here instead of stdout");

  // symmetry
  auto* sym = app.add_subcommand("symmetry", "commutant sampling and solution relations");
  std::string sym_gate = "wh";
  std::string sym_input;
  std::string sym_theta;
  std::string sym_relate;
  std::string sym_fixtures = "fixtures";
  std::string sym_output;
  sym->add_option("--gate", sym_gate, "built-in target for --theta")
      ->check(CLI::IsMember({"wh", "swap12", "identity"}));
  sym->add_option("--input", sym_input, "matrix document overriding --gate");
  sym->add_option("--theta", sym_theta, "three comma-separated angles for a commutant sample");
  sym->add_option("--relate", sym_relate, "two 1-based reference set indices, e.g. 2,5");
  sym->add_option("--fixtures", sym_fixtures, "directory holding the reference fixtures");
  sym->add_option("--output", sym_output, "write the report here instead of stdout");

  // structconst
  auto* stc = app.add_subcommand("structconst", "nonzero structure constants of a basis");
  std::string stc_basis;
  std::string stc_output;
  stc->add_option("--basis", stc_basis, "standard | variant9-11 | variant10-12")
      ->required()
      ->check(CLI::IsMember({"standard", "variant9-11", "variant10-12"}));
  stc->add_option("--output", stc_output, "write the report here instead of stdout");

  // random
  auto* rnd = app.add_subcommand("random", "deterministic Haar-distributed test matrices");
  int rnd_count = 1;
  std::uint64_t rnd_seed = 0;
  std::string rnd_output;
  rnd->add_option("--count", rnd_count, "how many matrices");
  rnd->add_option("--seed", rnd_seed, "base seed; matrix i uses seed + i");
  rnd->add_option("--output", rnd_output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (dec->parsed()) {
      if (dec_input.empty() && dec_gate.empty()) {
        throw std::invalid_argument("decompose needs --input FILE or --gate NAME");
      }
      json inputs{{"method", dec_method},
                  {"starts", cfg.starts},
                  {"branches", cfg.branch_range},
                  {"tol", cfg.tol},
                  {"seed", cfg.seed}};
      CMat3 u;
      if (!dec_gate.empty()) {
        inputs["gate"] = dec_gate;
        u = gate_by_name(dec_gate);
      } else {
        inputs["input"] = dec_input;
        u = load_matrix_document(dec_input);
      }
      return run_decompose(dec_method, u, cfg, std::move(inputs), dec_output);
    }
    if (ver->parsed()) {
      return run_verify_paper(ver_section, ver_fixtures, ver_output);
    }
    if (cst->parsed()) {
      return run_cost(cst_input, cst_output);
    }
    if (sym->parsed()) {
      if (sym_theta.empty() == sym_relate.empty()) {
        throw std::invalid_argument("symmetry needs exactly one of --theta or --relate");
      }
      json inputs{{"gate", sym_gate}};
      if (!sym_input.empty()) inputs["input"] = sym_input;
      if (!sym_theta.empty()) {
        inputs["theta"] = sym_theta;
        const CMat3 u = sym_input.empty() ? gate_by_name(sym_gate)
                                          : load_matrix_document(sym_input);
        return run_symmetry_theta(u, sym_theta, std::move(inputs), sym_output);
      }
      inputs["relate"] = sym_relate;
      inputs["fixtures"] = sym_fixtures;
      return run_symmetry_relate(sym_relate, sym_fixtures, std::move(inputs), sym_output);
    }
    if (stc->parsed()) {
      return run_structconst(stc_basis, stc_output);
    }
    if (rnd->parsed()) {
      return run_random(rnd_count, rnd_seed, rnd_output);
    }
  } catch (const NoSolutionFound& e) {
    std::fprintf(stderr, "no solution: %s\n", e.what());
    return 1;
  } catch (const BranchSelectionFailed& e) {
    std::fprintf(stderr, "no solution: %s\n", e.what());
    return 1;
  } catch (const NoRelationFound& e) {
    std::fprintf(stderr, "no relation: %s\n", e.what());
    return 1;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

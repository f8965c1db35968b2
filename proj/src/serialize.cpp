#include "pdmosc/serialize.hpp"

#include <cstdio>

namespace pdmosc {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void to_json(json& j, const ModelParams& p) {
  j = json{{"m0", p.m0},
           {"m1", p.m1},
           {"omega", p.omega},
           {"hbar", p.hbar},
           {"units", p.units == Units::natural ? "natural" : "si"}};
}

void from_json(const json& j, ModelParams& p) {
  j.at("m0").get_to(p.m0);
  j.at("m1").get_to(p.m1);
  j.at("omega").get_to(p.omega);
  j.at("hbar").get_to(p.hbar);
  p.units = j.at("units").get<std::string>() == "natural" ? Units::natural : Units::si;
}

void to_json(json& j, const DerivedConstants& c) {
  j = json{{"sigma", c.sigma}, {"beta", c.beta}, {"eta", c.eta},
           {"alpha", c.alpha}, {"k", c.k}};
}

void to_json(json& j, const SpectrumRow& r) {
  j = json{{"n", r.n},           {"e0", r.e0},
           {"eH1", r.eH1},       {"eH2", r.eH2},
           {"eH_total", r.eH_total}, {"eK1", r.eK1},
           {"eK2", r.eK2},       {"eK_total", r.eK_total},
           {"eH_exact", r.eH_exact}, {"eK_exact", r.eK_exact}};
}

void from_json(const json& j, SpectrumRow& r) {
  j.at("n").get_to(r.n);
  j.at("e0").get_to(r.e0);
  j.at("eH1").get_to(r.eH1);
  j.at("eH2").get_to(r.eH2);
  j.at("eH_total").get_to(r.eH_total);
  j.at("eK1").get_to(r.eK1);
  j.at("eK2").get_to(r.eK2);
  j.at("eK_total").get_to(r.eK_total);
  j.at("eH_exact").get_to(r.eH_exact);
  j.at("eK_exact").get_to(r.eK_exact);
}

void to_json(json& j, const SpectrumTable& t) {
  j = json{{"command", "spectrum"}, {"params", t.params}, {"N", t.N},
           {"guard", t.guard},      {"n_max", t.n_max},   {"source", t.source},
           {"rows", t.rows}};
}

void from_json(const json& j, SpectrumTable& t) {
  j.at("params").get_to(t.params);
  j.at("N").get_to(t.N);
  j.at("guard").get_to(t.guard);
  j.at("n_max").get_to(t.n_max);
  j.at("source").get_to(t.source);
  j.at("rows").get_to(t.rows);
}

void to_json(json& j, const DeltaRow& r) {
  j = json{{"n", r.n},
           {"deltaE_numeric", r.deltaE_numeric},
           {"deltaE_closed_form", r.deltaE_closed_form}};
}

void from_json(const json& j, DeltaRow& r) {
  j.at("n").get_to(r.n);
  j.at("deltaE_numeric").get_to(r.deltaE_numeric);
  j.at("deltaE_closed_form").get_to(r.deltaE_closed_form);
}

void to_json(json& j, const DeltaTable& t) {
  j = json{{"command", "delta"}, {"params", t.params}, {"N", t.N},
           {"guard", t.guard},   {"n_max", t.n_max},   {"rows", t.rows}};
}

void from_json(const json& j, DeltaTable& t) {
  j.at("params").get_to(t.params);
  j.at("N").get_to(t.N);
  j.at("guard").get_to(t.guard);
  j.at("n_max").get_to(t.n_max);
  j.at("rows").get_to(t.rows);
}

void to_json(json& j, const SpectrumReport::Level& l) {
  j = json{{"n", l.n},
           {"e_numeric_pt", l.e_numeric_pt},
           {"e_closed_form_pt", l.e_closed_form_pt},
           {"e_exact_diag", l.e_exact_diag},
           {"residual_norm", l.residual_norm},
           {"converged", l.converged}};
}

void from_json(const json& j, SpectrumReport::Level& l) {
  j.at("n").get_to(l.n);
  j.at("e_numeric_pt").get_to(l.e_numeric_pt);
  j.at("e_closed_form_pt").get_to(l.e_closed_form_pt);
  j.at("e_exact_diag").get_to(l.e_exact_diag);
  j.at("residual_norm").get_to(l.residual_norm);
  j.at("converged").get_to(l.converged);
}

void to_json(json& j, const SpectrumReport& r) {
  j = json{{"params", r.params},
           {"which", to_string(r.which)},
           {"truncation_dims", r.truncation_dims},
           {"levels", r.levels}};
}

void from_json(const json& j, SpectrumReport& r) {
  j.at("params").get_to(r.params);
  r.which = j.at("which").get<std::string>() == "H" ? WhichPerturbation::HamiltonianP
                                                    : WhichPerturbation::ConstantOfMotionV;
  j.at("truncation_dims").get_to(r.truncation_dims);
  j.at("levels").get_to(r.levels);
}

void to_json(json& j, const E2Form& f) {
  j = json{{"sign1", f.sign1},
           {"sign2", f.sign2},
           {"poly_cubic", f.poly_cubic},
           {"quartic_divisor", f.quartic_divisor}};
}

void to_json(json& j, const MisprintVerdict& v) {
  j = json{{"which", v.which},
           {"slot", v.slot},
           {"printed", v.printed},
           {"adjudicated", v.adjudicated},
           {"verdict", v.verdict},
           {"printed_deviation", v.printed_deviation},
           {"adjudicated_deviation", v.adjudicated_deviation}};
}

void to_json(json& j, const DiscrepancyEntry& e) {
  j = json{{"location", e.location},
           {"printed_form", e.printed_form},
           {"rebuilt_form", e.rebuilt_form},
           {"max_deviation", e.max_deviation}};
}

void to_json(json& j, const DiscrepancyReport& r) { j = json{{"entries", r.entries}}; }

void to_json(json& j, const AdjudicationReport& r) {
  j = json{{"h_report", r.h_report},
           {"k_report", r.k_report},
           {"corrected_h", r.corrected_h},
           {"corrected_k", r.corrected_k},
           {"verdicts", r.verdicts},
           {"ladder_diagnostics", r.ladder_diagnostics},
           {"delta_formula_vs_printed_difference", r.delta_formula_vs_printed_difference},
           {"delta_formula_vs_corrected_difference", r.delta_formula_vs_corrected_difference}};
}

namespace {
std::string csv_int(int v) { return std::to_string(v); }
}  // namespace

std::string spectrum_csv(const SpectrumTable& t) {
  std::string s = "n,e0,eH1,eH2,eH_total,eK1,eK2,eK_total,eH_exact,eK_exact\n";
  for (const auto& r : t.rows) {
    s += csv_int(r.n);
    for (double v : {r.e0, r.eH1, r.eH2, r.eH_total, r.eK1, r.eK2, r.eK_total,
                     r.eH_exact, r.eK_exact}) {
      s += ',';
      s += format_g17(v);
    }
    s += '\n';
  }
  return s;
}

std::string delta_csv(const DeltaTable& t) {
  std::string s = "n,deltaE_numeric,deltaE_closed_form\n";
  for (const auto& r : t.rows) {
    s += csv_int(r.n);
    s += ',';
    s += format_g17(r.deltaE_numeric);
    s += ',';
    s += format_g17(r.deltaE_closed_form);
    s += '\n';
  }
  return s;
}

std::string trajectory_csv(const std::vector<TrajectoryState>& states) {
  std::string s = "t,x,p,v,K,H\n";
  for (const auto& st : states) {
    s += format_g17(st.t);
    for (double v : {st.x, st.p, st.v, st.K_value, st.H_value}) {
      s += ',';
      s += format_g17(v);
    }
    s += '\n';
  }
  return s;
}

std::string constants_csv(const DerivedConstants& c) {
  std::string s = "sigma,beta,eta,alpha,k\n";
  s += format_g17(c.sigma);
  for (double v : {c.beta, c.eta, c.alpha, c.k}) {
    s += ',';
    s += format_g17(v);
  }
  s += '\n';
  return s;
}

}  // namespace pdmosc

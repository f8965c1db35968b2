#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdmosc/classical.hpp"
#include "pdmosc/model.hpp"
#include "pdmosc/oracle.hpp"

namespace pdmosc {

using json = nlohmann::ordered_json;

/// Full-precision decimal form of a double: 17 significant digits, '.'
/// decimal separator, no grouping. Round-trips bit-exactly.
std::string format_g17(double v);

// Emission structs of the spectrum and delta commands. The JSON shape
// mirrors the CSV columns field for field.
struct SpectrumRow {
  int n;
  double e0, eH1, eH2, eH_total, eK1, eK2, eK_total, eH_exact, eK_exact;

  bool operator==(const SpectrumRow&) const = default;
};

struct SpectrumTable {
  ModelParams params;
  int N = 0;
  int guard = 0;
  int n_max = 0;
  std::string source;
  std::vector<SpectrumRow> rows;

  bool operator==(const SpectrumTable&) const = default;
};

struct DeltaRow {
  int n;
  double deltaE_numeric;
  double deltaE_closed_form;

  bool operator==(const DeltaRow&) const = default;
};

struct DeltaTable {
  ModelParams params;
  int N = 0;
  int guard = 0;
  int n_max = 0;
  std::vector<DeltaRow> rows;

  bool operator==(const DeltaTable&) const = default;
};

void to_json(json& j, const ModelParams& p);
void from_json(const json& j, ModelParams& p);
void to_json(json& j, const DerivedConstants& c);
void to_json(json& j, const SpectrumRow& r);
void from_json(const json& j, SpectrumRow& r);
void to_json(json& j, const SpectrumTable& t);
void from_json(const json& j, SpectrumTable& t);
void to_json(json& j, const DeltaRow& r);
void from_json(const json& j, DeltaRow& r);
void to_json(json& j, const DeltaTable& t);
void from_json(const json& j, DeltaTable& t);
void to_json(json& j, const SpectrumReport::Level& l);
void from_json(const json& j, SpectrumReport::Level& l);
void to_json(json& j, const SpectrumReport& r);
void from_json(const json& j, SpectrumReport& r);
void to_json(json& j, const E2Form& f);
void to_json(json& j, const MisprintVerdict& v);
void to_json(json& j, const DiscrepancyEntry& e);
void to_json(json& j, const DiscrepancyReport& r);
void to_json(json& j, const AdjudicationReport& r);

// CSV emitters. Headers are fixed:
//   spectrum:   n,e0,eH1,eH2,eH_total,eK1,eK2,eK_total,eH_exact,eK_exact
//   delta:      n,deltaE_numeric,deltaE_closed_form
//   trajectory: t,x,p,v,K,H
std::string spectrum_csv(const SpectrumTable& t);
std::string delta_csv(const DeltaTable& t);
std::string trajectory_csv(const std::vector<TrajectoryState>& states);
std::string constants_csv(const DerivedConstants& c);

}  // namespace pdmosc

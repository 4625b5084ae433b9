// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_REPORT_HPP
#define MAXMAJ_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxmaj/majorant.hpp"

namespace maxmaj
{

// trueN <= bound_b at every node, allowing rel_tol * max(bound_b, 1e-3 * energy scale) for
// rounding. False when the report carries no truth.
bool BoundDominates(const MajorantReport &r, double rel_tol = 1e-12);

// 17 significant digits ("%.17g"); empty for NaN.
std::string FormatNumber(double v);

// Per-node rows plus parameter summary. `meta` is embedded verbatim.
nlohmann::json ReportToJson(const MajorantReport &r, const nlohmann::json &meta,
                            const CombinedReport *combined = nullptr);

// Columns: k,t,f,bound_b,bound_B,trueN,trueBigN,efficiency (truth columns empty when absent).
void WriteReportCsv(std::ostream &out, const MajorantReport &r);
// Columns: k,t,f_res_sq,g_res_sq,bound,truth.
void WriteCombinedCsv(std::ostream &out, const CombinedReport &c);

struct VerifyLevel
{
  int nx = 0, nt = 0;
  double h = 0.0, dt = 0.0;
  double trueN_T = 0.0, bound_T = 0.0, efficiency_T = 0.0;
  // log(previous / current) / log(h_previous / h); NaN on the first level.
  double order_trueN = 0.0, order_bound = 0.0;
  // bound_b >= trueN at every node of this level.
  bool dominates = true;
};

nlohmann::json VerifyToJson(const std::vector<VerifyLevel> &levels, const nlohmann::json &meta);
void WriteVerifyCsv(std::ostream &out, const std::vector<VerifyLevel> &levels);

// Writes text to a file, throwing Error on failure.
void WriteTextFile(const std::string &path, const std::string &text);

}  // namespace maxmaj

#endif  // MAXMAJ_REPORT_HPP

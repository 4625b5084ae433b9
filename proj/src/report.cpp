// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "maxmaj/error.hpp"

namespace maxmaj
{

using nlohmann::json;

namespace
{

// JSON has no NaN; missing values become null.
json Num(double v)
{
  return std::isfinite(v) ? json(v) : json(nullptr);
}

}  // namespace

bool BoundDominates(const MajorantReport &r, double rel_tol)
{
  if (!r.has_truth)
  {
    return false;
  }
  for (std::size_t k = 0; k < r.time.size(); k++)
  {
    const double slack = rel_tol * std::max(r.bound_b[k], 1e-3 * r.energy_scale);
    if (!(r.trueN[k] <= r.bound_b[k] + slack))
    {
      return false;
    }
  }
  return true;
}

std::string FormatNumber(double v)
{
  if (std::isnan(v))
  {
    return "";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json ReportToJson(const MajorantReport &r, const json &meta, const CombinedReport *combined)
{
  json rows = json::array();
  for (std::size_t k = 0; k < r.time.size(); k++)
  {
    json row = {{"k", k}, {"t", r.time[k]}, {"f", r.f[k]}, {"bound_b", r.bound_b[k]},
                {"bound_B", r.bound_B[k]}};
    if (r.has_truth)
    {
      row["trueN"] = r.trueN[k];
      row["trueBigN"] = r.trueBigN[k];
      row["efficiency"] = Num(r.efficiency[k]);
    }
    rows.push_back(row);
  }
  json doc = {{"metadata", meta},
              {"theorem", ToString(r.theorem)},
              {"parameters",
               {{"gamma", r.gamma},
                {"rho", r.rho},
                {"zeroTermVariant", ToString(r.zero_term)},
                {"absCoupling", r.abs_coupling},
                {"zeroTermValue", r.zero_term_value},
                {"energyScale", r.energy_scale},
                {"cgIterations", r.cg_iterations},
                {"sweeps", r.sweeps}}},
              {"hasTruth", r.has_truth},
              {"rows", rows},
              {"warnings", r.warnings}};
  if (combined)
  {
    json crows = json::array();
    for (std::size_t k = 0; k < combined->bound.size(); k++)
    {
      json row = {{"k", k},
                  {"t", r.time[k]},
                  {"f_res_sq", combined->f_res_sq[k]},
                  {"g_res_sq", combined->g_res_sq[k]},
                  {"bound", combined->bound[k]}};
      if (combined->has_truth)
      {
        row["truth"] = combined->truth[k];
      }
      crows.push_back(row);
    }
    doc["combined"] = {{"rows", crows}};
  }
  return doc;
}

void WriteReportCsv(std::ostream &out, const MajorantReport &r)
{
  out << "k,t,f,bound_b,bound_B,trueN,trueBigN,efficiency\n";
  for (std::size_t k = 0; k < r.time.size(); k++)
  {
    out << k << ',' << FormatNumber(r.time[k]) << ',' << FormatNumber(r.f[k]) << ','
        << FormatNumber(r.bound_b[k]) << ',' << FormatNumber(r.bound_B[k]) << ',';
    if (r.has_truth)
    {
      out << FormatNumber(r.trueN[k]) << ',' << FormatNumber(r.trueBigN[k]) << ','
          << FormatNumber(r.efficiency[k]);
    }
    else
    {
      out << ",,";
    }
    out << '\n';
  }
}

void WriteCombinedCsv(std::ostream &out, const CombinedReport &c)
{
  out << "k,t,f_res_sq,g_res_sq,bound,truth\n";
  for (std::size_t k = 0; k < c.bound.size(); k++)
  {
    out << k << ',' << FormatNumber(c.electric.time[k]) << ',' << FormatNumber(c.f_res_sq[k])
        << ',' << FormatNumber(c.g_res_sq[k]) << ',' << FormatNumber(c.bound[k]) << ','
        << (c.has_truth ? FormatNumber(c.truth[k]) : "") << '\n';
  }
}

json VerifyToJson(const std::vector<VerifyLevel> &levels, const json &meta)
{
  json rows = json::array();
  for (const auto &l : levels)
  {
    rows.push_back({{"nx", l.nx},
                    {"nt", l.nt},
                    {"h", l.h},
                    {"dt", l.dt},
                    {"trueN_T", l.trueN_T},
                    {"bound_b_T", l.bound_T},
                    {"efficiency_T", Num(l.efficiency_T)},
                    {"order_trueN", Num(l.order_trueN)},
                    {"order_bound_b", Num(l.order_bound)},
                    {"dominates", l.dominates}});
  }
  return {{"metadata", meta}, {"levels", rows}};
}

void WriteVerifyCsv(std::ostream &out, const std::vector<VerifyLevel> &levels)
{
  out << "nx,nt,h,dt,trueN_T,bound_b_T,efficiency_T,order_trueN,order_bound_b,dominates\n";
  for (const auto &l : levels)
  {
    out << l.nx << ',' << l.nt << ',' << FormatNumber(l.h) << ',' << FormatNumber(l.dt) << ','
        << FormatNumber(l.trueN_T) << ',' << FormatNumber(l.bound_T) << ','
        << FormatNumber(l.efficiency_T) << ',' << FormatNumber(l.order_trueN) << ','
        << FormatNumber(l.order_bound) << ',' << (l.dominates ? 1 : 0) << '\n';
  }
}

void WriteTextFile(const std::string &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out)
  {
    throw Error("cannot write '" + path + "'");
  }
}

}  // namespace maxmaj

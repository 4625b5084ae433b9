// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "maxmaj/error.hpp"

namespace maxmaj
{

using nlohmann::json;

namespace
{

// Reads the members of one JSON object, remembering which keys were consumed so that
// leftovers can be rejected.
class ObjectReader
{
public:
  ObjectReader(const json &obj, std::string path) : obj_(obj), path_(std::move(path))
  {
    if (!obj_.is_object())
    {
      Fail(path_, "expected an object");
    }
  }

  [[noreturn]] static void Fail(const std::string &path, const std::string &what)
  {
    throw ConfigError(path + ": " + what);
  }

  std::string Path(const std::string &key) const
  {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool Has(const std::string &key) const { return obj_.contains(key); }

  const json *Find(const std::string &key)
  {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json &Require(const std::string &key)
  {
    const json *v = Find(key);
    if (!v)
    {
      Fail(Path(key), "required field is missing");
    }
    return *v;
  }

  double Number(const std::string &key, std::optional<double> fallback = std::nullopt)
  {
    const json *v = fallback ? Find(key) : &Require(key);
    if (!v)
    {
      return *fallback;
    }
    if (!v->is_number())
    {
      Fail(Path(key), "expected a number");
    }
    const double x = v->get<double>();
    if (!std::isfinite(x))
    {
      Fail(Path(key), "expected a finite number");
    }
    return x;
  }

  double Positive(const std::string &key, std::optional<double> fallback = std::nullopt)
  {
    const double x = Number(key, fallback);
    if (!(x > 0.0))
    {
      Fail(Path(key), "must be positive");
    }
    return x;
  }

  int Integer(const std::string &key, std::optional<int> fallback = std::nullopt)
  {
    const json *v = fallback ? Find(key) : &Require(key);
    if (!v)
    {
      return *fallback;
    }
    if (!v->is_number_integer())
    {
      Fail(Path(key), "expected an integer");
    }
    return v->get<int>();
  }

  bool Bool(const std::string &key, bool fallback)
  {
    const json *v = Find(key);
    if (!v)
    {
      return fallback;
    }
    if (!v->is_boolean())
    {
      Fail(Path(key), "expected true or false");
    }
    return v->get<bool>();
  }

  std::string String(const std::string &key, std::optional<std::string> fallback = std::nullopt)
  {
    const json *v = fallback ? Find(key) : &Require(key);
    if (!v)
    {
      return *fallback;
    }
    if (!v->is_string())
    {
      Fail(Path(key), "expected a string");
    }
    return v->get<std::string>();
  }

  std::vector<double> Numbers(const std::string &key, std::size_t expected = 0)
  {
    const json &v = Require(key);
    if (!v.is_array() || (expected > 0 && v.size() != expected) || v.empty())
    {
      Fail(Path(key), expected > 0 ? "expected an array of " + std::to_string(expected) +
                                         " numbers"
                                   : "expected a nonempty array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); i++)
    {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
      {
        Fail(Path(key) + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  // Rejects keys that were never looked up.
  void Finish() const
  {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
    {
      if (!seen_.count(it.key()))
      {
        Fail(Path(it.key()), "unknown key");
      }
    }
  }

private:
  const json &obj_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
auto Rethrow(const std::string &path, Fn &&fn)
{
  try
  {
    return fn();
  }
  catch (const ConfigError &)
  {
    throw;
  }
  catch (const Error &e)
  {
    throw ConfigError(path + ": " + e.what());
  }
}

GridSpec ParseGrid(const json &doc)
{
  ObjectReader r(doc, "grid");
  GridSpec g;
  g.nx = r.Integer("nx");
  g.ny = r.Integer("ny", g.nx);
  g.nz = r.Integer("nz", g.nx);
  g.lx = r.Positive("lx", 1.0);
  g.ly = r.Positive("ly", 1.0);
  g.lz = r.Positive("lz", 1.0);
  g.nt = r.Integer("nt");
  g.T = r.Positive("T", 1.0);
  r.Finish();
  Rethrow("grid", [&] {
    g.Validate();
    return 0;
  });
  return g;
}

MaterialSpec ParseMaterial(const json &doc, const std::string &path)
{
  ObjectReader r(doc, path);
  MaterialSpec m;
  if (r.Has("catalog"))
  {
    const auto key = r.String("catalog");
    if (key == "vacuum")
    {
      m.kind = MaterialKind::Scalar;
      m.tensor = IdentityTensor();
    }
    else if (key == "anisotropic_diagonal")
    {
      m.kind = MaterialKind::Diagonal;
      m.tensor = {1, 0, 0, 0, 2, 0, 0, 0, 3};
    }
    else
    {
      ObjectReader::Fail(r.Path("catalog"), "unknown material '" + key + "'");
    }
    r.Finish();
    return m;
  }
  const auto kind = r.String("kind");
  if (kind == "scalar")
  {
    m.kind = MaterialKind::Scalar;
    m.tensor = IdentityTensor(r.Number("value"));
  }
  else if (kind == "diagonal")
  {
    m.kind = MaterialKind::Diagonal;
    const auto v = r.Numbers("values", 3);
    m.tensor = {v[0], 0, 0, 0, v[1], 0, 0, 0, v[2]};
  }
  else if (kind == "full")
  {
    m.kind = MaterialKind::Full;
    const auto v = r.Numbers("values", 9);
    std::copy(v.begin(), v.end(), m.tensor.begin());
  }
  else
  {
    ObjectReader::Fail(r.Path("kind"), "expected scalar, diagonal or full");
  }
  r.Finish();
  return m;
}

CaseConfig ParseCase(const json &doc)
{
  ObjectReader r(doc, "case");
  CaseConfig c;
  c.name = r.String("name");
  if (const json *params = r.Find("params"))
  {
    if (!params->is_object())
    {
      ObjectReader::Fail("case.params", "expected an object");
    }
    for (auto it = params->begin(); it != params->end(); ++it)
    {
      if (!it->is_number())
      {
        ObjectReader::Fail("case.params." + it.key(), "expected a number");
      }
      c.params[it.key()] = it->get<double>();
    }
  }
  const auto disp = r.String("dispersion", "discrete");
  if (disp == "discrete")
  {
    c.dispersion = Dispersion::Discrete;
  }
  else if (disp == "continuous")
  {
    c.dispersion = Dispersion::Continuous;
  }
  else
  {
    ObjectReader::Fail("case.dispersion", "expected discrete or continuous");
  }
  r.Finish();
  return c;
}

OptimizeConfig ParseOptimizer(const json &doc)
{
  ObjectReader r(doc, "majorant.optimizer");
  OptimizeConfig o;
  if (r.Has("gammaBracket"))
  {
    const auto b = r.Numbers("gammaBracket", 2);
    o.gamma_min = b[0];
    o.gamma_max = b[1];
  }
  o.gamma_tol = r.Number("gammaTol", o.gamma_tol);
  if (r.Has("rhoGrid"))
  {
    o.rho_grid = r.Numbers("rhoGrid");
  }
  o.cg_max_iter = r.Integer("cgMaxIter", o.cg_max_iter);
  o.cg_tol = r.Number("cgTol", o.cg_tol);
  const auto init = r.String("yInit", "muInvCurlE");
  if (init == "zero")
  {
    o.y_init = YInit::Zero;
  }
  else if (init == "muInvCurlE")
  {
    o.y_init = YInit::MuInvCurlE;
  }
  else
  {
    ObjectReader::Fail("majorant.optimizer.yInit", "expected zero or muInvCurlE");
  }
  o.sweeps = r.Integer("sweeps", o.sweeps);
  o.gamma_pieces = r.Integer("gammaPieces", o.gamma_pieces);
  o.coordinate_passes = r.Integer("coordinatePasses", o.coordinate_passes);
  o.target_index = r.Integer("targetIndex", o.target_index);
  r.Finish();
  if (o.cg_max_iter < 1)
  {
    ObjectReader::Fail("majorant.optimizer.cgMaxIter", "must be positive");
  }
  Rethrow("majorant.optimizer", [&] {
    o.Validate();
    return 0;
  });
  return o;
}

MajorantConfig ParseMajorant(const json &doc, int nt)
{
  ObjectReader r(doc, "majorant");
  MajorantConfig m;
  m.theorem = Rethrow("majorant.theorem", [&] { return ParseTheorem(r.String("theorem", "T5")); });
  m.gamma = r.Positive("gamma", m.gamma);
  m.rho = r.Number("rho", m.rho);
  if (!(m.rho > 0.0 && m.rho < 1.0))
  {
    ObjectReader::Fail("majorant.rho", "must lie in (0,1)");
  }
  m.zero_term = Rethrow("majorant.zeroTermVariant",
                        [&] { return ParseZeroTermVariant(r.String("zeroTermVariant", "zHat")); });
  m.abs_coupling = r.Bool("absCoupling", false);
  m.optimize = Rethrow("majorant.optimize",
                       [&] { return ParseOptimizeMode(r.String("optimize", "none")); });
  m.combined = r.Bool("combined", false);
  if (const json *o = r.Find("optimizer"))
  {
    m.optimizer = ParseOptimizer(*o);
  }
  r.Finish();
  if (m.optimizer.target_index >= nt)
  {
    ObjectReader::Fail("majorant.optimizer.targetIndex", "must be below grid.nt");
  }
  if (m.combined && !UsesSecondForm(m.theorem))
  {
    ObjectReader::Fail("majorant.combined", "requires theorem T4 or T5");
  }
  return m;
}

}  // namespace

std::string_view ToString(SolveMethod m)
{
  return m == SolveMethod::Leapfrog ? "leapfrog" : "exact";
}

std::string_view ToString(OptimizeMode m)
{
  switch (m)
  {
  case OptimizeMode::None:
    return "none";
  case OptimizeMode::Params:
    return "params";
  case OptimizeMode::Full:
    return "full";
  }
  return "none";
}

OptimizeMode ParseOptimizeMode(std::string_view s)
{
  if (s == "none")
  {
    return OptimizeMode::None;
  }
  if (s == "params")
  {
    return OptimizeMode::Params;
  }
  if (s == "full")
  {
    return OptimizeMode::Full;
  }
  throw ParameterError("unknown optimize mode '" + std::string(s) + "' (none, params, full)");
}

MajorantParams MajorantConfig::InitialParams() const
{
  auto p = MajorantParams::Constant(gamma, rho);
  p.zero_term = zero_term;
  p.abs_coupling = abs_coupling;
  return p;
}

RunConfig ParseConfig(const json &doc)
{
  ObjectReader r(doc, "");
  RunConfig cfg;
  cfg.problem.grid = ParseGrid(r.Require("grid"));
  const auto &grid = cfg.problem.grid;
  if (const json *m = r.Find("materials"))
  {
    ObjectReader mr(*m, "materials");
    if (const json *e = mr.Find("eps"))
    {
      cfg.problem.eps = ParseMaterial(*e, "materials.eps");
    }
    if (const json *u = mr.Find("mu"))
    {
      cfg.problem.mu = ParseMaterial(*u, "materials.mu");
    }
    mr.Finish();
  }
  const auto eps = Rethrow("materials.eps", [&] { return cfg.problem.eps.Build(grid); });
  const auto mu = Rethrow("materials.mu", [&] { return cfg.problem.mu.Build(grid); });
  cfg.problem.case_config = ParseCase(r.Require("case"));
  Rethrow("case", [&] {
    MakeCase(cfg.problem.case_config, grid, eps, mu);
    return 0;
  });
  if (const json *pj = r.Find("perturbation"))
  {
    ObjectReader pr(*pj, "perturbation");
    PerturbationConfig pc;
    pc.bump = pr.String("bump", pc.bump);
    pc.delta = pr.Number("delta");
    pr.Finish();
    Rethrow("perturbation.bump", [&] {
      MakeBump(pc.bump, grid);
      return 0;
    });
    cfg.perturbation = pc;
  }
  if (const json *sj = r.Find("solver"))
  {
    ObjectReader sr(*sj, "solver");
    const auto method = sr.String("method", "leapfrog");
    if (method == "leapfrog")
    {
      cfg.solver.method = SolveMethod::Leapfrog;
    }
    else if (method == "exact")
    {
      cfg.solver.method = SolveMethod::Exact;
    }
    else
    {
      ObjectReader::Fail("solver.method", "expected leapfrog or exact");
    }
    cfg.solver.cfl = sr.Number("cfl", 1.0);
    if (!(cfg.solver.cfl > 0.0 && cfg.solver.cfl <= 1.0))
    {
      ObjectReader::Fail("solver.cfl", "must lie in (0,1]");
    }
    sr.Finish();
  }
  if (const json *mj = r.Find("majorant"))
  {
    cfg.majorant = ParseMajorant(*mj, grid.nt);
  }
  if (const json *vj = r.Find("verify"))
  {
    ObjectReader vr(*vj, "verify");
    const auto levels = vr.Numbers("levels");
    cfg.verify.levels.clear();
    for (std::size_t i = 0; i < levels.size(); i++)
    {
      const double l = levels[i];
      if (l != std::floor(l) || l < 1 || (i > 0 && !(l > levels[i - 1])))
      {
        ObjectReader::Fail("verify.levels", "expected increasing positive integers");
      }
      cfg.verify.levels.push_back(static_cast<int>(l));
    }
    vr.Finish();
  }
  r.Finish();
  return cfg;
}

RunConfig LoadConfig(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json doc;
  try
  {
    doc = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return ParseConfig(doc);
}

namespace
{

json MaterialToJson(const MaterialSpec &m)
{
  switch (m.kind)
  {
  case MaterialKind::Scalar:
    return {{"kind", "scalar"}, {"value", m.tensor[0]}};
  case MaterialKind::Diagonal:
    return {{"kind", "diagonal"}, {"values", {m.tensor[0], m.tensor[4], m.tensor[8]}}};
  case MaterialKind::Full:
    return {{"kind", "full"}, {"values", m.tensor}};
  }
  return {};
}

}  // namespace

json ConfigToJson(const RunConfig &cfg)
{
  const auto &g = cfg.problem.grid;
  const auto &c = cfg.problem.case_config;
  const auto &m = cfg.majorant;
  const auto &o = m.optimizer;
  json doc;
  doc["grid"] = {{"nx", g.nx}, {"ny", g.ny}, {"nz", g.nz}, {"lx", g.lx},
                 {"ly", g.ly}, {"lz", g.lz}, {"nt", g.nt}, {"T", g.T}};
  doc["materials"] = {{"eps", MaterialToJson(cfg.problem.eps)},
                      {"mu", MaterialToJson(cfg.problem.mu)}};
  doc["case"] = {{"name", c.name},
                 {"params", c.params},
                 {"dispersion", c.dispersion == Dispersion::Discrete ? "discrete" : "continuous"}};
  if (cfg.perturbation)
  {
    doc["perturbation"] = {{"bump", cfg.perturbation->bump}, {"delta", cfg.perturbation->delta}};
  }
  doc["solver"] = {{"method", ToString(cfg.solver.method)}, {"cfl", cfg.solver.cfl}};
  doc["majorant"] = {
      {"theorem", ToString(m.theorem)},
      {"gamma", m.gamma},
      {"rho", m.rho},
      {"zeroTermVariant", ToString(m.zero_term)},
      {"absCoupling", m.abs_coupling},
      {"optimize", ToString(m.optimize)},
      {"combined", m.combined},
      {"optimizer",
       {{"gammaBracket", {o.gamma_min, o.gamma_max}},
        {"gammaTol", o.gamma_tol},
        {"rhoGrid", o.rho_grid},
        {"cgMaxIter", o.cg_max_iter},
        {"cgTol", o.cg_tol},
        {"yInit", o.y_init == YInit::Zero ? "zero" : "muInvCurlE"},
        {"sweeps", o.sweeps},
        {"gammaPieces", o.gamma_pieces},
        {"coordinatePasses", o.coordinate_passes},
        {"targetIndex", o.target_index}}}};
  doc["verify"] = {{"levels", cfg.verify.levels}};
  return doc;
}

RunConfig RefineTo(const RunConfig &cfg, int level)
{
  RunConfig out = cfg;
  auto &g = out.problem.grid;
  const auto &g0 = cfg.problem.grid;
  const long num = level, den = g0.nx;
  auto scale = [&](long n, const char *what) {
    if ((n * num) % den != 0)
    {
      throw ConfigError(std::string("verify.levels: level ") + std::to_string(level) +
                        " does not scale grid." + what + " to an integer");
    }
    return static_cast<int>(n * num / den);
  };
  g.nx = level;
  g.ny = scale(g0.ny, "ny");
  g.nz = scale(g0.nz, "nz");
  g.nt = scale(g0.nt - 1, "nt") + 1;
  out.majorant.optimizer.target_index = -1;
  return out;
}

}  // namespace maxmaj

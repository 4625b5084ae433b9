// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#include "maxmaj/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "maxmaj/error.hpp"

namespace maxmaj
{

using nlohmann::json;

namespace
{

static_assert(sizeof(double) == 8);

template <typename T>
T ToLittle(T v)
{
  if constexpr (std::endian::native == std::endian::big)
  {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

void PutU32(std::string &buf, std::uint32_t v)
{
  v = ToLittle(v);
  buf.append(reinterpret_cast<const char *>(&v), 4);
}

void PutDoubles(std::string &buf, std::span<const double> values)
{
  const std::size_t at = buf.size();
  buf.resize(at + 8 * values.size());
  for (std::size_t i = 0; i < values.size(); i++)
  {
    const double v = ToLittle(values[i]);
    std::memcpy(buf.data() + at + 8 * i, &v, 8);
  }
}

[[noreturn]] void Corrupt(const std::string &path, const std::string &what)
{
  throw DataMismatchError("snapshot '" + path + "': " + what);
}

json GridJson(const GridSpec &g)
{
  return {{"nx", g.nx}, {"ny", g.ny}, {"nz", g.nz}, {"lx", g.lx},
          {"ly", g.ly}, {"lz", g.lz}, {"nt", g.nt}, {"T", g.T}};
}

struct NamedField
{
  const char *name;
  FieldTrajectory SolveOutput::*member;
  FieldKind kind;
};

constexpr NamedField kFields[] = {{"E", &SolveOutput::E, FieldKind::Edge},
                                  {"H", &SolveOutput::H, FieldKind::Face},
                                  {"Et", &SolveOutput::Et, FieldKind::Edge},
                                  {"Ht", &SolveOutput::Ht, FieldKind::Face}};

}  // namespace

void WriteSnapshot(const std::string &path, const Snapshot &snap)
{
  RequireMatchingGrid(snap.fields, snap.grid);
  std::string data;
  json fields = json::array();
  for (const auto &nf : kFields)
  {
    const auto &traj = snap.fields.*nf.member;
    if (traj.empty())
    {
      continue;
    }
    json comps = json::array();
    for (int c = 0; c < 3; c++)
    {
      comps.push_back(traj[0].Extents(c));
    }
    fields.push_back({{"name", nf.name},
                      {"kind", ToString(nf.kind)},
                      {"nodes", traj.size()},
                      {"extents", comps},
                      {"offset", data.size()}});
    for (const auto &f : traj.samples())
    {
      for (int c = 0; c < 3; c++)
      {
        PutDoubles(data, f.Component(c));
      }
    }
  }
  fields.push_back({{"name", "energy"},
                    {"kind", "scalar"},
                    {"nodes", snap.fields.energy.size()},
                    {"offset", data.size()}});
  PutDoubles(data, snap.fields.energy);
  const json header = {{"format", "maxmaj field snapshot"},
                       {"byteOrder", "little"},
                       {"dtype", "float64"},
                       {"layout", "field by field, node by node, components x y z, k fastest"},
                       {"grid", GridJson(snap.grid)},
                       {"fields", fields},
                       {"dataBytes", data.size()},
                       {"meta", snap.meta}};
  const std::string text = header.dump();
  std::string out(kSnapshotMagic, 8);
  PutU32(out, kSnapshotVersion);
  PutU32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file)
  {
    throw Error("cannot write snapshot '" + path + "'");
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  file.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!file)
  {
    throw Error("failed writing snapshot '" + path + "'");
  }
}

Snapshot ReadSnapshot(const std::string &path)
{
  std::ifstream file(path, std::ios::binary);
  if (!file)
  {
    Corrupt(path, "cannot open");
  }
  const std::string buf((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (buf.size() < 16 || buf.compare(0, 8, kSnapshotMagic, 8) != 0)
  {
    Corrupt(path, "bad magic");
  }
  auto u32 = [&](std::size_t at) {
    std::uint32_t v;
    std::memcpy(&v, buf.data() + at, 4);
    return ToLittle(v);
  };
  if (u32(8) != kSnapshotVersion)
  {
    Corrupt(path, "unsupported version " + std::to_string(u32(8)));
  }
  const std::size_t hlen = u32(12);
  if (buf.size() < 16 + hlen)
  {
    Corrupt(path, "truncated header");
  }
  const std::size_t base = 16 + hlen;
  Snapshot snap;
  try
  {
    const json header = json::parse(buf.substr(16, hlen));
    const auto &g = header.at("grid");
    snap.grid.nx = g.at("nx");
    snap.grid.ny = g.at("ny");
    snap.grid.nz = g.at("nz");
    snap.grid.lx = g.at("lx");
    snap.grid.ly = g.at("ly");
    snap.grid.lz = g.at("lz");
    snap.grid.nt = g.at("nt");
    snap.grid.T = g.at("T");
    snap.grid.Validate();
    snap.meta = header.value("meta", json::object());
    if (buf.size() != base + header.at("dataBytes").get<std::size_t>())
    {
      Corrupt(path, "data block size does not match the header");
    }
    auto read = [&](std::size_t offset, std::span<double> dst) {
      if (offset + 8 * dst.size() > buf.size() - base)
      {
        Corrupt(path, "field data out of range");
      }
      for (std::size_t i = 0; i < dst.size(); i++)
      {
        double v;
        std::memcpy(&v, buf.data() + base + offset + 8 * i, 8);
        dst[i] = ToLittle(v);
      }
    };
    for (const auto &f : header.at("fields"))
    {
      const std::string name = f.at("name");
      std::size_t offset = f.at("offset");
      const int nodes = f.at("nodes");
      if (name == "energy")
      {
        snap.fields.energy.resize(nodes);
        read(offset, snap.fields.energy);
        continue;
      }
      const NamedField *nf = nullptr;
      for (const auto &k : kFields)
      {
        if (name == k.name)
        {
          nf = &k;
        }
      }
      if (!nf || f.at("kind") != ToString(nf->kind) || nodes != snap.grid.nt)
      {
        Corrupt(path, "unexpected field entry '" + name + "'");
      }
      FieldTrajectory traj(nf->kind, snap.grid);
      for (int n = 0; n < nodes; n++)
      {
        for (int c = 0; c < 3; c++)
        {
          if (f.at("extents").at(c).get<std::array<int, 3>>() != traj[n].Extents(c))
          {
            Corrupt(path, "extents of '" + name + "' do not match the grid");
          }
          auto comp = traj[n].Component(c);
          read(offset, comp);
          offset += 8 * comp.size();
        }
      }
      snap.fields.*(nf->member) = std::move(traj);
    }
  }
  catch (const json::exception &e)
  {
    Corrupt(path, std::string("malformed header: ") + e.what());
  }
  catch (const ParameterError &e)
  {
    Corrupt(path, std::string("invalid grid: ") + e.what());
  }
  if (snap.fields.E.empty())
  {
    Corrupt(path, "no E field");
  }
  return snap;
}

}  // namespace maxmaj

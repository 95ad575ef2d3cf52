#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cohlat.hpp"
#include "dynkin.hpp"
#include "fmcoh.hpp"
#include "walls.hpp"
#include "weyl.hpp"

namespace mukai {

using json = nlohmann::ordered_json;

// ---- exact scalars ----------------------------------------------------------------

/// Integers that fit in int64 print as JSON numbers; everything else as canonical
/// "p/q" strings, so output never goes through floating point.
inline json rat_to_json(const Rat& q) {
  if (is_integer(q)) {
    Int n = rat_num(q);
    if (n >= std::numeric_limits<std::int64_t>::min() &&
        n <= std::numeric_limits<std::int64_t>::max())
      return json(static_cast<std::int64_t>(n));
  }
  return json(rat_str(q));
}

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Rat(Int(j.get<std::uint64_t>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  fail(ErrKind::parse, "expected an integer or \"p/q\" string, got " + j.dump());
}

inline json vecq_to_json(const VecQ& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_to_json(x));
  return a;
}

inline VecQ vecq_from_json(const json& j) {
  require(j.is_array(), ErrKind::parse, "expected an array of rationals, got " + j.dump());
  VecQ v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

inline json vecz_to_json(const VecZ& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_to_json(Rat(x)));
  return a;
}

inline json matq_to_json(const MatQ& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(vecq_to_json(row));
  return a;
}

inline MatQ matq_from_json(const json& j) {
  require(j.is_array(), ErrKind::parse, "expected an array of arrays, got " + j.dump());
  MatQ m;
  for (const auto& row : j) m.push_back(vecq_from_json(row));
  return m;
}

inline json matz_to_json(const MatZ& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(vecz_to_json(row));
  return a;
}

// ---- domain objects ---------------------------------------------------------------

namespace detail {
inline const json& field(const json& j, const char* key, const char* what) {
  require(j.is_object(), ErrKind::parse, std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  require(it != j.end(), ErrKind::parse,
          std::string(what) + " is missing required key \"" + key + "\"");
  return *it;
}
}  // namespace detail

inline json surface_to_json(const SurfaceData& s) {
  json j;
  j["rank"] = s.rank;
  j["gram"] = matq_to_json(s.gram);
  j["canonical"] = vecq_to_json(s.canonical);
  j["chiO"] = rat_to_json(s.chiO);
  return j;
}

/// Structural parse only; callers run validate_surface before computing.
inline SurfaceData surface_from_json(const json& j) {
  SurfaceData s;
  const json& rank = detail::field(j, "rank", "surface");
  require(rank.is_number_integer() || rank.is_number_unsigned(), ErrKind::parse,
          "surface rank must be an integer");
  s.rank = rank.get<std::size_t>();
  s.gram = matq_from_json(detail::field(j, "gram", "surface"));
  s.canonical = vecq_from_json(detail::field(j, "canonical", "surface"));
  s.chiO = rat_from_json(detail::field(j, "chiO", "surface"));
  return s;
}

inline json coh_to_json(const CohClass& x) {
  json j;
  j["r"] = rat_to_json(x.r);
  j["c1"] = vecq_to_json(x.c1);
  j["s"] = rat_to_json(x.s);
  return j;
}

inline CohClass coh_from_json(const json& j) {
  CohClass x;
  x.r = rat_from_json(detail::field(j, "r", "cohclass"));
  x.c1 = vecq_from_json(detail::field(j, "c1", "cohclass"));
  x.s = rat_from_json(detail::field(j, "s", "cohclass"));
  return x;
}

inline json rootset_to_json(const RootSet& rs) {
  json j;
  j["gram"] = matq_to_json(rs.gram);
  j["norm"] = rat_to_json(rs.norm);
  j["count"] = rs.roots.size();
  json arr = json::array();
  for (const auto& r : rs.roots) arr.push_back(vecz_to_json(r));
  j["roots"] = arr;
  return j;
}

inline json wall_to_json(const Wall& w) {
  json j;
  j["normal"] = vecq_to_json(w.normal);
  j["offset"] = rat_to_json(w.offset);
  j["u"] = coh_to_json(w.u);
  return j;
}

inline Wall wall_from_json(const json& j) {
  Wall w;
  w.normal = vecq_from_json(detail::field(j, "normal", "wall"));
  w.offset = rat_from_json(detail::field(j, "offset", "wall"));
  w.u = coh_from_json(detail::field(j, "u", "wall"));
  return w;
}

inline json wall_family_to_json(const WallFamily& fam) {
  json j;
  json ws = json::array();
  for (const auto& w : fam.walls) ws.push_back(wall_to_json(w));
  j["walls"] = ws;
  json deg = json::array();
  for (const auto& u : fam.degenerate) deg.push_back(coh_to_json(u));
  j["degenerate"] = deg;
  return j;
}

inline std::vector<Wall> walls_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) arr = &detail::field(j, "walls", "wall list");
  require(arr->is_array(), ErrKind::parse, "expected a wall array");
  std::vector<Wall> out;
  for (const auto& e : *arr) out.push_back(wall_from_json(e));
  return out;
}

inline json path_to_json(const ChamberPath& p) {
  json j;
  j["start"] = vecq_to_json(p.start);
  j["end"] = vecq_to_json(p.end);
  json cs = json::array();
  for (const auto& c : p.crossings) {
    json e;
    e["t"] = rat_to_json(c.t);
    json ws = json::array();
    for (const auto& w : c.walls) ws.push_back(wall_to_json(w));
    e["walls"] = ws;
    cs.push_back(e);
  }
  j["crossings"] = cs;
  return j;
}

inline json word_to_json(const WeylWord& w) {
  json arr = json::array();
  for (const auto& g : w.gens) {
    json e;
    if (g.kind == WeylGen::Kind::refl)
      e["refl"] = coh_to_json(g.u);
    else
      e["trans"] = vecq_to_json(g.d);
    arr.push_back(e);
  }
  return arr;
}

inline WeylWord word_from_json(const SurfaceData& s, const json& j) {
  require(j.is_array(), ErrKind::parse, "a word is an array of generators");
  std::vector<WeylGen> gens;
  for (const auto& e : j) {
    require(e.is_object() && e.size() == 1, ErrKind::parse,
            "each generator is {\"refl\": cohclass} or {\"trans\": [..]}");
    if (e.contains("refl"))
      gens.push_back(make_refl(s, coh_from_json(e["refl"])));
    else if (e.contains("trans"))
      gens.push_back(make_trans(s, vecq_from_json(e["trans"])));
    else
      fail(ErrKind::parse, "unknown generator " + e.dump());
  }
  return make_word(s, std::move(gens));
}

inline json report_to_json(const DynkinReport& rep) {
  json comps = json::array();
  for (const auto& c : rep.components) {
    json e;
    e["label"] = c.label;
    e["simple_roots"] = matz_to_json(c.simple_roots);
    e["affine_label"] = c.affine_label;
    e["affine_simple_roots"] = matz_to_json(c.affine_simple_roots);
    e["marks"] = vecz_to_json(c.marks);
    e["affine_node"] = c.affine_node;
    json lifts = json::array();
    for (const auto& u : c.lifts) lifts.push_back(coh_to_json(u));
    e["lifts"] = lifts;
    json dec = json::array();
    for (const auto& [mult, u] : c.decomposition) {
      json d;
      d["mult"] = rat_to_json(Rat(mult));
      d["u"] = coh_to_json(u);
      dec.push_back(d);
    }
    e["decomposition"] = dec;
    comps.push_back(e);
  }
  json j;
  j["components"] = comps;
  return j;
}

/// {"source": {"surface","v0","H"}, "target": {"surface","w0","H"|"Hhat"},
///  "theta": [[..]], "post_translate": [..]?}
inline FMIsometry fmiso_from_json(const json& j) {
  auto side = [&](const json& sj, const char* vkey, const char* what) {
    SurfaceData surf = surface_from_json(detail::field(sj, "surface", what));
    validate_surface(surf);
    CohClass v = coh_from_json(detail::field(sj, vkey, what));
    const json* h;
    if (sj.is_object() && sj.contains("Hhat"))
      h = &sj["Hhat"];
    else
      h = &detail::field(sj, "H", what);
    return make_fm_side(std::move(surf), std::move(v), vecq_from_json(*h), false);
  };
  FMSide src = side(detail::field(j, "source", "fmiso"), "v0", "fmiso source");
  FMSide tgt = side(detail::field(j, "target", "fmiso"), "w0", "fmiso target");
  MatQ theta = matq_from_json(detail::field(j, "theta", "fmiso"));
  VecQ post;
  if (j.contains("post_translate")) post = vecq_from_json(j["post_translate"]);
  return make_fm_iso(std::move(src), std::move(tgt), std::move(theta), std::move(post));
}

inline json error_to_json(const MukaiError& e) {
  json j;
  json inner;
  inner["kind"] = err_kind_name(e.kind());
  inner["detail"] = std::string(e.what());
  j["error"] = inner;
  return j;
}

// ---- files and inline arguments -----------------------------------------------------

inline json parse_json_text(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrKind::parse, "invalid JSON in " + origin);
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrKind::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  require(!in.bad(), ErrKind::io, "cannot read '" + path + "'");
  return parse_json_text(buf.str(), "'" + path + "'");
}

/// CLI arguments may carry JSON inline (first character '{' or '[') or name a file.
inline json arg_to_json(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return parse_json_text(arg, "argument");
  return read_json_file(arg);
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mukai

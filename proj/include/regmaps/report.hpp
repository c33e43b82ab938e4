#pragma once

// JSON, CSV and markdown renderings of census rows, map listings and oracle
// diffs.  Field elements are written as powers of the generator ("g^i").

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "regmaps/enumerate.hpp"
#include "regmaps/oracle.hpp"

namespace regmaps {

using json = nlohmann::ordered_json;

inline json to_json(const CensusRow& r) {
  return {{"q", r.q},         {"maps", r.maps},   {"none", r.none},   {"sd_only", r.sd_only},
          {"sp_only", r.sp_only}, {"sd_sp", r.sd_sp}, {"sp_mr", r.sp_mr}, {"sd_sp_mr", r.sd_sp_mr}};
}

inline json to_json(const FieldCtx& ctx, const Mat2& m) {
  return json::array({json::array({ctx.power_notation(m.a), ctx.power_notation(m.b)}),
                      json::array({ctx.power_notation(m.c), ctx.power_notation(m.d)})});
}

inline json to_json(const FieldCtx& ctx, const SemilinearAuto& f) {
  return {{"A", to_json(ctx, f.A.rep())}, {"j", f.j}};
}

inline json to_json(const FieldCtx& ctx, const MapClass& c) {
  const MapSignature& s = c.signature;
  const auto opt = [&](const std::optional<Fel>& x) { return x ? json(ctx.power_notation(*x)) : json(nullptr); };
  json out = {{"q", ctx.q()},
              {"k", s.k},
              {"l", s.l},
              {"family", to_string(s.family)},
              {"xi_k", opt(s.xi_k)},
              {"xi_l", opt(s.xi_l)},
              {"omega_k", ctx.power_notation(s.omega_k)},
              {"omega_l", ctx.power_notation(s.omega_l)},
              {"sd", c.flags.sd},
              {"sp", c.flags.sp},
              {"mr", c.flags.mr},
              {"group", to_string(c.group)}};
  if (c.flags.sd_witness) out["sd_witness"] = to_json(ctx, *c.flags.sd_witness);
  if (c.flags.sp_witness) out["sp_witness"] = to_json(ctx, *c.flags.sp_witness);
  if (c.flags.sd_witness || c.flags.sp_witness) out["frame"] = to_json(ctx, c.triple.frame.basis);
  return out;
}

inline json to_json(const DiffReport& d) {
  json entries = json::array();
  for (const DiffEntry& e : d.entries)
    entries.push_back({{"k", e.k}, {"l", e.l}, {"what", e.what}, {"expected", e.expected}, {"actual", e.actual}});
  return {{"q", d.q}, {"empty", d.empty()}, {"mismatches", entries}};
}

inline constexpr const char* kCensusColumns[] = {"q", "maps", "none", "sd_only", "sp_only", "sd_sp", "sp_mr", "sd_sp_mr"};

inline void write_census_json(std::ostream& os, const std::vector<CensusRow>& rows) {
  json arr = json::array();
  for (const CensusRow& r : rows) arr.push_back(to_json(r));
  os << arr.dump(2) << '\n';
}

inline void write_census_csv(std::ostream& os, const std::vector<CensusRow>& rows) {
  for (std::size_t i = 0; i < std::size(kCensusColumns); ++i) os << (i ? "," : "") << kCensusColumns[i];
  os << '\n';
  for (const CensusRow& r : rows)
    os << r.q << ',' << r.maps << ',' << r.none << ',' << r.sd_only << ',' << r.sp_only << ',' << r.sd_sp << ','
       << r.sp_mr << ',' << r.sd_sp_mr << '\n';
}

inline void write_census_md(std::ostream& os, const std::vector<CensusRow>& rows) {
  os << "| q | Maps | None | SD only | SP only | SD+SP | SP+MR | SD+SP+MR |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (const CensusRow& r : rows)
    os << "| " << r.q << " | " << r.maps << " | " << r.none << " | " << r.sd_only << " | " << r.sp_only << " | "
       << r.sd_sp << " | " << r.sp_mr << " | " << r.sd_sp_mr << " |\n";
}

inline void write_listing_json(std::ostream& os, const FieldCtx& ctx, const std::vector<MapClass>& classes) {
  json arr = json::array();
  for (const MapClass& c : classes) arr.push_back(to_json(ctx, c));
  os << arr.dump(2) << '\n';
}

inline void write_listing_csv(std::ostream& os, const FieldCtx& ctx, const std::vector<MapClass>& classes) {
  os << "q,k,l,family,xi_k,xi_l,omega_k,omega_l,sd,sp,mr,group\n";
  const auto opt = [&](const std::optional<Fel>& x) { return x ? ctx.power_notation(*x) : std::string(); };
  for (const MapClass& c : classes) {
    const MapSignature& s = c.signature;
    os << ctx.q() << ',' << s.k << ',' << s.l << ',' << to_string(s.family) << ',' << opt(s.xi_k) << ','
       << opt(s.xi_l) << ',' << ctx.power_notation(s.omega_k) << ',' << ctx.power_notation(s.omega_l) << ','
       << c.flags.sd << ',' << c.flags.sp << ',' << c.flags.mr << ',' << to_string(c.group) << '\n';
  }
}

/// Log tables of GF(q^2), for debugging.
inline json field_to_json(const FieldCtx& ctx) {
  json exp = json::array();
  for (std::int64_t i = 0; i < ctx.group_order(); ++i) exp.push_back(ctx.code(Fel::from_log(static_cast<std::int32_t>(i))));
  return {{"p", ctx.p()},
          {"e", ctx.e()},
          {"q", ctx.q()},
          {"modulus", ctx.modulus()},
          {"generator_code", ctx.generator_code()},
          {"alpha", ctx.power_notation(ctx.alpha())},
          {"exp", exp}};
}

}  // namespace regmaps

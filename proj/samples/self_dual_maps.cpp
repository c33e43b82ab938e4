// Lists the self-dual and self-Petrie-dual maps for one q, with the
// automorphisms that realize each property.
//
//   self_dual_maps 11

#include <cstdlib>
#include <iostream>

#include "regmaps/regmaps.hpp"

int main(int argc, char** argv) {
  const std::int64_t q = argc > 1 ? std::atoll(argv[1]) : 11;
  const regmaps::FieldCtx ctx = regmaps::ctx_for_q(q);
  for (const regmaps::MapClass& c : regmaps::enumerate_maps(ctx, {regmaps::ClassifyMode::validate, false, nullptr})) {
    if (!c.flags.sd && !c.flags.sp) continue;
    std::cout << regmaps::to_json(ctx, c).dump() << '\n';
  }
}

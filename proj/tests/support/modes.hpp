#pragma once

// The execution strategies every theory must agree on.

#include <string>
#include <vector>

#include "lpc/pipeline.hpp"

namespace lpc::test {

struct Mode {
  std::string name;
  Config cfg;
};

inline std::vector<Mode> all_modes(std::optional<std::uint64_t> seed = std::nullopt) {
  std::vector<Mode> out;
  Config base;
  base.seed = seed;
  out.push_back({"sequential", base});
  Config pt = base;
  pt.parse_thread = true;
  out.push_back({"parse-thread", pt});
  for (unsigned n : {1u, 2u, 4u, 8u}) {
    Config c = base;
    c.jobs = n;
    out.push_back({"jobs=" + std::to_string(n), c});
    c.parse_thread = true;
    out.push_back({"parse-thread+jobs=" + std::to_string(n), c});
  }
  return out;
}

}  // namespace lpc::test

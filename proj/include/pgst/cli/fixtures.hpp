#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/graph/text_format.hpp"

namespace pgst::cli {

struct Fixture {
  std::string name;
  std::string text;
  std::string u, v;
  std::optional<std::string> w;
  std::string description;

  graph::Graph graph() const { return graph::parse_graph(text); }
};

inline const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all{
      {"G_A",
       "n 9\n"
       "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 5 8\ne 6 7\n",
       "3", "6", std::nullopt,
       "path 0..7 with a pendant vertex 8 at 5; cospectral pair 3, 6"},
      {"G_B",
       "n 9\n"
       "e 0 1\ne 0 2\ne 0 3\ne 0 6\ne 1 2\ne 3 4\ne 3 7\ne 4 5\ne 4 8\ne 5 6\ne 5 8\n",
       "1", "8", std::nullopt,
       "triangle 0,1,2 and pentagon 0,3,4,5,6 sharing 0, pendant 7 at 3, vertex 8 on 4 and 5; "
       "cospectral but not strongly cospectral pair 1, 8"},
      {"G_C",
       "n 10\n"
       "l 0 o0\nl 1 o1\nl 2 o2\nl 3 o3\nl 4 o4\nl 5 o5\nl 6 o6\nl 7 o7\nl 8 u\nl 9 v\n"
       "e 0 1\ne 0 7\ne 0 8\ne 1 2\ne 1 8\ne 2 3\ne 2 8\ne 3 4\ne 3 9\ne 4 5\ne 4 9\n"
       "e 5 6\ne 5 8\ne 6 7\ne 6 9\ne 7 9\n",
       "u", "v", std::nullopt,
       "8-cycle with hubs u, v; equitable partition {u, v}, {o0..o7} without an involution"},
      {"G_D",
       "n 10\n"
       "l 0 h0\nl 1 h1\nl 2 h2\nl 3 h3\nl 4 h4\nl 5 h5\nl 6 a1\nl 7 a2\nl 8 b1\nl 9 b2\n"
       "e 0 1\ne 0 5\ne 0 6\ne 1 2\ne 2 3\ne 3 4\ne 3 8\ne 4 5\ne 6 7\ne 8 9\n",
       "h1", "h4", std::nullopt,
       "hexagon h0..h5 with paths h0-a1-a2 and h3-b1-b2; pair h1, h4"},
  };
  return all;
}

inline const Fixture& fixture(const std::string& name) {
  std::string key = !name.empty() && name[0] == '@' ? name.substr(1) : name;
  for (const auto& f : fixtures())
    if (f.name == key) return f;
  throw ParseError("unknown fixture '" + name + "'");
}

}  // namespace pgst::cli

#pragma once

// Small named diagrams used by tests, the acceptance run and the CLI.

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "qalt/diagram.hpp"

namespace qalt {

/// Closure of a braid on `strands` strands. Letter +i is sigma_i (positive
/// crossing between positions i and i+1, 1-based), -i its inverse. Strands
/// that no letter touches close up into free loops.
inline Diagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw Error(ErrorKind::EmptyDiagram, "a braid needs at least one strand");
  std::vector<int> pos(static_cast<std::size_t>(strands));
  for (int k = 0; k < strands; ++k) pos[static_cast<std::size_t>(k)] = k + 1;
  int next = strands + 1;
  std::vector<std::array<int, 4>> tuples;
  for (int letter : word) {
    const int i = letter > 0 ? letter : -letter;
    if (letter == 0 || i >= strands) throw Error(ErrorKind::InvalidCrossing, "braid letter out of range");
    auto& left = pos[static_cast<std::size_t>(i - 1)];
    auto& right = pos[static_cast<std::size_t>(i)];
    const int a = left, b = right, top_left = next++, top_right = next++;
    // a runs bottom-left to top-right, b bottom-right to top-left
    if (letter > 0) tuples.push_back({b, top_right, top_left, a});
    else tuples.push_back({a, b, top_right, top_left});
    left = top_left;
    right = top_right;
  }
  std::unordered_map<int, int> closing;
  int loops = 0;
  for (int k = 0; k < strands; ++k) {
    if (pos[static_cast<std::size_t>(k)] == k + 1) ++loops;
    else closing[pos[static_cast<std::size_t>(k)]] = k + 1;
  }
  for (auto& t : tuples)
    for (auto& label : t)
      if (auto it = closing.find(label); it != closing.end()) label = it->second;
  return Diagram::from_pd(tuples, loops);
}

/// The (2,n)-torus diagram: closure of sigma_1^n, negative crossings for n < 0.
inline Diagram torus_2n(int n) {
  if (n == 0) return Diagram::unlink(2);
  return braid_closure(2, std::vector<int>(static_cast<std::size_t>(n > 0 ? n : -n), n > 0 ? 1 : -1));
}

struct CorpusEntry {
  std::string name;
  Diagram diagram;
  bool torus_2n = false;     // a (2,n)-torus diagram
  bool hopf_sum = false;     // connected sum of Hopf diagrams
  bool prime = true;
};

namespace corpus {

inline Diagram curl() { return parse_pd("X[1,1,2,2]"); }
inline Diagram hopf() { return parse_pd("X[4,1,3,2] X[2,3,1,4]"); }
inline Diagram trefoil() { return parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"); }
inline Diagram figure_eight() { return parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"); }
inline Diagram three_twist() { return parse_pd("X[1,5,2,4] X[3,9,4,8] X[5,1,6,10] X[7,3,8,2] X[9,7,10,6]"); }
inline Diagram stevedore() {
  return parse_pd("X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]");
}
inline Diagram six_two() {
  return parse_pd("X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]");
}
inline Diagram six_three() {
  return parse_pd("X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]");
}

/// Every named diagram, all connected and with at most 10 crossings.
inline std::vector<CorpusEntry> standard() {
  std::vector<CorpusEntry> out;
  out.push_back({"unknot", Diagram::unknot()});
  out.push_back({"curl", curl()});
  out.push_back({"hopf", hopf(), true});
  out.push_back({"trefoil", trefoil(), true});
  out.push_back({"figure-eight", figure_eight()});
  out.push_back({"three-twist", three_twist()});
  out.push_back({"stevedore", stevedore()});
  out.push_back({"six-two", six_two()});
  out.push_back({"six-three", six_three()});
  for (int n = 2; n <= 7; ++n) out.push_back({"torus-2-" + std::to_string(n), torus_2n(n), true});
  out.push_back({"hopf#hopf", connected_sum(hopf(), hopf()), false, true, false});
  out.push_back({"hopf#trefoil", connected_sum(hopf(), trefoil()), false, false, false});
  return out;
}

}  // namespace corpus
}  // namespace qalt

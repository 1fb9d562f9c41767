#ifndef KADCON_DIMACS_HPP
#define KADCON_DIMACS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kadcon/even_transform.hpp"

namespace kadcon {

// A max-flow problem in memory; vertices 0-based (the text form is 1-based).
struct DimacsProblem {
  int nodes = 0;
  int source = -1;
  int sink = -1;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int64_t> caps;
};

// Text form: `p max <nodes> <arcs>`, `n <id> s`, `n <id> t`, then one
// `a <from> <to> <capacity>` per arc, ids 1-based. Byte-exact output so
// third-party solvers can cross-check flow values.
void write_dimacs(const DimacsProblem& problem, std::ostream& out);
// Transformed connectivity instance: every capacity is 1.
void write_dimacs(const TransformedGraph& g, int source, int sink, std::ostream& out);
std::string dimacs_to_string(const DimacsProblem& problem);
std::string dimacs_to_string(const TransformedGraph& g, int source, int sink);

// Accepts `c` comment lines and blank lines anywhere. Throws ParseError
// with a 1-based line number on malformed input.
DimacsProblem read_dimacs(std::istream& in);
DimacsProblem load_dimacs_file(const std::string& path);
void save_dimacs_file(const DimacsProblem& problem, const std::string& path);

}  // namespace kadcon

#endif

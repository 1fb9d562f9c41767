#include "kadcon/dimacs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kadcon/snapshot.hpp"

namespace kadcon {

void write_dimacs(const DimacsProblem& problem, std::ostream& out) {
  if (problem.nodes < 2) throw std::invalid_argument("dimacs: need at least 2 nodes");
  if (problem.source < 0 || problem.source >= problem.nodes || problem.sink < 0 ||
      problem.sink >= problem.nodes || problem.source == problem.sink) {
    throw std::invalid_argument("dimacs: bad terminals");
  }
  if (problem.caps.size() != problem.arcs.size()) {
    throw std::invalid_argument("dimacs: arc/capacity count mismatch");
  }
  char line[96];
  std::snprintf(line, sizeof line, "p max %d %d\n", problem.nodes,
                static_cast<int>(problem.arcs.size()));
  out << line;
  std::snprintf(line, sizeof line, "n %d s\n", problem.source + 1);
  out << line;
  std::snprintf(line, sizeof line, "n %d t\n", problem.sink + 1);
  out << line;
  for (size_t i = 0; i < problem.arcs.size(); ++i) {
    auto [from, to] = problem.arcs[i];
    if (from < 0 || from >= problem.nodes || to < 0 || to >= problem.nodes) {
      throw std::invalid_argument("dimacs: arc endpoint out of range");
    }
    std::snprintf(line, sizeof line, "a %d %d %lld\n", from + 1, to + 1,
                  static_cast<long long>(problem.caps[i]));
    out << line;
  }
}

void write_dimacs(const TransformedGraph& g, int source, int sink, std::ostream& out) {
  DimacsProblem problem;
  problem.nodes = g.n2;
  problem.source = source;
  problem.sink = sink;
  problem.arcs = g.arcs;
  problem.caps.assign(g.arcs.size(), 1);
  write_dimacs(problem, out);
}

std::string dimacs_to_string(const DimacsProblem& problem) {
  std::ostringstream out;
  write_dimacs(problem, out);
  return out.str();
}

std::string dimacs_to_string(const TransformedGraph& g, int source, int sink) {
  std::ostringstream out;
  write_dimacs(g, source, sink, out);
  return out.str();
}

DimacsProblem read_dimacs(std::istream& in) {
  DimacsProblem problem;
  bool have_p = false;
  bool have_s = false;
  bool have_t = false;
  int declared_arcs = 0;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("dimacs:" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    char tail = 0;
    if (line[0] == 'p') {
      if (have_p) fail("duplicate problem line");
      char keyword[8] = {0};
      int nodes = 0;
      int arcs = 0;
      if (std::sscanf(line.c_str(), "p %7s %d %d %c", keyword, &nodes, &arcs, &tail) != 3 ||
          std::string(keyword) != "max") {
        fail("malformed problem line: " + line);
      }
      if (nodes < 2 || arcs < 0) fail("bad problem dimensions");
      problem.nodes = nodes;
      declared_arcs = arcs;
      have_p = true;
    } else if (line[0] == 'n') {
      if (!have_p) fail("node descriptor before problem line");
      int id = 0;
      char which = 0;
      if (std::sscanf(line.c_str(), "n %d %c %c", &id, &which, &tail) != 2) {
        fail("malformed node descriptor: " + line);
      }
      if (id < 1 || id > problem.nodes) fail("node id out of range");
      if (which == 's') {
        if (have_s) fail("duplicate source");
        problem.source = id - 1;
        have_s = true;
      } else if (which == 't') {
        if (have_t) fail("duplicate sink");
        problem.sink = id - 1;
        have_t = true;
      } else {
        fail("node descriptor must be s or t");
      }
    } else if (line[0] == 'a') {
      if (!have_p) fail("arc before problem line");
      int from = 0;
      int to = 0;
      long long cap = 0;
      if (std::sscanf(line.c_str(), "a %d %d %lld %c", &from, &to, &cap, &tail) != 3) {
        fail("malformed arc: " + line);
      }
      if (from < 1 || from > problem.nodes || to < 1 || to > problem.nodes) {
        fail("arc endpoint out of range");
      }
      if (cap < 0) fail("negative capacity");
      if (static_cast<int>(problem.arcs.size()) == declared_arcs) {
        fail("more arcs than declared");
      }
      problem.arcs.emplace_back(from - 1, to - 1);
      problem.caps.push_back(cap);
    } else {
      fail("unknown line type: " + line);
    }
  }
  ++line_no;
  if (!have_p) fail("missing problem line");
  if (!have_s) fail("missing source");
  if (!have_t) fail("missing sink");
  if (problem.source == problem.sink) fail("source equals sink");
  if (static_cast<int>(problem.arcs.size()) != declared_arcs) {
    fail("fewer arcs than declared");
  }
  return problem;
}

DimacsProblem load_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dimacs file: " + path);
  try {
    return read_dimacs(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_dimacs_file(const DimacsProblem& problem, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dimacs file: " + path);
  write_dimacs(problem, out);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace kadcon

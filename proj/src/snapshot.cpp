#include "kadcon/snapshot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kadcon/engine.hpp"

namespace kadcon {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("snapshot:" + std::to_string(line) + ": " + what);
}

}  // namespace

Snapshot take_snapshot(const Engine& engine, SimTime at, std::string config_echo) {
  Snapshot snap;
  snap.at = at;
  snap.bits = engine.params().bits;
  snap.config_echo = std::move(config_echo);
  snap.entries.reserve(engine.alive_count());
  for (const NodeId& id : engine.alive_ids()) {  // already ascending
    std::vector<NodeId> contacts = engine.find_node(id)->table().dump_contacts();
    std::sort(contacts.begin(), contacts.end());
    snap.entries.emplace_back(id, std::move(contacts));
  }
  return snap;
}

void write_snapshot(const Snapshot& snap, std::ostream& out) {
  if (snap.at % kMinute != 0) {
    throw std::invalid_argument("snapshot time must fall on a whole minute");
  }
  out << "SNAPSHOT t=" << snap.at / kMinute << " b=" << snap.bits << " n=" << snap.entries.size()
      << "\n";
  for (const auto& [id, contacts] : snap.entries) {
    out << id.to_hex() << ":";
    for (size_t i = 0; i < contacts.size(); ++i) {
      out << (i == 0 ? " " : ",") << contacts[i].to_hex();
    }
    out << "\n";
  }
}

std::string snapshot_to_string(const Snapshot& snap) {
  std::ostringstream os;
  write_snapshot(snap, os);
  return os.str();
}

Snapshot read_snapshot(std::istream& in) {
  Snapshot snap;
  std::string line;
  if (!std::getline(in, line)) fail(1, "missing header");
  long t = 0, b = 0, n = 0;
  char tail = 0;
  if (std::sscanf(line.c_str(), "SNAPSHOT t=%ld b=%ld n=%ld%c", &t, &b, &n, &tail) != 3) {
    fail(1, "bad header, expected `SNAPSHOT t=<minutes> b=<bits> n=<count>`");
  }
  if (t < 0) fail(1, "negative time");
  if (b < 1 || b > NodeId::kMaxBits) fail(1, "bit width out of range");
  if (n < 0) fail(1, "negative node count");
  snap.at = minutes(t);
  snap.bits = static_cast<int>(b);

  int hex_digits = (snap.bits + 3) / 4;
  for (long row = 0; row < n; ++row) {
    int lineno = static_cast<int>(row) + 2;
    if (!std::getline(in, line)) fail(lineno, "unexpected end of file");
    size_t colon = line.find(':');
    if (colon == std::string::npos) fail(lineno, "missing `:` after node id");
    std::string id_part = line.substr(0, colon);
    if (static_cast<int>(id_part.size()) != hex_digits) {
      fail(lineno, "node id must be exactly " + std::to_string(hex_digits) + " hex digits");
    }
    NodeId id;
    try {
      id = NodeId::from_hex(id_part, snap.bits);
    } catch (const std::exception& e) {
      fail(lineno, e.what());
    }
    if (!snap.entries.empty() && !(snap.entries.back().first < id)) {
      fail(lineno, "node ids must be strictly ascending");
    }

    std::vector<NodeId> contacts;
    std::string rest = line.substr(colon + 1);
    if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
    if (!rest.empty()) {
      size_t pos = 0;
      while (pos <= rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        if (static_cast<int>(tok.size()) != hex_digits) {
          fail(lineno, "contact id must be exactly " + std::to_string(hex_digits) +
                           " hex digits, got `" + tok + "`");
        }
        try {
          contacts.push_back(NodeId::from_hex(tok, snap.bits));
        } catch (const std::exception& e) {
          fail(lineno, e.what());
        }
        if (contacts.size() > 1 && !(contacts[contacts.size() - 2] < contacts.back())) {
          fail(lineno, "contact ids must be strictly ascending");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    snap.entries.emplace_back(id, std::move(contacts));
  }
  if (std::getline(in, line) && !line.empty()) {
    fail(static_cast<int>(n) + 2, "trailing content after last node line");
  }
  return snap;
}

Snapshot load_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open snapshot file: " + path);
  try {
    return read_snapshot(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_snapshot_file(const Snapshot& snap, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_snapshot(snap, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace kadcon

#ifndef KADCON_SNAPSHOT_HPP
#define KADCON_SNAPSHOT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kadcon/node_id.hpp"
#include "kadcon/sim_time.hpp"

namespace kadcon {

class Engine;

// Parse failure in a text input; the message carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frozen per-node contact lists at one simulated instant. Entries and the
// contact lists are sorted ascending by id, which makes the serialized form
// canonical: equal snapshots produce byte-identical files.
struct Snapshot {
  SimTime at = 0;
  int bits = 0;
  std::vector<std::pair<NodeId, std::vector<NodeId>>> entries;
  std::string config_echo;  // scenario tag; not serialized

  size_t size() const { return entries.size(); }
};

// Deep-copies every alive node's contacts. Stale contacts pointing at
// departed nodes are kept: they are part of the structure being measured.
Snapshot take_snapshot(const Engine& engine, SimTime at, std::string config_echo = "");

// Text form: `SNAPSHOT t=<minutes> b=<bits> n=<count>`, then per node
// `<hex-id>: <hex-id>,<hex-id>,...`. Times must fall on whole minutes.
void write_snapshot(const Snapshot& snap, std::ostream& out);
std::string snapshot_to_string(const Snapshot& snap);
Snapshot read_snapshot(std::istream& in);
Snapshot load_snapshot_file(const std::string& path);
void save_snapshot_file(const Snapshot& snap, const std::string& path);

}  // namespace kadcon

#endif

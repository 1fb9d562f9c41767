#ifndef KADCON_MESSAGE_HPP
#define KADCON_MESSAGE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "kadcon/node_id.hpp"

namespace kadcon {

enum class MessageKind {
  find_node_req,
  find_node_resp,
  store_req,
  store_resp,
  ping_req,
  ping_resp,
};

inline bool is_request(MessageKind k) {
  return k == MessageKind::find_node_req || k == MessageKind::store_req ||
         k == MessageKind::ping_req;
}

struct Message {
  MessageKind kind;
  NodeId from;
  NodeId to;
  std::optional<NodeId> target;       // lookup target / data-object key
  std::vector<NodeId> contacts;       // find_node_resp payload, length <= k
  std::vector<uint8_t> payload;       // store_req data object
  uint64_t request_id = 0;            // pairs a response with its request
};

}  // namespace kadcon

#endif

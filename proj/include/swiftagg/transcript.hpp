#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "swiftagg/field.hpp"

namespace swiftagg {

enum class Phase { kIntra, kInter, kServer };

std::string_view to_string(Phase phase);

// A user or the server.
class Node {
 public:
  static constexpr Node server() { return Node(kServerIndex); }
  static constexpr Node user(std::size_t index) { return Node(index); }

  constexpr bool is_server() const { return index_ == kServerIndex; }
  constexpr std::size_t index() const { return index_; }
  std::string to_string() const { return is_server() ? "server" : std::to_string(index_); }

  friend constexpr auto operator<=>(Node, Node) = default;

 private:
  static constexpr std::size_t kServerIndex = std::numeric_limits<std::size_t>::max();
  constexpr explicit Node(std::size_t index) : index_(index) {}
  std::size_t index_;
};

// One transmission attempt. A null message carries no symbols. A non-null
// message addressed to a user who has dropped is charged to the sender but
// not delivered.
struct Message {
  Phase phase = Phase::kIntra;
  Node sender = Node::server();
  Node receiver = Node::server();
  std::size_t symbols = 0;
  bool null = false;
  bool delivered = false;
  std::vector<Element> values;

  bool self_addressed() const { return sender == receiver; }
};

class Transcript {
 public:
  void record(Message msg) { messages_.push_back(std::move(msg)); }
  const std::vector<Message>& messages() const { return messages_; }

  // Header "phase,sender,receiver,symbols,null,delivered", one row per
  // message. Values are never exported.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

 private:
  std::vector<Message> messages_;
};

inline constexpr std::string_view kTranscriptCsvHeader = "phase,sender,receiver,symbols,null,delivered";

struct LinkStats {
  std::size_t total = 0;   // distinct unordered pairs that carried any attempt
  std::size_t silent = 0;  // of those, pairs where nothing non-null was delivered
};

// Self-addressed entries are local computation and never form links.
LinkStats link_stats(const Transcript& transcript);

}  // namespace swiftagg

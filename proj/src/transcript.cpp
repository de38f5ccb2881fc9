#include "swiftagg/transcript.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace swiftagg {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kIntra: return "intra";
    case Phase::kInter: return "inter";
    case Phase::kServer: return "server";
  }
  return "unknown";
}

void Transcript::write_csv(std::ostream& out) const {
  out << kTranscriptCsvHeader << '\n';
  for (const auto& m : messages_) {
    out << to_string(m.phase) << ',' << m.sender.to_string() << ',' << m.receiver.to_string()
        << ',' << m.symbols << ',' << (m.null ? 1 : 0) << ',' << (m.delivered ? 1 : 0) << '\n';
  }
}

std::string Transcript::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

LinkStats link_stats(const Transcript& transcript) {
  std::map<std::pair<Node, Node>, bool> active;
  for (const auto& m : transcript.messages()) {
    if (m.self_addressed()) continue;
    const auto key = std::minmax(m.sender, m.receiver);
    auto& flag = active[{key.first, key.second}];
    flag = flag || (!m.null && m.delivered);
  }
  LinkStats stats;
  stats.total = active.size();
  for (const auto& [link, used] : active) {
    if (!used) ++stats.silent;
  }
  return stats;
}

}  // namespace swiftagg

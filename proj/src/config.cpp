#include "swiftagg/config.hpp"

#include <fstream>
#include <sstream>

#include "swiftagg/error.hpp"

namespace swiftagg {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kConfigInvalid, field + ": " + why);
}

// Parsed documents store non-negative literals as unsigned; documents built
// in code may hold them as signed.
bool is_non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

template <typename T>
T get_unsigned(const json& doc, const char* key) {
  if (!doc.contains(key)) invalid(key, "missing required field");
  const auto& v = doc.at(key);
  if (!is_non_negative_integer(v)) invalid(key, "expected a non-negative integer");
  return v.get<T>();
}

template <typename T>
T get_unsigned_or(const json& doc, const char* key, T fallback) {
  return doc.contains(key) ? get_unsigned<T>(doc, key) : fallback;
}

std::vector<std::size_t> get_ids(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  if (!v.is_array()) invalid(key, "expected an array of user indices");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    if (!is_non_negative_integer(e)) invalid(key, "entries must be non-negative integers");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

double get_delay(const json& delay, const char* key, double fallback) {
  if (!delay.contains(key)) return fallback;
  const auto& v = delay.at(key);
  if (!v.is_number()) invalid(std::string("delay.") + key, "expected a number");
  const double d = v.get<double>();
  if (d < 0) invalid(std::string("delay.") + key, "must be non-negative");
  return d;
}

TreeSpec parse_tree(const json& doc) {
  TreeSpec spec;
  if (!doc.contains("tree")) return spec;
  const auto& t = doc.at("tree");
  if (t.is_string()) {
    const auto s = t.get<std::string>();
    if (s == "chain") {
      spec.shape = TreeSpec::Shape::kChain;
    } else if (s == "star") {
      spec.shape = TreeSpec::Shape::kStar;
    } else {
      invalid("tree", "unknown shape '" + s + "'");
    }
    return spec;
  }
  if (!t.is_object() || !t.contains("parents") || !t.at("parents").is_array()) {
    invalid("tree", "expected \"chain\", \"star\" or {\"parents\": [...]}");
  }
  spec.shape = TreeSpec::Shape::kExplicit;
  for (const auto& e : t.at("parents")) {
    if (e.is_null() || (e.is_string() && e.get<std::string>() == "server")) {
      spec.parents.emplace_back(std::nullopt);
    } else if (is_non_negative_integer(e)) {
      spec.parents.emplace_back(e.get<std::size_t>());
    } else {
      invalid("tree.parents", "entries must be group indices, null or \"server\"");
    }
  }
  return spec;
}

json rational_json(const Rational& r) {
  return {{"num", r.num()}, {"den", r.den()}, {"value", r.to_double()}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigInvalid, "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) invalid("<document>", "expected a JSON object");
  if (doc.contains("schema_version") &&
      (!doc.at("schema_version").is_number_integer() ||
       doc.at("schema_version").get<int>() != kSchemaVersion)) {
    invalid("schema_version", "unsupported, expected " + std::to_string(kSchemaVersion));
  }
  RunConfig c;
  c.users = get_unsigned<std::size_t>(doc, "N");
  c.max_colluders = get_unsigned<std::size_t>(doc, "T");
  c.max_dropouts = get_unsigned<std::size_t>(doc, "D");
  c.partitions = get_unsigned<std::size_t>(doc, "K");
  c.model_length = get_unsigned<std::size_t>(doc, "L");
  c.ell = get_unsigned<std::uint64_t>(doc, "ell");
  c.tree = parse_tree(doc);
  c.dropouts = get_ids(doc, "dropouts");
  c.adversaries = get_ids(doc, "adversaries");
  c.seed = get_unsigned_or<std::uint64_t>(doc, "seed", 0);
  if (doc.contains("prime_override") && !doc.at("prime_override").is_null()) {
    c.prime_override = get_unsigned<std::uint64_t>(doc, "prime_override");
  }
  if (doc.contains("dropout_timing")) {
    const auto& v = doc.at("dropout_timing");
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "before_intra") {
      c.timing = DropTiming::kBeforeIntra;
    } else if (s == "after_intra") {
      c.timing = DropTiming::kAfterIntra;
    } else {
      invalid("dropout_timing", "expected \"before_intra\" or \"after_intra\"");
    }
  }
  if (doc.contains("models")) {
    const auto& m = doc.at("models");
    if (!m.is_array()) invalid("models", "expected an array of per-user arrays");
    std::vector<std::vector<Element>> models;
    for (const auto& row : m) {
      if (!row.is_array()) invalid("models", "expected an array of per-user arrays");
      std::vector<Element> entries;
      for (const auto& e : row) {
        if (!is_non_negative_integer(e) || e.get<std::uint64_t>() > kMaxModulus) {
          invalid("models", "entries must be non-negative integers");
        }
        entries.push_back(e.get<Element>());
      }
      models.push_back(std::move(entries));
    }
    c.models = std::move(models);
  }
  if (doc.contains("delay")) {
    const auto& d = doc.at("delay");
    if (!d.is_object()) invalid("delay", "expected {\"inter\": x, \"intra\": y}");
    c.delays.inter = get_delay(d, "inter", c.delays.inter);
    c.delays.intra = get_delay(d, "intra", c.delays.intra);
  }
  if (doc.contains("assert_loads")) {
    if (!doc.at("assert_loads").is_boolean()) invalid("assert_loads", "expected a boolean");
    c.assert_loads = doc.at("assert_loads").get<bool>();
  }
  return c;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

SweepSpec parse_sweep_spec(const json& doc) {
  if (!doc.is_object()) invalid("<document>", "expected a JSON object");
  if (!doc.contains("base")) invalid("base", "missing required field");
  SweepSpec s;
  try {
    s.base = parse_run_config(doc.at("base"));
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigInvalid, std::string("base.") + e.what());
  }
  s.k_values = get_ids(doc, "k_values");
  if (s.k_values.empty()) invalid("k_values", "expected a non-empty array");
  s.repetitions = get_unsigned_or<std::size_t>(doc, "repetitions", 1);
  if (s.repetitions == 0) invalid("repetitions", "must be at least 1");
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) invalid("output", "expected a path string");
    s.output = doc.at("output").get<std::string>();
  }
  return s;
}

SweepSpec load_sweep_spec(const std::string& path) { return parse_sweep_spec(read_file(path)); }

json to_json(const RunReport& r) {
  json per_user = json::array();
  for (const auto& u : r.loads.per_user) per_user.push_back(rational_json(u));
  auto phase = [](const PhaseCounts& c) { return json{{"sent", c.sent}, {"non_null", c.non_null}}; };
  return {
      {"schema_version", r.schema_version},
      {"params",
       {{"N", r.params.users},
        {"T", r.params.max_colluders},
        {"D", r.params.max_dropouts},
        {"K", r.params.partitions},
        {"L", r.params.model_length},
        {"ell", r.params.ell},
        {"nu", r.params.group_size},
        {"groups", r.params.group_count}}},
      {"field",
       {{"prime", r.prime}, {"conforming", r.conforming}, {"bits_per_symbol", r.bits_per_symbol}}},
      {"aggregate", r.aggregate},
      {"contributors", r.contributors},
      {"loads",
       {{"r_server", rational_json(r.loads.server)},
        {"r_user_max", rational_json(r.loads.user_max)},
        {"r_user_avg", rational_json(r.loads.user_avg)},
        {"per_user", per_user},
        {"server_symbols", r.loads.server_symbols},
        {"max_user_symbols", r.loads.max_user_symbols},
        {"server_bits", r.server_bits},
        {"max_user_bits", r.max_user_bits}}},
      {"cutset",
       {{"server_bits_per_entry", r.cutset_server_bits_per_entry},
        {"user_bits_per_entry", r.cutset_user_bits_per_entry}}},
      {"edges", {{"total", r.links.total}, {"silent", r.links.silent}}},
      {"delay", r.delay},
      {"messages", {{"intra", phase(r.intra)}, {"inter", phase(r.inter)}, {"server", phase(r.server)}}},
  };
}

json to_json(const RunConfig& c) {
  json doc = {{"schema_version", kSchemaVersion},
              {"N", c.users},
              {"T", c.max_colluders},
              {"D", c.max_dropouts},
              {"K", c.partitions},
              {"L", c.model_length},
              {"ell", c.ell},
              {"dropouts", c.dropouts},
              {"dropout_timing",
               c.timing == DropTiming::kBeforeIntra ? "before_intra" : "after_intra"},
              {"adversaries", c.adversaries},
              {"seed", c.seed},
              {"delay", {{"inter", c.delays.inter}, {"intra", c.delays.intra}}},
              {"assert_loads", c.assert_loads}};
  switch (c.tree.shape) {
    case TreeSpec::Shape::kChain: doc["tree"] = "chain"; break;
    case TreeSpec::Shape::kStar: doc["tree"] = "star"; break;
    case TreeSpec::Shape::kExplicit: {
      json parents = json::array();
      for (const auto& p : c.tree.parents) parents.push_back(p ? json(*p) : json(nullptr));
      doc["tree"] = {{"parents", parents}};
      break;
    }
  }
  if (c.prime_override) doc["prime_override"] = *c.prime_override;
  if (c.models) doc["models"] = *c.models;
  return doc;
}

}  // namespace swiftagg

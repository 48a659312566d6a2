#include "sched/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sched/error.hpp"

namespace sched {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw SchedError(ErrorKind::kMalformedInput, what); }

ExactCost read_time(const json& value) {
  if (value.is_number_unsigned()) return ExactCost(value.get<std::uint64_t>());
  if (value.is_number_integer()) {
    if (value.get<std::int64_t>() < 0) malformed("processing times must be nonnegative");
    return ExactCost(static_cast<std::uint64_t>(value.get<std::int64_t>()));
  }
  if (value.is_string()) {
    try {
      return ExactCost::parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      malformed(e.what());
    }
  }
  malformed("processing times must be nonnegative integers");
}

int read_index(const json& value) {
  if (!value.is_number_integer()) malformed("job indices must be integers");
  const auto v = value.get<std::int64_t>();
  if (v < 0 || v > kMaxJobs) throw SchedError(ErrorKind::kIndexOutOfRange, "job index out of range: " + std::to_string(v));
  return static_cast<int>(v);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("times")) malformed("expected an object with n and times");
  if (!doc["n"].is_number_integer()) malformed("n must be an integer");
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 0) malformed("n must be nonnegative");
  if (n > kMaxJobs) throw SchedError(ErrorKind::kInstanceTooLarge, "at most 64 jobs are supported");
  const json& times_json = doc["times"];
  if (!times_json.is_array() || static_cast<std::int64_t>(times_json.size()) != n) {
    malformed("times must be an array of n entries");
  }
  std::vector<ExactCost> times;
  for (const json& t : times_json) times.push_back(read_time(t));

  std::vector<Edge> edges;
  if (doc.contains("precedences")) {
    const json& prec = doc["precedences"];
    if (!prec.is_array()) malformed("precedences must be an array");
    for (const json& pair : prec) {
      if (!pair.is_array() || pair.size() != 2) malformed("each precedence must be a pair [u, v]");
      const int u = read_index(pair[0]);
      const int v = read_index(pair[1]);
      if (u >= n || v >= n) {
        throw SchedError(ErrorKind::kIndexOutOfRange, "precedence [" + std::to_string(u) + "," + std::to_string(v) +
                                                          "] names a job outside 0.." + std::to_string(n - 1));
      }
      edges.emplace_back(u, v);
    }
  }
  return Instance(static_cast<int>(n), std::move(times), edges);
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["n"] = inst.n();
  json times = json::array();
  for (const ExactCost& t : inst.times()) {
    if (t.fits_u64()) {
      times.push_back(t.to_u64());
    } else {
      times.push_back(t.to_string());
    }
  }
  doc["times"] = std::move(times);
  json prec = json::array();
  for (auto [u, v] : inst.relation()) prec.push_back({u, v});
  doc["precedences"] = std::move(prec);
  return doc.dump() + "\n";
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) malformed("cannot write " + path.string());
  out << instance_to_json(inst);
}

std::vector<int> parse_index_list(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size() || value < 0) {
      malformed("not a list of job indices: '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_indices(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace sched

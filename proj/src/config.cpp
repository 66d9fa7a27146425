#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "adelic/cli.hpp"
#include "adelic/error.hpp"

namespace adelic {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::Config, fmt::format("line {}: {}", line, msg));
}

template <class T>
T parse_int(const std::string& s, int line) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail(line, fmt::format("bad integer '{}'", s));
  return v;
}

std::vector<std::string> parse_list(const std::string& value, int line) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') fail(line, "expected a [list]");
  std::vector<std::string> out;
  const std::string body = trim(std::string_view(value).substr(1, value.size() - 2));
  if (body.empty()) return out;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (item.empty()) fail(line, "empty list item");
    out.push_back(item);
  }
  return out;
}

template <class T>
std::vector<T> parse_int_list(const std::string& value, int line) {
  std::vector<T> out;
  for (const auto& item : parse_list(value, line)) out.push_back(parse_int<T>(item, line));
  return out;
}

template <class T>
std::string list(const std::vector<T>& xs) {
  return fmt::format("[{}]", fmt::join(xs, ", "));
}

const char* const kCurveKeys[5] = {"a1", "a2", "a3", "a4", "a6"};

}  // namespace

JobConfig parse_config(const std::string& text) {
  JobConfig c;
  std::set<std::string> seen;
  std::stringstream in(text);
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) fail(line_no, fmt::format("repeated key '{}'", key));

    bool curve_key = false;
    for (int i = 0; i < 5; ++i)
      if (key == kCurveKeys[i]) {
        auto v = parse_int_list<long>(value, line_no);
        if (v.size() != 3) fail(line_no, fmt::format("{} needs three coordinates", key));
        c.curve[i] = {v[0], v[1], v[2]};
        curve_key = true;
      }
    if (curve_key) continue;
    if (key == "field") {
      c.field = parse_int_list<i64>(value, line_no);
    } else if (key == "sample_budget") {
      c.sample_budget = parse_int<std::size_t>(value, line_no);
    } else if (key == "sample_places") {
      c.sample_places = parse_list(value, line_no);
    } else if (key == "places") {
      c.places = parse_list(value, line_no);
    } else if (key == "max_q") {
      c.max_q = parse_int<u64>(value, line_no);
    } else if (key == "seed") {
      c.seed = parse_int<u64>(value, line_no);
    } else if (key == "json_out") {
      c.json_out = value;
    } else if (key == "text_out") {
      c.text_out = value;
    } else {
      fail(line_no, fmt::format("unknown key '{}'", key));
    }
  }
  for (const char* k : {"field", "a1", "a2", "a3", "a4", "a6"})
    if (!seen.count(k)) throw Error(ErrorKind::Config, fmt::format("missing key '{}'", k));
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Config, fmt::format("cannot read config '{}'", path));
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const JobConfig& c) {
  std::string out = fmt::format("field = {}\n", list(c.field));
  for (int i = 0; i < 5; ++i)
    out += fmt::format("{} = [{}, {}, {}]\n", kCurveKeys[i], c.curve[i][0], c.curve[i][1], c.curve[i][2]);
  out += fmt::format("sample_budget = {}\n", c.sample_budget);
  out += fmt::format("sample_places = {}\n", list(c.sample_places));
  out += fmt::format("places = {}\n", list(c.places));
  out += fmt::format("max_q = {}\n", c.max_q);
  out += fmt::format("seed = {}\n", c.seed);
  if (!c.json_out.empty()) out += fmt::format("json_out = {}\n", c.json_out);
  if (!c.text_out.empty()) out += fmt::format("text_out = {}\n", c.text_out);
  return out;
}

}  // namespace adelic

#include "wsnacc/config.hpp"

#include "wsnacc/error.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace wsnacc {

namespace {

std::string trim(const std::string &s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string &key) {
  if (key.empty())
    return false;
  for (char c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

} // namespace

std::optional<double> parse_double(const std::string &text) {
  const std::string t = trim(text);
  if (t.empty())
    return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception &) {
    return std::nullopt;
  }
  if (used != t.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_uint(const std::string &text) {
  const std::string t = trim(text);
  if (t.empty() || !std::isdigit(static_cast<unsigned char>(t[0])))
    return std::nullopt;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(t, &used);
  } catch (const std::exception &) {
    return std::nullopt;
  }
  if (used != t.size())
    return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

KeyValueConfig KeyValueConfig::parse(std::istream &in,
                                     const std::string &source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(source, line_no, 0, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key))
      throw ParseError(source, line_no, 1, "invalid key '" + key + "'");
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ParseError(source, line_no, eq + 2,
                       "missing value for '" + key + "'");
    if (cfg.entries_.contains(key))
      throw ParseError(source, line_no, 1, "duplicate key '" + key + "'");
    cfg.entries_.emplace(key, Entry{value, line_no, false});
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path, 0, 0, "cannot open file");
  return parse(in, path);
}

void KeyValueConfig::set(const std::string &key, std::string value) {
  auto &entry = entries_[key];
  entry.value = std::move(value);
  entry.line = 0;
  entry.used = false;
}

bool KeyValueConfig::has(const std::string &key) const {
  return entries_.contains(key);
}

KeyValueConfig::Entry *KeyValueConfig::find(const std::string &key) {
  auto it = entries_.find(key);
  if (it == entries_.end())
    return nullptr;
  it->second.used = true;
  return &it->second;
}

void KeyValueConfig::fail(const std::string &key, const Entry &entry,
                          const std::string &message) const {
  throw ParseError(entry.line == 0 ? "<command line>" : source_, entry.line, 0,
                   "'" + key + "': " + message);
}

std::optional<std::string> KeyValueConfig::take_string(const std::string &key) {
  const Entry *e = find(key);
  if (e == nullptr)
    return std::nullopt;
  return e->value;
}

std::optional<double> KeyValueConfig::take_double(const std::string &key) {
  const Entry *e = find(key);
  if (e == nullptr)
    return std::nullopt;
  auto v = parse_double(e->value);
  if (!v)
    fail(key, *e, "expected a number, got '" + e->value + "'");
  return v;
}

std::optional<std::uint64_t> KeyValueConfig::take_uint(const std::string &key) {
  const Entry *e = find(key);
  if (e == nullptr)
    return std::nullopt;
  auto v = parse_uint(e->value);
  if (!v)
    fail(key, *e, "expected a nonnegative integer, got '" + e->value + "'");
  return v;
}

std::optional<std::vector<double>>
KeyValueConfig::take_doubles(const std::string &key) {
  const Entry *e = find(key);
  if (e == nullptr)
    return std::nullopt;
  std::vector<double> out;
  std::stringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_double(item);
    if (!v)
      fail(key, *e, "bad list element '" + trim(item) + "'");
    out.push_back(*v);
  }
  if (out.empty())
    fail(key, *e, "empty list");
  return out;
}

void KeyValueConfig::finish() const {
  for (const auto &[key, entry] : entries_)
    if (!entry.used)
      fail(key, entry, "unknown key");
}

std::vector<std::pair<std::string, std::string>>
KeyValueConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &[key, entry] : entries_)
    out.emplace_back(key, entry.value);
  return out;
}

} // namespace wsnacc

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wsnacc {

/// Flat `key = value` configuration.
///
/// Blank lines and lines starting with '#' are ignored; keys are
/// [A-Za-z0-9_.]+; values run to the end of the line with surrounding
/// whitespace trimmed. A duplicate key is a parse error. Every key must be
/// consumed by a typed getter before finish() or finish() throws, so typos
/// never pass silently.
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream &in,
                              const std::string &source = "<config>");
  static KeyValueConfig parse_file(const std::string &path);

  /// Inserts or replaces a value; used for command-line overrides.
  void set(const std::string &key, std::string value);
  bool has(const std::string &key) const;

  std::optional<std::string> take_string(const std::string &key);
  std::optional<double> take_double(const std::string &key);
  std::optional<std::uint64_t> take_uint(const std::string &key);
  /// Comma-separated reals.
  std::optional<std::vector<double>> take_doubles(const std::string &key);

  /// Throws ParseError naming the first unconsumed key.
  void finish() const;

  const std::string &source() const noexcept { return source_; }
  /// Entries in key order, for provenance echo.
  std::vector<std::pair<std::string, std::string>> entries() const;

private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
  };

  Entry *find(const std::string &key);
  [[noreturn]] void fail(const std::string &key, const Entry &entry,
                         const std::string &message) const;

  std::string source_ = "<config>";
  std::map<std::string, Entry> entries_;
};

/// Parses a real; the whole string must be consumed.
std::optional<double> parse_double(const std::string &text);
std::optional<std::uint64_t> parse_uint(const std::string &text);

} // namespace wsnacc

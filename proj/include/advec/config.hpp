#pragma once

// Flat "key = value" files. '#' starts a comment, blank lines are ignored,
// keys may repeat and keep their file order.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace advec {

class KeyValues {
 public:
  using Entry = std::pair<std::string, std::string>;

  static KeyValues parse(std::string_view text);
  /// Throws ParseError when the file cannot be read.
  static KeyValues load(const std::string& path);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Last value for key.
  std::optional<std::string> get(std::string_view key) const;
  bool contains(std::string_view key) const { return get(key).has_value(); }
  void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

 private:
  std::vector<Entry> entries_;
};

/// Splits on commas and whitespace, dropping empty pieces.
std::vector<std::string> split_list(std::string_view text);

}  // namespace advec

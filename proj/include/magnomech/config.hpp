#pragma once

#include <map>
#include <optional>
#include <string>

namespace magnomech {

// Minimal INI-style document: [section] headers, key = value lines,
// '#' and ';' comments, case-sensitive names. Duplicate keys: last wins.
class IniDoc {
 public:
  IniDoc() = default;

  // Parse from a file on disk; `origin` in error messages is the path.
  static IniDoc parse_file(const std::string& path);
  // Parse from an in-memory string; `origin` labels error messages.
  static IniDoc parse(const std::string& text, const std::string& origin = "<inline>");

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  // Typed getters. The required variants throw ConfigError naming the field.
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  bool flag_or(const std::string& section, const std::string& key, bool fallback) const;
  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback) const;

  // Insert or overwrite a value (used for command-line overrides).
  void set(const std::string& section, const std::string& key, const std::string& value);

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }
  const std::string& origin() const { return origin_; }

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_ = "<empty>";
};

}  // namespace magnomech

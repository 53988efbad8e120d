#include "magnomech/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  size_t pos = line.find_first_of("#;");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

IniDoc IniDoc::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

IniDoc IniDoc::parse(const std::string& text, const std::string& origin) {
  IniDoc doc;
  doc.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header '" +
                          line + "'");
      section = trim(line.substr(1, line.size() - 2));
      doc.sections_[section];  // record even if empty
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got '" +
                        line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key '" + key +
                        "' appears before any [section] header");
    doc.sections_[section][key] = value;
  }
  return doc;
}

bool IniDoc::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool IniDoc::has(const std::string& section, const std::string& key) const {
  return raw(section, key).has_value();
}

std::optional<std::string> IniDoc::raw(const std::string& section, const std::string& key) const {
  auto sec = sections_.find(section);
  if (sec == sections_.end()) return std::nullopt;
  auto it = sec->second.find(key);
  if (it == sec->second.end()) return std::nullopt;
  return it->second;
}

double IniDoc::number(const std::string& section, const std::string& key) const {
  auto v = raw(section, key);
  if (!v)
    throw ConfigError("missing required field [" + section + "] " + key + " in " + origin_);
  const char* s = v->c_str();
  char* end = nullptr;
  double out = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw ConfigError("unparseable number for field [" + section + "] " + key + " = '" + *v +
                      "' in " + origin_);
  return out;
}

double IniDoc::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

bool IniDoc::flag_or(const std::string& section, const std::string& key, bool fallback) const {
  auto v = raw(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError("unparseable flag for field [" + section + "] " + key + " = '" + *v +
                    "' in " + origin_ + " (expected true/false)");
}

std::string IniDoc::text(const std::string& section, const std::string& key) const {
  auto v = raw(section, key);
  if (!v)
    throw ConfigError("missing required field [" + section + "] " + key + " in " + origin_);
  return *v;
}

std::string IniDoc::text_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  auto v = raw(section, key);
  return v ? *v : fallback;
}

void IniDoc::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

}  // namespace magnomech

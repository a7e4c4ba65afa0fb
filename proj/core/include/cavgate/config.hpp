#pragma once

#include <map>
#include <optional>
#include <string>

#include "cavgate/errors.hpp"

namespace cavgate {

// Plain-text configuration: "[section]" headers, "key = value" entries,
// '#' comments. Unknown sections or keys are hard errors; a silent typo must
// never change a run.

class Config {
  public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::optional<std::string> get_optional(const std::string& section,
                                            const std::string& key) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    const std::string& raw(const std::string& section, const std::string& key) const;
};

} // namespace cavgate

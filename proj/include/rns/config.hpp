#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rns {

// ============================================================================
// Flat key = value configuration: one assignment per line, '#' comment lines,
// blank lines ignored.  Command-line overrides use the same "key=value" form
// and replace file values.  Typed getters record which keys were consumed so
// the driver can reject unknown keys wholesale.
// ============================================================================

class KeyValueConfig {
  public:
    KeyValueConfig() = default;

    // Parses a file; throws ConfigError on I/O failure or a malformed line.
    static KeyValueConfig from_file(const std::string& path);

    // Applies one "key=value" assignment (later assignments win).
    void apply_override(const std::string& assignment);

    bool present(const std::string& key) const;

    // Typed access with defaults; throw ConfigError when the stored text does
    // not parse completely as the requested type.
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    // Comma-separated list of doubles.
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    // Keys present but never read by any getter; nonempty means a typo.
    std::vector<std::string> unconsumed() const;

    // "key = value" lines, sorted by key, for config.echo.
    std::string echo() const;

  private:
    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> consumed_;
};

}  // namespace rns

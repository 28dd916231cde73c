#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellcast/scheduler.hpp"

namespace cellcast::cli {

/// Invalid configuration; the message names the offending file line or flag.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raw `key = value` settings, each remembering where it came from.
class KeyValueConfig
{
  public:
    struct Entry
    {
        std::string value;
        std::string origin;  ///< "path:line" or "--flag"
    };

    /// Parses `key = value` lines; '#' starts a comment, blank lines are
    /// skipped. Unknown keys and malformed lines are rejected with the line
    /// number.
    static KeyValueConfig parse(std::istream& in, const std::string& source_name);
    static KeyValueConfig load(const std::filesystem::path& path);

    /// Later calls override earlier ones.
    void set(const std::string& key, std::string value, std::string origin);

    const Entry* find(const std::string& key) const;
    const std::map<std::string, Entry>& entries() const { return entries_; }

  private:
    std::map<std::string, Entry> entries_;
};

/// Keys accepted both in config files and as `--key` flags.
const std::vector<std::string>& known_keys();

enum class Scheme { Equal, Weighted, Vote };

struct RunConfig
{
    std::uint64_t seed = 1;
    std::optional<std::vector<double>> alphas;
    double alpha_step = 0.05;
    double lambda_b = 1.0;
    double lambda_u = 3.0;
    std::optional<double> vr;
    std::optional<double> cb;
    double beta = 1.0;
    double window = 40.0;
    std::uint64_t reps = 100;
    std::optional<std::filesystem::path> out;
    bool override_window = false;
    unsigned threads = 0;

    Scheme scheme = Scheme::Equal;
    std::size_t top_n = 5;
    std::size_t period = 5;
    std::vector<Content> catalog;
    std::uint64_t voters = 10000;
    std::size_t rounds = 100;
    double zipf = 1.0;
    bool exclude_previous = false;
    std::optional<std::filesystem::path> transcript;
    std::optional<std::filesystem::path> efficiency;
};

/// Converts and validates raw settings; unset keys take the defaults above.
/// Throws ConfigError citing the origin of the first bad value.
RunConfig resolve(const KeyValueConfig& kv);

/// Parses a real, accepting plain decimals and fractions such as "1/3".
std::optional<double> parse_real(const std::string& text);

/// Default catalog: `size` contents with popularity 1000 / rank.
std::vector<Content> default_catalog(std::size_t size = 20);

} // namespace cellcast::cli

#include "cellcast/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace cellcast::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        parts.push_back(trim(cur));
    return parts;
}

bool is_known(const std::string& key)
{
    const auto& keys = known_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

} // namespace

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = {
        "seed",    "alpha",   "alpha-step", "lambda-b",         "lambda-u",   "vr",
        "cb",      "beta",    "window",     "reps",             "out",        "override-window",
        "threads", "scheme",  "top-n",      "period",           "popularity", "voters",
        "rounds",  "zipf",    "exclude-previous", "transcript", "efficiency",
    };
    return keys;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source_name)
{
    KeyValueConfig cfg;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const std::string origin = source_name + ":" + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ": expected 'key = value', got '" + body + "'");
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ": missing key before '='");
        if (!is_known(key))
            throw ConfigError(origin + ": unknown key '" + key + "'");
        if (cfg.entries_.count(key))
            throw ConfigError(origin + ": duplicate key '" + key + "' (first set at " +
                              cfg.entries_.at(key).origin + ")");
        cfg.set(key, std::move(value), origin);
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse(in, path.string());
}

void KeyValueConfig::set(const std::string& key, std::string value, std::string origin)
{
    entries_[key] = Entry{std::move(value), std::move(origin)};
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const
{
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<double> parse_real(const std::string& text)
{
    const std::string s = trim(text);
    if (s.empty())
        return std::nullopt;
    auto parse_plain = [](std::string_view v) -> std::optional<double> {
        double out = 0.0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
            return std::nullopt;
        return out;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        auto num = parse_plain(trim(s.substr(0, slash)));
        auto den = parse_plain(trim(s.substr(slash + 1)));
        if (!num || !den || *den == 0.0)
            return std::nullopt;
        return *num / *den;
    }
    return parse_plain(s);
}

std::vector<Content> default_catalog(std::size_t size)
{
    std::vector<Content> c;
    for (std::size_t i = 0; i < size; ++i)
        c.push_back({static_cast<ContentId>(i), 1000.0 / static_cast<double>(i + 1)});
    return c;
}

namespace {

class Resolver
{
  public:
    explicit Resolver(const KeyValueConfig& kv) : kv_(kv) {}

    template <class F>
    void with(const char* key, F&& f)
    {
        if (const auto* e = kv_.find(key))
            f(*e);
    }

    [[noreturn]] static void fail(const KeyValueConfig::Entry& e, const char* key,
                                  const std::string& why)
    {
        throw ConfigError(e.origin + ": " + key + " = '" + e.value + "': " + why);
    }

    double real(const KeyValueConfig::Entry& e, const char* key)
    {
        auto v = parse_real(e.value);
        if (!v)
            fail(e, key, "not a number");
        return *v;
    }

    std::uint64_t integer(const KeyValueConfig::Entry& e, const char* key)
    {
        std::uint64_t out = 0;
        const std::string s = trim(e.value);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            fail(e, key, "not a non-negative integer");
        return out;
    }

    bool boolean(const KeyValueConfig::Entry& e, const char* key)
    {
        const std::string s = trim(e.value);
        if (s == "true" || s == "1" || s == "yes" || s.empty())
            return true;
        if (s == "false" || s == "0" || s == "no")
            return false;
        fail(e, key, "expected true or false");
    }

  private:
    const KeyValueConfig& kv_;
};

} // namespace

RunConfig resolve(const KeyValueConfig& kv)
{
    RunConfig c;
    Resolver r(kv);
    using E = KeyValueConfig::Entry;

    r.with("seed", [&](const E& e) { c.seed = r.integer(e, "seed"); });
    r.with("alpha", [&](const E& e) {
        std::vector<double> list;
        for (const auto& part : split_list(e.value)) {
            auto v = parse_real(part);
            if (!v)
                Resolver::fail(e, "alpha", "'" + part + "' is not a number");
            if (!(*v >= 0.0 && *v <= 1.0))
                Resolver::fail(e, "alpha", "every rating must lie in [0, 1]");
            list.push_back(*v);
        }
        if (list.empty())
            Resolver::fail(e, "alpha", "empty list");
        c.alphas = std::move(list);
    });
    r.with("alpha-step", [&](const E& e) {
        c.alpha_step = r.real(e, "alpha-step");
        if (!(c.alpha_step > 0.0 && c.alpha_step <= 1.0))
            Resolver::fail(e, "alpha-step", "must lie in (0, 1]");
    });
    r.with("lambda-b", [&](const E& e) {
        c.lambda_b = r.real(e, "lambda-b");
        if (!(c.lambda_b > 0.0))
            Resolver::fail(e, "lambda-b", "must be positive");
    });
    r.with("lambda-u", [&](const E& e) {
        c.lambda_u = r.real(e, "lambda-u");
        if (!(c.lambda_u >= 0.0))
            Resolver::fail(e, "lambda-u", "must be >= 0");
    });
    r.with("vr", [&](const E& e) {
        c.vr = r.real(e, "vr");
        if (!(*c.vr > 0.0))
            Resolver::fail(e, "vr", "must be positive");
    });
    r.with("cb", [&](const E& e) {
        c.cb = r.real(e, "cb");
        if (!(*c.cb >= 0.0))
            Resolver::fail(e, "cb", "must be >= 0");
    });
    r.with("beta", [&](const E& e) {
        c.beta = r.real(e, "beta");
        if (!(c.beta >= 0.0 && c.beta <= 1.0))
            Resolver::fail(e, "beta", "must lie in [0, 1]");
    });
    r.with("window", [&](const E& e) {
        c.window = r.real(e, "window");
        if (!(c.window > 0.0))
            Resolver::fail(e, "window", "must be positive");
    });
    r.with("reps", [&](const E& e) {
        c.reps = r.integer(e, "reps");
        if (c.reps == 0)
            Resolver::fail(e, "reps", "must be >= 1");
    });
    r.with("out", [&](const E& e) {
        if (e.value.empty())
            Resolver::fail(e, "out", "empty path");
        c.out = e.value;
    });
    r.with("override-window", [&](const E& e) { c.override_window = r.boolean(e, "override-window"); });
    r.with("threads", [&](const E& e) { c.threads = static_cast<unsigned>(r.integer(e, "threads")); });

    r.with("scheme", [&](const E& e) {
        const std::string s = trim(e.value);
        if (s == "equal")
            c.scheme = Scheme::Equal;
        else if (s == "weighted")
            c.scheme = Scheme::Weighted;
        else if (s == "vote")
            c.scheme = Scheme::Vote;
        else
            Resolver::fail(e, "scheme", "expected equal, weighted or vote");
    });
    r.with("top-n", [&](const E& e) {
        c.top_n = r.integer(e, "top-n");
        if (c.top_n == 0)
            Resolver::fail(e, "top-n", "must be >= 1");
    });
    r.with("period", [&](const E& e) {
        c.period = r.integer(e, "period");
        if (c.period == 0)
            Resolver::fail(e, "period", "must be >= 1");
    });
    c.catalog = default_catalog();
    r.with("popularity", [&](const E& e) {
        std::vector<Content> cat;
        for (const auto& part : split_list(e.value)) {
            auto v = parse_real(part);
            if (!v || *v < 0.0)
                Resolver::fail(e, "popularity", "'" + part + "' is not a non-negative number");
            cat.push_back({static_cast<ContentId>(cat.size()), *v});
        }
        if (cat.empty())
            Resolver::fail(e, "popularity", "empty catalog");
        c.catalog = std::move(cat);
    });
    r.with("voters", [&](const E& e) { c.voters = r.integer(e, "voters"); });
    r.with("rounds", [&](const E& e) {
        c.rounds = r.integer(e, "rounds");
        if (c.rounds == 0)
            Resolver::fail(e, "rounds", "must be >= 1");
    });
    r.with("zipf", [&](const E& e) {
        c.zipf = r.real(e, "zipf");
        if (!(c.zipf >= 0.0))
            Resolver::fail(e, "zipf", "must be >= 0");
    });
    r.with("exclude-previous", [&](const E& e) { c.exclude_previous = r.boolean(e, "exclude-previous"); });
    r.with("transcript", [&](const E& e) { c.transcript = e.value; });
    r.with("efficiency", [&](const E& e) { c.efficiency = e.value; });

    // Cross-key checks.
    if (c.vr.has_value() != c.cb.has_value()) {
        const auto* e = kv.find(c.vr ? "vr" : "cb");
        throw ConfigError(e->origin + ": vr and cb must be given together");
    }
    if (c.top_n > c.catalog.size()) {
        const auto* e = kv.find("top-n");
        throw ConfigError((e ? e->origin : std::string("default")) + ": top-n = " +
                          std::to_string(c.top_n) + " exceeds catalog size " +
                          std::to_string(c.catalog.size()));
    }
    if (c.period < c.top_n) {
        const auto* e = kv.find("period");
        if (!e)
            e = kv.find("top-n");
        throw ConfigError(e->origin + ": period (" + std::to_string(c.period) +
                          ") must be >= top-n (" + std::to_string(c.top_n) + ")");
    }
    return c;
}

} // namespace cellcast::cli

#pragma once

#include <string_view>

namespace cellcast::log {

enum class Level { Debug, Info, Warn, Error, Off };

// Process-wide threshold; messages below it are dropped. Default: Info.
void set_level(Level level);
Level level();

void debug(std::string_view msg);
void info(std::string_view msg);
void warn(std::string_view msg);
void error(std::string_view msg);

} // namespace cellcast::log

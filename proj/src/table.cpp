#include "cellcast/table.hpp"

#include <cstdio>
#include <ostream>

namespace cellcast {

std::string format_real(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

void write_row(std::ostream& os, std::initializer_list<std::string_view> fields)
{
    bool first = true;
    for (auto f : fields) {
        if (!first)
            os << ',';
        os << f;
        first = false;
    }
    os << '\n';
}

} // namespace cellcast

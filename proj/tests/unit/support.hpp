#pragma once

#include "tioco/format.hpp"
#include "tioco/lts.hpp"
#include "tioco/timed_automaton.hpp"

#include <sstream>
#include <string>

namespace support {

inline std::string golden_path(const std::string& name)
{
    return std::string(TIOCO_GOLDEN_DIR) + "/" + name;
}

inline tioco::Lts golden(const std::string& name)
{
    return tioco::parse_lts(tioco::read_file(golden_path(name + ".lts")));
}

inline tioco::Action label(const std::string& token)
{
    if (token == "δ" || token == "delta") {
        return tioco::delta();
    }
    auto name = token.substr(0, token.size() - 1);
    return token.back() == '?' ? tioco::input(name) : tioco::output(name);
}

/// `"i? δ o!"` as a suspension trace.
inline tioco::SuspensionTrace trace(const std::string& text)
{
    tioco::SuspensionTrace result;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        result.push_back(label(token));
    }
    return result;
}

inline tioco::OutSet outs(const std::string& text)
{
    auto t = trace(text);
    return {t.begin(), t.end()};
}

inline tioco::Lts lts(const std::string& text)
{
    return tioco::parse_lts(text);
}

} // namespace support

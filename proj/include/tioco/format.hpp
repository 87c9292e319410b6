#pragma once

#include "tioco/lts.hpp"
#include "tioco/testing.hpp"
#include "tioco/timed_automaton.hpp"

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace tioco {

/// Syntax or well-formedness error in a model file. Line and column are
/// 1-based; both are 0 when the problem is not tied to one position.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

using Model = std::variant<Lts, TimedAutomaton, TestCase, TimedTestCase>;

/// Reads any of the four file kinds, selected by the first non-comment line:
/// `lts`, `ta`, `test lts` or `test ta`.
Model parse(std::string_view text);

Lts parse_lts(std::string_view text);
TimedAutomaton parse_ta(std::string_view text);
TestCase parse_test(std::string_view text);
TimedTestCase parse_timed_test(std::string_view text);

std::string serialize(const Lts& model);
std::string serialize(const TimedAutomaton& ta);
std::string serialize(const TestCase& test);
std::string serialize(const TimedTestCase& test);
std::string serialize(const Model& model);

std::string export_dot(const Lts& model);
std::string export_dot(const TimedAutomaton& ta);
std::string export_dot(const TestCase& test);
std::string export_dot(const TimedTestCase& test);
std::string export_dot(const Model& model);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

} // namespace tioco

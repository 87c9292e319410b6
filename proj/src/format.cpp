#include "tioco/format.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace tioco {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column)
{
}

namespace {

struct Token
{
    std::string text;
    std::size_t column = 0;
};

struct Line
{
    std::size_t number = 0;
    std::string text;
    std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        std::string raw(text.substr(start, end - start));
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        Line line{number, raw, {}};
        std::size_t k = 0;
        while (k < raw.size()) {
            while (k < raw.size() && (raw[k] == ' ' || raw[k] == '\t')) {
                ++k;
            }
            if (k == raw.size()) {
                break;
            }
            auto begin = k;
            while (k < raw.size() && raw[k] != ' ' && raw[k] != '\t') {
                ++k;
            }
            line.tokens.push_back({raw.substr(begin, k - begin), begin + 1});
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    return lines;
}

enum class FileKind { Lts, Ta, TestLts, TestTa };

struct Header
{
    std::optional<std::set<std::string>> inputs;
    std::optional<std::set<std::string>> outputs;
    std::optional<std::string> initial;
    std::optional<Rational> bound;
    std::optional<std::set<std::string>> states;
    bool explicit_quiescence = false;
    bool quiescence_seen = false;
    std::map<std::string, ClockConstraint> invariants;
};

std::string trim(std::string_view text)
{
    auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    auto last = text.find_last_not_of(" \t");
    return std::string(text.substr(first, last - first + 1));
}

/// Comma-separated identifiers after a `key:` prefix.
std::set<std::string> parse_names(const Line& line, std::size_t offset)
{
    std::set<std::string> names;
    std::size_t start = offset;
    const auto& text = line.text;
    if (trim(std::string_view(text).substr(offset)).empty()) {
        return names;
    }
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto end = comma == std::string::npos ? text.size() : comma;
        auto name = trim(std::string_view(text).substr(start, end - start));
        auto column = text.find_first_not_of(" \t", start);
        column = column == std::string::npos ? start + 1 : column + 1;
        if (!is_identifier(name)) {
            throw ParseError(line.number, column, "expected an identifier, got '" + name + "'");
        }
        if (!names.insert(name).second) {
            throw ParseError(line.number, column, "'" + name + "' listed twice");
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return names;
}

std::optional<ClockConstraint> constraint_from(std::string_view text)
{
    if (text == "c<M") {
        return ClockConstraint::LtM;
    }
    if (text == "c=M") {
        return ClockConstraint::EqM;
    }
    if (text == "c<=M") {
        return ClockConstraint::LeM;
    }
    return std::nullopt;
}

std::string single_value(const Line& line, std::size_t offset)
{
    auto value = trim(std::string_view(line.text).substr(offset));
    if (value.empty() || value.find_first_of(" \t") != std::string::npos) {
        throw ParseError(line.number, offset + 1, "expected exactly one value");
    }
    return value;
}

std::size_t value_column(const Line& line, std::size_t offset)
{
    auto column = line.text.find_first_not_of(" \t", offset);
    return column == std::string::npos ? offset + 1 : column + 1;
}

/// Returns false when `line` is not a header line.
bool parse_header_line(const Line& line, FileKind kind, Header& header)
{
    auto colon = line.text.find(':');
    if (colon == std::string::npos) {
        return false;
    }
    auto key = trim(std::string_view(line.text).substr(0, colon));
    auto offset = colon + 1;
    auto column = line.tokens.front().column;
    auto duplicate = [&](bool seen) {
        if (seen) {
            throw ParseError(line.number, column, "duplicate '" + key + ":' header");
        }
    };
    bool timed = kind == FileKind::Ta || kind == FileKind::TestTa;
    if (key == "inputs") {
        duplicate(header.inputs.has_value());
        header.inputs = parse_names(line, offset);
    } else if (key == "outputs") {
        duplicate(header.outputs.has_value());
        header.outputs = parse_names(line, offset);
    } else if (key == "states") {
        duplicate(header.states.has_value());
        header.states = parse_names(line, offset);
    } else if (key == "init") {
        duplicate(header.initial.has_value());
        header.initial = single_value(line, offset);
    } else if (key == "M" && timed) {
        duplicate(header.bound.has_value());
        auto text = single_value(line, offset);
        try {
            header.bound = parse_rational(text);
        } catch (const std::invalid_argument& error) {
            throw ParseError(line.number, value_column(line, offset), error.what());
        }
    } else if (key == "quiescence" && kind == FileKind::Lts) {
        duplicate(header.quiescence_seen);
        header.quiescence_seen = true;
        auto text = single_value(line, offset);
        if (text == "explicit") {
            header.explicit_quiescence = true;
        } else if (text != "derived") {
            throw ParseError(line.number, value_column(line, offset), "quiescence must be 'derived' or 'explicit'");
        }
    } else if (key.starts_with("inv ") && timed) {
        auto location = trim(std::string_view(key).substr(4));
        if (!is_identifier(location)) {
            throw ParseError(line.number, column, "expected a location after 'inv'");
        }
        auto text = single_value(line, offset);
        auto constraint = constraint_from(text);
        if (!constraint) {
            throw ParseError(line.number, value_column(line, offset),
                             "invariant must be one of c<M, c=M, c<=M, got '" + text + "'");
        }
        if (!header.invariants.emplace(location, *constraint).second) {
            throw ParseError(line.number, column, "duplicate invariant for '" + location + "'");
        }
    } else {
        throw ParseError(line.number, column, "unknown header '" + key + ":'");
    }
    return true;
}

Action parse_label(const Token& token, std::size_t line, const Alphabet& alphabet, bool delta_allowed)
{
    const auto& text = token.text;
    if (text == delta_name) {
        if (!delta_allowed) {
            throw ParseError(line, token.column, "'delta' edges are only allowed in test files, timed automata "
                                                 "and LTSs with explicit quiescence");
        }
        return delta();
    }
    if (text.size() < 2 || (text.back() != '?' && text.back() != '!')) {
        throw ParseError(line, token.column, "label '" + text + "' needs a '?' or '!' suffix");
    }
    auto name = text.substr(0, text.size() - 1);
    bool is_in = text.back() == '?';
    if (is_in ? alphabet.inputs.contains(name) : alphabet.outputs.contains(name)) {
        return is_in ? input(name) : output(name);
    }
    if (alphabet.inputs.contains(name) || alphabet.outputs.contains(name)) {
        throw ParseError(line, token.column,
                         "'" + name + "' is declared as an " + std::string(is_in ? "output" : "input") +
                             " but used with '" + text.back() + "'");
    }
    throw ParseError(line, token.column, "undeclared label '" + name + "'");
}

std::string check_state(const Token& token, std::size_t line)
{
    if (!is_identifier(token.text)) {
        throw ParseError(line, token.column, "'" + token.text + "' is not a state name");
    }
    return token.text;
}

struct Parsed
{
    FileKind kind = FileKind::Lts;
    Header header;
    Alphabet alphabet;
    std::set<std::string> states;
    std::set<Transition> transitions;
    std::set<TimedTransition> timed;
};

FileKind header_kind(const Line& line)
{
    std::vector<std::string> words;
    for (const auto& t : line.tokens) {
        words.push_back(t.text);
    }
    if (words == std::vector<std::string>{"lts"}) {
        return FileKind::Lts;
    }
    if (words == std::vector<std::string>{"ta"}) {
        return FileKind::Ta;
    }
    if (words == std::vector<std::string>{"test", "lts"}) {
        return FileKind::TestLts;
    }
    if (words == std::vector<std::string>{"test", "ta"}) {
        return FileKind::TestTa;
    }
    throw ParseError(line.number, line.tokens.front().column,
                     "expected 'lts', 'ta', 'test lts' or 'test ta', got '" + line.text + "'");
}

Parsed parse_any(std::string_view text)
{
    auto lines = split_lines(text);
    if (lines.empty()) {
        throw ParseError(1, 1, "empty model file");
    }
    Parsed parsed;
    parsed.kind = header_kind(lines.front());
    bool timed = parsed.kind == FileKind::Ta || parsed.kind == FileKind::TestTa;
    bool test = parsed.kind == FileKind::TestLts || parsed.kind == FileKind::TestTa;
    bool in_body = false;
    std::size_t last_line = lines.back().number;

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& line = lines[k];
        if (!in_body) {
            if (parse_header_line(line, parsed.kind, parsed.header)) {
                continue;
            }
            auto missing = [&](bool present, const char* key) {
                if (!present) {
                    throw ParseError(line.number, 1, std::string("missing '") + key + ":' header");
                }
            };
            missing(parsed.header.inputs.has_value(), "inputs");
            missing(parsed.header.outputs.has_value(), "outputs");
            missing(parsed.header.initial.has_value(), "init");
            if (timed) {
                missing(parsed.header.bound.has_value(), "M");
            }
            parsed.alphabet = {*parsed.header.inputs, *parsed.header.outputs};
            in_body = true;
        }
        if (line.text.find(':') != std::string::npos) {
            throw ParseError(line.number, line.tokens.front().column, "header line after the first transition");
        }
        bool delta_allowed = timed || test || parsed.header.explicit_quiescence;
        std::size_t expected = timed ? 5 : 3;
        if (line.tokens.size() != expected) {
            throw ParseError(line.number, line.tokens.front().column,
                             timed ? "expected 'source label [guard] {resets} target'"
                                   : "expected 'source label target'");
        }
        auto source = check_state(line.tokens.front(), line.number);
        auto label = parse_label(line.tokens[1], line.number, parsed.alphabet, delta_allowed);
        auto target = check_state(line.tokens.back(), line.number);
        parsed.states.insert(source);
        parsed.states.insert(target);
        bool fresh = true;
        if (timed) {
            const auto& guard_token = line.tokens[2];
            const auto& guard_text = guard_token.text;
            std::optional<ClockConstraint> guard;
            if (guard_text.size() >= 2 && guard_text.front() == '[' && guard_text.back() == ']') {
                guard = constraint_from(std::string_view(guard_text).substr(1, guard_text.size() - 2));
            }
            if (!guard) {
                throw ParseError(line.number, guard_token.column,
                                 "guard must be one of [c<M], [c=M], [c<=M], got '" + guard_text + "'");
            }
            const auto& reset_token = line.tokens[3];
            if (reset_token.text != "{c}" && reset_token.text != "{}") {
                throw ParseError(line.number, reset_token.column,
                                 "resets must be '{c}' or '{}', got '" + reset_token.text + "'");
            }
            // One edge per (source, label, target); guard or reset variants count as duplicates.
            for (const auto& t : parsed.timed) {
                if (t.source == source && t.label == label && t.target == target) {
                    fresh = false;
                }
            }
            if (fresh) {
                parsed.timed.insert({source, label, *guard, reset_token.text == "{c}", target});
            }
        } else {
            fresh = parsed.transitions.insert({source, label, target}).second;
        }
        if (!fresh) {
            throw ParseError(line.number, line.tokens.front().column, "duplicate transition");
        }
    }
    if (!in_body) {
        auto missing = [&](bool present, const char* key) {
            if (!present) {
                throw ParseError(last_line + 1, 1, std::string("missing '") + key + ":' header");
            }
        };
        missing(parsed.header.inputs.has_value(), "inputs");
        missing(parsed.header.outputs.has_value(), "outputs");
        missing(parsed.header.initial.has_value(), "init");
        if (timed) {
            missing(parsed.header.bound.has_value(), "M");
        }
        parsed.alphabet = {*parsed.header.inputs, *parsed.header.outputs};
    }
    parsed.states.insert(*parsed.header.initial);
    if (parsed.header.states) {
        parsed.states.insert(parsed.header.states->begin(), parsed.header.states->end());
    }
    for (const auto& [location, constraint] : parsed.header.invariants) {
        parsed.states.insert(location);
    }
    if (test) {
        parsed.states.insert(std::string(pass_state));
        parsed.states.insert(std::string(fail_state));
    }
    return parsed;
}

void reject(const std::vector<Violation>& violations)
{
    if (violations.empty()) {
        return;
    }
    std::string message = "invalid model:";
    for (const auto& v : violations) {
        message += " [" + v.rule + "] " + v.message + ";";
    }
    throw ParseError(0, 0, message);
}

const char* kind_name(FileKind kind)
{
    switch (kind) {
    case FileKind::Lts: return "lts";
    case FileKind::Ta: return "ta";
    case FileKind::TestLts: return "test lts";
    case FileKind::TestTa: break;
    }
    return "test ta";
}

Lts build_lts(Parsed parsed)
{
    Lts model;
    model.states = std::move(parsed.states);
    model.initial = *parsed.header.initial;
    model.alphabet = std::move(parsed.alphabet);
    model.transitions = std::move(parsed.transitions);
    bool test = parsed.kind == FileKind::TestLts;
    model.quiescence = test || parsed.header.explicit_quiescence ? Quiescence::Explicit : Quiescence::Derived;
    return model;
}

TimedAutomaton build_ta(Parsed parsed)
{
    TimedAutomaton ta;
    ta.locations = std::move(parsed.states);
    ta.initial = *parsed.header.initial;
    ta.alphabet = std::move(parsed.alphabet);
    ta.bound = *parsed.header.bound;
    ta.invariants = std::move(parsed.header.invariants);
    ta.transitions = std::move(parsed.timed);
    return ta;
}

Model build(Parsed parsed)
{
    switch (parsed.kind) {
    case FileKind::Lts: {
        auto model = build_lts(std::move(parsed));
        reject(validate_lts(model));
        return model;
    }
    case FileKind::Ta: {
        auto ta = build_ta(std::move(parsed));
        reject(validate_ta_structure(ta));
        return ta;
    }
    case FileKind::TestLts: {
        TestCase test{build_lts(std::move(parsed))};
        reject(validate_test_structure(test));
        return test;
    }
    case FileKind::TestTa: break;
    }
    TimedTestCase test{build_ta(std::move(parsed))};
    reject(validate_test_structure(test));
    return test;
}

template <class T>
T parse_as(std::string_view text, FileKind kind)
{
    auto parsed = parse_any(text);
    if (parsed.kind != kind) {
        throw ParseError(1, 1, std::string("expected a '") + kind_name(kind) + "' file, got '" +
                                   kind_name(parsed.kind) + "'");
    }
    return std::get<T>(build(std::move(parsed)));
}

std::string join(const std::set<std::string>& names)
{
    std::string text;
    for (const auto& name : names) {
        text += (text.empty() ? "" : ", ") + name;
    }
    return text;
}

std::string header_list(const std::string& key, const std::set<std::string>& names)
{
    return names.empty() ? key + ":\n" : key + ": " + join(names) + "\n";
}

std::string label_text(const Action& label)
{
    switch (label.kind) {
    case ActionKind::Input: return label.name + "?";
    case ActionKind::Output: return label.name + "!";
    case ActionKind::Delta: break;
    }
    return std::string(delta_name);
}

/// States that the transitions, `init:` and the implicit test sinks do not declare.
template <class Edges>
std::set<std::string> extra_states(const std::set<std::string>& states, const std::string& initial,
                                   const Edges& edges, bool test,
                                   const std::map<std::string, ClockConstraint>* invariants = nullptr)
{
    std::set<std::string> covered{initial};
    if (test) {
        covered.insert(std::string(pass_state));
        covered.insert(std::string(fail_state));
    }
    for (const auto& e : edges) {
        covered.insert(e.source);
        covered.insert(e.target);
    }
    if (invariants) {
        for (const auto& [location, constraint] : *invariants) {
            covered.insert(location);
        }
    }
    std::set<std::string> extra;
    std::set_difference(states.begin(), states.end(), covered.begin(), covered.end(),
                        std::inserter(extra, extra.end()));
    return extra;
}

std::string lts_body(const Lts& model, bool test)
{
    std::string text;
    if (!test && model.quiescence == Quiescence::Explicit) {
        text += "quiescence: explicit\n";
    }
    text += header_list("inputs", model.alphabet.inputs);
    text += header_list("outputs", model.alphabet.outputs);
    text += "init: " + model.initial + "\n";
    if (auto extra = extra_states(model.states, model.initial, model.transitions, test); !extra.empty()) {
        text += "states: " + join(extra) + "\n";
    }
    for (const auto& t : model.transitions) {
        text += t.source + " " + label_text(t.label) + " " + t.target + "\n";
    }
    return text;
}

std::string ta_body(const TimedAutomaton& ta, bool test)
{
    std::string text = "M: " + to_string(ta.bound) + "\n";
    text += header_list("inputs", ta.alphabet.inputs);
    text += header_list("outputs", ta.alphabet.outputs);
    text += "init: " + ta.initial + "\n";
    if (auto extra = extra_states(ta.locations, ta.initial, ta.transitions, test, &ta.invariants); !extra.empty()) {
        text += "states: " + join(extra) + "\n";
    }
    for (const auto& [location, constraint] : ta.invariants) {
        text += "inv " + location + ": " + display(constraint) + "\n";
    }
    for (const auto& t : ta.transitions) {
        text += t.source + " " + label_text(t.label) + " [" + display(t.guard) + "] " + (t.resets ? "{c}" : "{}") +
                " " + t.target + "\n";
    }
    return text;
}

std::string quoted(const std::string& name)
{
    return "\"" + name + "\"";
}

struct DotEdge
{
    std::string source;
    std::string label;
    std::string target;
};

std::string dot_graph(const std::string& name, const std::set<std::string>& states, const std::string& initial,
                      const std::vector<DotEdge>& edges, bool test,
                      const std::map<std::string, ClockConstraint>* invariants)
{
    std::ostringstream out;
    out << "digraph " << quoted(name) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  __init [shape=point, label=\"\"];\n";
    for (const auto& state : states) {
        out << "  " << quoted(state) << " [";
        if (test && state == pass_state) {
            out << "shape=box, color=green, ";
        } else if (test && state == fail_state) {
            out << "shape=box, color=red, ";
        }
        std::string label = state;
        if (invariants) {
            if (auto it = invariants->find(state); it != invariants->end()) {
                label += "\\n" + display(it->second);
            }
        }
        out << "label=" << quoted(label) << "];\n";
    }
    out << "  __init -> " << quoted(initial) << ";\n";
    for (const auto& e : edges) {
        out << "  " << quoted(e.source) << " -> " << quoted(e.target) << " [label=" << quoted(e.label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::vector<DotEdge> dot_edges(const Lts& model)
{
    std::vector<DotEdge> edges;
    for (const auto& t : model.transitions) {
        edges.push_back({t.source, display(t.label), t.target});
    }
    return edges;
}

std::vector<DotEdge> dot_edges(const TimedAutomaton& ta)
{
    std::vector<DotEdge> edges;
    for (const auto& t : ta.transitions) {
        edges.push_back(
            {t.source, display(t.label) + ", " + display(t.guard) + ", " + (t.resets ? "{c}" : "{}"), t.target});
    }
    return edges;
}

} // namespace

Model parse(std::string_view text)
{
    return build(parse_any(text));
}

Lts parse_lts(std::string_view text)
{
    return parse_as<Lts>(text, FileKind::Lts);
}

TimedAutomaton parse_ta(std::string_view text)
{
    return parse_as<TimedAutomaton>(text, FileKind::Ta);
}

TestCase parse_test(std::string_view text)
{
    return parse_as<TestCase>(text, FileKind::TestLts);
}

TimedTestCase parse_timed_test(std::string_view text)
{
    return parse_as<TimedTestCase>(text, FileKind::TestTa);
}

std::string serialize(const Lts& model)
{
    return "lts\n" + lts_body(model, false);
}

std::string serialize(const TimedAutomaton& ta)
{
    return "ta\n" + ta_body(ta, false);
}

std::string serialize(const TestCase& test)
{
    return "test lts\n" + lts_body(test.graph, true);
}

std::string serialize(const TimedTestCase& test)
{
    return "test ta\n" + ta_body(test.graph, true);
}

std::string serialize(const Model& model)
{
    return std::visit([](const auto& value) { return serialize(value); }, model);
}

std::string export_dot(const Lts& model)
{
    return dot_graph("lts", model.states, model.initial, dot_edges(model), false, nullptr);
}

std::string export_dot(const TimedAutomaton& ta)
{
    return dot_graph("ta", ta.locations, ta.initial, dot_edges(ta), false, &ta.invariants);
}

std::string export_dot(const TestCase& test)
{
    return dot_graph("test", test.graph.states, test.graph.initial, dot_edges(test.graph), true, nullptr);
}

std::string export_dot(const TimedTestCase& test)
{
    return dot_graph("test", test.graph.locations, test.graph.initial, dot_edges(test.graph), true,
                     &test.graph.invariants);
}

std::string export_dot(const Model& model)
{
    return std::visit([](const auto& value) { return export_dot(value); }, model);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

} // namespace tioco

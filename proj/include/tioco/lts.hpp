#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tioco {

/// Raised when an operation receives a model that breaks its precondition.
class ModelError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class ActionKind { Input, Output, Delta };

/// Reserved name of the quiescence observation.
inline constexpr std::string_view delta_name = "delta";

struct Action
{
    std::string name;
    ActionKind kind = ActionKind::Input;

    auto operator<=>(const Action&) const = default;

    [[nodiscard]] bool is_input() const { return kind == ActionKind::Input; }
    [[nodiscard]] bool is_output() const { return kind == ActionKind::Output; }
    [[nodiscard]] bool is_delta() const { return kind == ActionKind::Delta; }
};

Action input(std::string name);
Action output(std::string name);
Action delta();

/// `i?`, `o!` or `δ`.
std::string display(const Action& action);

/// True iff `name` matches `[A-Za-z_][A-Za-z0-9_]*`.
bool is_identifier(std::string_view name);

struct Alphabet
{
    std::set<std::string> inputs;
    std::set<std::string> outputs;

    bool operator==(const Alphabet&) const = default;

    [[nodiscard]] std::vector<Action> input_actions() const;
    [[nodiscard]] std::vector<Action> output_actions() const;
    /// Inputs and outputs, sorted by name.
    [[nodiscard]] std::vector<Action> actions() const;
    /// actions() plus δ, sorted by name.
    [[nodiscard]] std::vector<Action> actions_with_delta() const;
    [[nodiscard]] bool contains(const Action& action) const;
};

struct Transition
{
    std::string source;
    Action label;
    std::string target;

    auto operator<=>(const Transition&) const = default;
};

/// How δ is observed: derived from the absence of outputs, or through
/// explicit δ-labelled edges (projected automata and test trees).
enum class Quiescence { Derived, Explicit };

struct Lts
{
    std::set<std::string> states;
    std::string initial;
    Alphabet alphabet;
    std::set<Transition> transitions;
    Quiescence quiescence = Quiescence::Derived;

    bool operator==(const Lts&) const = default;
};

using StateSet = std::set<std::string>;
using SuspensionTrace = std::vector<Action>;
using OutSet = std::set<Action>;

std::string display(const SuspensionTrace& trace);
std::string display(const OutSet& outs);

struct Violation
{
    std::string rule;
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_alphabet(const Alphabet& alphabet);
std::vector<Violation> validate_lts(const Lts& model);

/// Throws ModelError listing the violations when validate_lts is non-empty.
void require_valid(const Lts& model);

/// Targets of `label`-edges leaving `state`.
std::vector<std::string> successors(const Lts& model, const std::string& state, const Action& label);

bool is_input_enabled(const Lts& model);
bool is_quiescent_state(const Lts& model, const std::string& state);

OutSet out_set(const Lts& model, const StateSet& states);
std::set<Action> in_set(const Lts& model, const StateSet& states);

StateSet after(const Lts& model, const StateSet& states, const Action& action);
StateSet after(const Lts& model, const StateSet& states, const SuspensionTrace& trace);
/// Fold from the initial state.
StateSet after(const Lts& model, const SuspensionTrace& trace);

std::set<SuspensionTrace> straces_upto(const Lts& model, std::size_t depth);

} // namespace tioco

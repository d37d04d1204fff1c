#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mc/ternary.hpp"

namespace mc {

enum class Role { Input, Local, Output };
enum class RegisterType { Simple, Mask0, Mask1 };

struct RegisterDecl {
  std::string name;
  Role role = Role::Input;
  RegisterType type = RegisterType::Simple;
  /// Initial state; ignored for input registers.
  Ternary init = Ternary::Zero;

  friend bool operator==(const RegisterDecl&, const RegisterDecl&) = default;
};

enum class GateKind { And, Or, Not, Nand, Nor, Xor, Buf, Const0, Const1, Table };

/// A DAG node that can feed a gate or an output node: either the input node
/// of a (non-output) register or a gate.
struct NodeRef {
  enum class Kind : unsigned char { Register, Gate };
  Kind kind = Kind::Register;
  std::size_t index = 0;

  static NodeRef reg(std::size_t i) { return {Kind::Register, i}; }
  static NodeRef gate(std::size_t i) { return {Kind::Gate, i}; }
  bool is_register() const { return kind == Kind::Register; }

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct Gate {
  std::string id;
  GateKind kind = GateKind::Buf;
  /// Truth table, used by Table gates only.
  BooleanFunction table;
  std::vector<NodeRef> fanin;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// A synchronous circuit: registers plus a combinational DAG.
///
/// Registers are kept in state order, inputs then locals then outputs, each
/// group in declaration order. `drivers[i]` is the node feeding register i's
/// output node; it must be empty for inputs and set for everything else.
/// A Circuit may be structurally invalid; see validate() and Dag::compile().
struct Circuit {
  std::string name;
  std::vector<RegisterDecl> registers;
  std::vector<Gate> gates;
  std::vector<std::optional<NodeRef>> drivers;

  std::size_t count(Role role) const;
  std::size_t num_inputs() const { return count(Role::Input); }
  std::size_t num_locals() const { return count(Role::Local); }
  std::size_t num_outputs() const { return count(Role::Output); }
  /// Width of a full state word In ∘ Loc ∘ Out.
  std::size_t state_width() const { return registers.size(); }

  std::optional<std::size_t> find_register(std::string_view name) const;
  std::optional<std::size_t> find_gate(std::string_view id) const;

  /// Non-input initialization (Loc ∘ Out).
  TernaryWord initial_values() const;

  /// Same circuit with every register made simple.
  Circuit with_simple_registers() const;
  bool has_masking_registers() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

std::string_view to_string(Role role);
std::string_view to_string(RegisterType type);
std::string_view to_string(GateKind kind);

/// Kleene-extended evaluation of one gate. `table` is used by Table gates.
Ternary eval_gate(GateKind kind, const BooleanFunction& table, std::span<const Ternary> in);

/// Required fan-in check: returns an error message or empty.
std::string check_fanin(const Gate& g);

struct Violation {
  enum class Kind { Role, Name, Reference, Fanin, Driver, Cycle, Order };
  Kind kind;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Structural check of a circuit. Empty iff the circuit is well formed.
std::vector<Violation> validate(const Circuit& c);

/// A validated circuit's combinational logic with a fixed topological order.
///
/// Input nodes are the non-output registers (In ∘ Loc); output nodes are the
/// non-input registers (Loc ∘ Out).
class Dag {
 public:
  /// Throws InvalidCircuit listing every violation.
  static Dag compile(const Circuit& c);

  std::size_t input_width() const noexcept { return inputs_; }
  std::size_t output_width() const noexcept { return outputs_.size(); }
  std::size_t gate_count() const noexcept { return gates_.size(); }

  TernaryWord eval(const TernaryWord& x) const;

  /// Same as eval, writing into caller-provided scratch to avoid allocation.
  /// `nodes` is resized as needed.
  void eval_into(const TernaryWord& x, std::vector<Ternary>& nodes, TernaryWord& out) const;

 private:
  struct CompiledGate {
    GateKind kind;
    std::size_t table;  // index into tables_
    std::vector<std::size_t> fanin;  // indices into the node array
  };

  std::size_t inputs_ = 0;
  std::vector<BooleanFunction> tables_;
  std::vector<CompiledGate> gates_;
  std::vector<std::size_t> outputs_;
};

/// f^G: deterministic Kleene evaluation of the DAG.
TernaryWord eval_dag(const Dag& dag, const TernaryWord& x);

/// Incremental construction of circuits. Register handles returned by the
/// add_* methods stay valid across the reordering that build() performs.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::string name);

  NodeRef add_input(std::string name, RegisterType type = RegisterType::Simple);
  NodeRef add_local(std::string name, RegisterType type = RegisterType::Simple,
                    Ternary init = Ternary::Zero);
  void add_output(std::string name, RegisterType type = RegisterType::Simple,
                  Ternary init = Ternary::Zero);

  NodeRef add_gate(std::string id, GateKind kind, std::vector<NodeRef> fanin);
  NodeRef add_table(std::string id, BooleanFunction table, std::vector<NodeRef> fanin);
  /// AND/OR of any number of signals, degrading to a plain wire for one input
  /// and to a constant for none.
  NodeRef add_and(std::string id, std::vector<NodeRef> fanin);
  NodeRef add_or(std::string id, std::vector<NodeRef> fanin);

  void drive(std::string_view reg, NodeRef src);

  /// Copies a circuit without local registers into this one. Its input
  /// registers are bound to `inputs` (in order); gate ids get `prefix`.
  /// Returns the nodes that drive its output registers, in order.
  std::vector<NodeRef> instantiate(const Circuit& sub, std::string_view prefix,
                                   std::span<const NodeRef> inputs);

  /// Reorders registers to In ∘ Loc ∘ Out and validates.
  Circuit build() const;

 private:
  NodeRef add_register(RegisterDecl decl);

  Circuit c_;
};

/// Parses the line-oriented netlist format. Registers are stored in state
/// order whatever the declaration order; gates may be referenced before they
/// are declared. Syntax errors and unknown names raise ParseError with the
/// offending line. Structural rules (duplicate names, roles, fan-in, cycles)
/// are left to validate().
Circuit parse_netlist(std::string_view text);
std::string emit_netlist(const Circuit& c);

}  // namespace mc

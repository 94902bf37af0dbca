// Command-line front end: JSON documents in, JSON / DOT / text out.
//
// The executable only parses flags; everything else lives here so it can be
// exercised in-process.
#pragma once

#include "coxkernel/cox.hpp"
#include "coxkernel/divisors.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coxkernel::cli {

using nlohmann::json;

inline constexpr const char* kSchema = "coxkernel/1";

enum class Command { clgroup, coxring, kspec, orbits, charspace, verify, reconstruct, sections, divisor };
enum class Format { json, dot, text };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);
std::optional<Format> parse_format(const std::string& name);
std::vector<std::string> command_names();

struct JobConfig {
  Command command = Command::clgroup;
  std::string input;  ///< path to the input document
  Format format = Format::json;
  std::string theorem;  ///< "A".."D", required by verify
  std::string box;      ///< "x1,y1:x2,y2", optional for sections
  bool witnesses = false;
};

struct RunResult {
  int status = 0;
  std::string out;  ///< emitted document (stdout)
  std::string err;  ///< machine-readable error (stderr)
};

/// Reads config.input and runs the command.
RunResult run(const JobConfig& config);
/// Same, on a document given as text.
RunResult run_on_text(const JobConfig& config, const std::string& text);

// ---- documents -------------------------------------------------------------

/// Input problems. Parse errors carry a line and column, schema errors a JSON
/// pointer to the offending value.
class InputError : public std::runtime_error {
 public:
  InputError(std::string kind, const std::string& message, std::string pointer = {}, std::size_t line = 0,
             std::size_t column = 0)
      : std::runtime_error(message), kind_(std::move(kind)), pointer_(std::move(pointer)), line_(line), column_(column) {}

  const std::string& kind() const { return kind_; }
  const std::string& pointer() const { return pointer_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  json to_json() const;

 private:
  std::string kind_;
  std::string pointer_;
  std::size_t line_;
  std::size_t column_;
};

json parse_json_text(const std::string& text);

json group_to_json(const FgAbelianGroup& g);
FgAbelianGroup group_from_json(const json& j, const std::string& pointer);

json fan_to_json(const Fan& f);
Fan fan_from_json(const json& j);
/// The optional divisor of a fan document.
std::optional<IntVector> fan_divisor_from_json(const json& j, std::size_t rays);
json divisor_to_json(const IntVector& d);

json algebra_to_json(const GradedMonoidAlgebra& r);
GradedMonoidAlgebra algebra_from_json(const json& j);

json spec_to_json(const DivisorialAlgebraSpec& s);
DivisorialAlgebraSpec spec_from_json(const json& j);

/// {"schema", "theorem", "pass", "report": [...]}.
json report_document(const VerificationReport& r, bool witnesses);
/// Strict re-parse of a report document.
VerificationReport report_from_json(const json& j);

/// "x1,y1:x2,y2" as an inclusive box of the given dimension.
Box parse_box(const std::string& text, std::size_t dimension);

// ---- DOT -------------------------------------------------------------------

struct Poset {
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  ///< (lower, upper)
};

/// Nodes are numbered in lexicographic label order; one edge per cover.
std::string emit_dot(const Poset& p, const std::string& name = "poset");

Poset spectrum_poset(const Spectrum& s);
Poset f1_poset(const F1Scheme& s);

}  // namespace coxkernel::cli

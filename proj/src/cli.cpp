#include "knop/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "knop/knop_action.hpp"
#include "knop/models.hpp"
#include "knop/serialization.hpp"

namespace knop::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return buffer.str();
}

std::size_t element_bound_from_env() {
  const char* raw = std::getenv("KNOP_ELEMENT_BOUND");
  if (raw == nullptr || *raw == '\0') return kDefaultElementBound;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0' || value == 0 || raw[0] == '-') {
    throw UsageError(std::string("KNOP_ELEMENT_BOUND must be a positive "
                                 "integer, got '") +
                     raw + "'");
  }
  return static_cast<std::size_t>(value);
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void set_output(std::string path) { output_path_ = std::move(path); }

  void emit(const std::string& text) {
    if (output_path_.empty()) {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream file(output_path_, std::ios::binary);
    if (!file) throw IoError("cannot open '" + output_path_ + "' for writing");
    file << text;
    file.close();
    if (!file) throw IoError("cannot write '" + output_path_ + "'");
  }

  std::ostream& log() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::string output_path_;
};

OrbitSystem load_system(const std::string& path, std::size_t bound) {
  return parse_system(read_file(path), bound);
}

std::string summarize(const ValidationReport& report) {
  if (report.ok()) return "valid";
  std::ostringstream os;
  os << report.violations.size() << " violation(s):";
  for (int r = 1; r <= 7; ++r) {
    const auto n = report.count(static_cast<Rule>(r));
    if (n > 0) os << " " << to_string(static_cast<Rule>(r)) << " x" << n;
  }
  return os.str();
}

// Emits the validation report and returns false when the system is invalid.
bool require_valid_or_report(Session& session, const OrbitSystem& system,
                             const std::string& command) {
  auto report = validate(system);
  if (report.ok()) return true;
  session.emit(serialize(report));
  session.log() << command << ": system is invalid, " << summarize(report)
                << "\n";
  return false;
}

int cmd_generate(Session& session, const std::string& model,
                 const std::string& cartan_path,
                 const std::vector<std::string>& factor_paths,
                 std::size_t bound) {
  auto need_cartan = [&]() {
    if (cartan_path.empty()) {
      throw UsageError("--model " + model + " requires --cartan <file>");
    }
    return WeylGroupSpec(parse_cartan(read_file(cartan_path)), bound);
  };
  std::optional<OrbitSystem> system;
  if (model == "sl2-torus") {
    system = models::sl2_model(models::Sl2Variant::Torus);
  } else if (model == "sl2-ntorus") {
    system = models::sl2_model(models::Sl2Variant::TorusNormalizer);
  } else if (model == "sl2-borel") {
    system = models::sl2_model(models::Sl2Variant::Borel);
  } else if (model == "weak-order") {
    system = models::weak_order_model(need_cartan());
  } else if (model == "group-case") {
    system = models::group_case_model(need_cartan());
  } else if (model == "product") {
    if (factor_paths.empty()) {
      throw UsageError("--model product requires --factors <files>");
    }
    std::vector<OrbitSystem> factors;
    for (const auto& path : factor_paths) {
      factors.push_back(load_system(path, bound));
    }
    system = models::product_model(factors);
  } else {
    throw UsageError("unknown model '" + model + "'");
  }
  session.emit(serialize(*system));
  session.log() << "generate: " << model << " with "
                << system->vertices().size() << " vertices and "
                << system->edges().size() << " edges\n";
  return kOk;
}

int cmd_validate(Session& session, const OrbitSystem& system) {
  auto report = validate(system);
  session.emit(serialize(report));
  session.log() << "validate: " << summarize(report) << "\n";
  return report.ok() ? kOk : kCheckFailed;
}

int cmd_act(Session& session, const OrbitSystem& system) {
  if (!require_valid_or_report(session, system, "act")) return kCheckFailed;
  auto table = build_action(system);
  auto factoring = verify_factoring(table);
  session.emit(serialize(table, factoring));
  if (factoring.ok) {
    session.log() << "act: braid relations hold on all generator pairs\n";
    return kOk;
  }
  const auto& w = *factoring.witness;
  session.log() << "act: relation fails for generators " << w.i << ", " << w.j
                << " at vertex " << w.vertex << "\n";
  return kCheckFailed;
}

int cmd_orbits(Session& session, const OrbitSystem& system) {
  if (!require_valid_or_report(session, system, "orbits")) return kCheckFailed;
  auto table = build_action(system);
  auto factoring = verify_factoring(table);
  if (!factoring.ok) {
    session.emit(serialize(table, factoring));
    session.log() << "orbits: braid relations fail; W does not act\n";
    return kCheckFailed;
  }
  WeylAction action(std::move(table));
  session.emit(serialize_orbits(action));
  session.log() << "orbits: " << action.orbits().size() << " W-orbit(s), |W| = "
                << action.group_order() << "\n";
  return kOk;
}

int cmd_report(Session& session, const OrbitSystem& system, bool strict) {
  if (!require_valid_or_report(session, system, "report")) return kCheckFailed;
  auto report = orbit_report(system);
  session.emit(serialize(report));
  bool failed = false;
  for (const auto& [name, verdict] : report.theorem_verdicts) {
    session.log() << "report: " << name << ": " << to_string(verdict) << "\n";
    if (verdict == Verdict::Fail) failed = true;
    if (strict && verdict == Verdict::NotChecked) failed = true;
  }
  return failed ? kCheckFailed : kOk;
}

int cmd_export(Session& session, const OrbitSystem& system,
               const std::string& format, bool with_report) {
  if (format != "dot") throw UsageError("unsupported format '" + format + "'");
  if (!with_report) {
    session.emit(export_dot(system));
    return kOk;
  }
  if (!require_valid_or_report(session, system, "export")) return kCheckFailed;
  auto report = orbit_report(system);
  session.emit(export_dot(system, &report));
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Orbit graphs of spherical subgroups and the Weyl group action "
               "on them",
               "knop"};
  app.require_subcommand(1);

  std::string output;
  std::string model;
  std::string cartan_path;
  std::vector<std::string> factor_paths;
  std::string input;
  std::string format;
  bool with_report = false;
  bool strict = false;

  auto* generate = app.add_subcommand("generate", "emit a built-in model");
  generate->add_option("--model", model, "model name")
      ->required()
      ->check(CLI::IsMember({"sl2-torus", "sl2-ntorus", "sl2-borel",
                             "weak-order", "group-case", "product"}));
  generate->add_option("--cartan", cartan_path, "JSON file with a cartan field");
  generate->add_option("--factors", factor_paths, "system files to multiply");
  generate->add_option("-o,--output", output, "write to file");

  auto* validate_cmd = app.add_subcommand("validate", "check the graph axioms");
  auto* act = app.add_subcommand("act", "generator permutations and braid check");
  auto* orbits = app.add_subcommand("orbits", "W-orbits and stabilizer orders");
  auto* report = app.add_subcommand("report", "orbits plus theorem verdicts");
  auto* export_cmd = app.add_subcommand("export", "render as Graphviz DOT");
  for (auto* sub : {validate_cmd, act, orbits, report, export_cmd}) {
    sub->add_option("system", input, "system JSON file")->required();
    sub->add_option("-o,--output", output, "write to file");
  }
  report->add_flag("--strict", strict, "treat not-checked verdicts as failures");
  export_cmd->add_option("--format", format, "output format")
      ->required()
      ->check(CLI::IsMember({"dot"}));
  export_cmd->add_flag("--with-report", with_report,
                       "colour vertices by W-orbit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Session session(out, err);
  session.set_output(output);
  try {
    const std::size_t bound = element_bound_from_env();
    if (generate->parsed()) {
      return cmd_generate(session, model, cartan_path, factor_paths, bound);
    }
    const auto system = load_system(input, bound);
    if (validate_cmd->parsed()) return cmd_validate(session, system);
    if (act->parsed()) return cmd_act(session, system);
    if (orbits->parsed()) return cmd_orbits(session, system);
    if (report->parsed()) return cmd_report(session, system, strict);
    return cmd_export(session, system, format, with_report);
  } catch (const UsageError& e) {
    err << "knop: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "knop: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    err << "knop: parse error: " << e.what() << "\n";
  } catch (const VersionError& e) {
    err << "knop: version error: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    err << "knop: schema error: " << e.what() << "\n";
  } catch (const InvalidSystemError& e) {
    session.emit(serialize(e.report()));
    err << "knop: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "knop: " << e.what() << "\n";
  }
  return kCheckFailed;
}

}  // namespace knop::cli

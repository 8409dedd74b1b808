// ibac: command-line front end for integer-token access control.
//
// Exit codes: 0 success/allow, 1 usage error, 2 data error, 3 deny.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ibac/bench.hpp"
#include "ibac/codec.hpp"
#include "ibac/demo.hpp"
#include "ibac/dominance.hpp"
#include "ibac/error.hpp"
#include "ibac/hierarchy.hpp"
#include "ibac/process.hpp"
#include "ibac/schema.hpp"
#include "ibac/store.hpp"

namespace {

using nlohmann::json;
using namespace ibac;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDataError = 2;
constexpr int kDeny = 3;

struct Common {
  std::string format = "plain";
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"plain", "json"}));
}

std::string decision_word(const DecisionReport& r) { return r.allowed() ? "ALLOW" : "DENY"; }

// --- policy validate -------------------------------------------------------

int run_validate(const std::string& path, const Common& common) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open policy " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto schema = read_policy(buf.str());
  const auto report = validate_schema(schema);
  if (common.json()) {
    json j{{"ok", report.ok()}, {"violations", json::array()}};
    for (const auto& v : report.violations) j["violations"].push_back({{"code", v.code}, {"message", v.message}});
    std::cout << j.dump(2) << '\n';
  } else if (report.ok()) {
    std::cout << "ok: " << schema.id << " (" << schema.label_count() << " labels)\n";
  } else {
    for (const auto& v : report.violations) std::cout << v.code << ": " << v.message << '\n';
  }
  return report.ok() ? kOk : kDataError;
}

// --- check ----------------------------------------------------------------

std::string raw_witness(const Token& subject, const Token& object) {
  switch (object.scheme) {
    case Scheme::bitvec: {
      const BigInt diff = object.value - (object.value & subject.value);
      for (unsigned b = 0; b < bit_length(diff); ++b) {
        if (boost::multiprecision::bit_test(diff, b)) return "bit " + std::to_string(b);
      }
      break;
    }
    case Scheme::expsum:
      if (auto k = expsum_first_unmatched(subject.value, object.value, object.base)) return "index " + std::to_string(*k);
      break;
    case Scheme::primeprod: {
      const BigInt g = boost::multiprecision::gcd(subject.value, object.value);
      return "residue " + BigInt(object.value / g).str();
    }
  }
  return "?";
}

int run_check(const std::string& subject_text, const std::string& object_text, const std::string& test,
              const std::string& policy_path, const Common& common) {
  std::optional<PolicySchema> schema;
  if (!policy_path.empty()) schema = load_policy(policy_path);
  const auto subject = parse_token(subject_text);
  const auto object = parse_token(object_text);

  std::string used = test;
  if (used == "auto") {
    used = object.scheme == Scheme::bitvec ? "bitvec-and"
           : object.scheme == Scheme::expsum ? "expsum-walk"
                                             : "prime-modulo";
  }

  DominanceVerdict verdict;
  std::string witness;
  if (schema) {
    if (used == "bitvec-and") verdict = test_bitvec_and(*schema, subject, object);
    else if (used == "complement-dot") verdict = test_complement_dot(*schema, subject, object);
    else if (used == "expsum-walk") verdict = test_expsum_decode(*schema, subject, object);
    else verdict = test_prime_modulo(*schema, subject, object);
    witness = verdict.witness.value_or("");
  } else {
    if (used == "complement-dot") throw Error(ErrorCode::invalid_policy, "complement-dot needs --policy");
    const auto expected = used == "bitvec-and" ? Scheme::bitvec : used == "expsum-walk" ? Scheme::expsum : Scheme::primeprod;
    if (subject.scheme != expected || object.scheme != expected) {
      throw Error(ErrorCode::scheme_mismatch, used + " needs two " + to_string(expected) + " tokens");
    }
    if (expected == Scheme::expsum && subject.base != object.base) {
      throw Error(ErrorCode::scheme_mismatch, "exponent-sum tokens use different bases");
    }
    if (expected == Scheme::primeprod && object.value == 0) throw Error(ErrorCode::malformed_token, "object token value 0");
    verdict.holds = expected == Scheme::bitvec   ? bits_dominate(subject.value, object.value)
                    : expected == Scheme::expsum ? !expsum_first_unmatched(subject.value, object.value, object.base)
                                                 : modulo_dominates(subject.value, object.value);
    if (!verdict.holds) witness = raw_witness(subject, object);
  }

  if (common.json()) {
    std::cout << json{{"test", used}, {"holds", verdict.holds}, {"witness", witness.empty() ? json(nullptr) : json(witness)}}.dump(2)
              << '\n';
  } else if (verdict.holds) {
    std::cout << "dominates (" << used << ")\n";
  } else {
    std::cout << "denied (" << used << "): " << witness << '\n';
  }
  return verdict.holds ? kOk : kDeny;
}

// --- flatten --------------------------------------------------------------

int run_flatten(const std::string& path, const Common& common) {
  const auto graph = load_graph(path);
  const auto enc = flatten(graph);
  if (common.json()) {
    json j = json::array();
    for (const auto& v : enc.order) {
      json members = json::array();
      for (const auto& m : enc.order) {
        if (enc.of(v).count(m)) members.push_back(m);
      }
      j.push_back({{"vertex", v}, {"includes", members}});
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  for (const auto& v : enc.order) {
    std::cout << "S(" << v << ") = {";
    bool first = true;
    for (const auto& m : enc.order) {
      if (!enc.of(v).count(m)) continue;
      std::cout << (first ? "" : ", ") << m;
      first = false;
    }
    std::cout << "}\n";
  }
  return kOk;
}

// --- decide ---------------------------------------------------------------

void print_decision(const DecisionReport& r, const Common& common) {
  if (common.json()) {
    std::cout << json{{"decision", decision_word(r)},
                      {"tuple_registered", r.tuple_registered},
                      {"subject_dominates", r.subject_dominates},
                      {"tuple_dominates", r.tuple_dominates},
                      {"viewer_registered", r.viewer_registered},
                      {"reason", r.reason}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << decision_word(r) << ": " << r.reason << '\n';
  }
}

// --- bench ----------------------------------------------------------------

void print_bench(const BenchReport& report, const Common& common) {
  if (common.json()) {
    json j = json::array();
    for (const auto& t : report.tables) {
      json rows = json::array();
      for (const auto& r : t.rows) {
        rows.push_back({{"reads", r.reads}, {"and_seconds", r.and_seconds}, {"modulo_seconds", r.modulo_seconds},
                        {"ratio_percent", r.ratio_percent}});
      }
      j.push_back({{"pair", t.pair}, {"and_holds", t.and_holds}, {"modulo_holds", t.modulo_holds}, {"rows", rows}});
    }
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& t : report.tables) {
    std::cout << t.pair << " pair: bit-AND " << (t.and_holds ? "dominates" : "does not dominate") << ", modulo "
              << (t.modulo_holds ? "dominates" : "does not dominate") << '\n';
    std::cout << "reads\tAND seconds\tmodulo seconds\n";
    for (const auto& r : t.rows) {
      std::cout << r.reads << '\t' << std::setprecision(9) << r.and_seconds << '\t' << r.modulo_seconds << '\n';
    }
    std::cout << "reads\tmodulo / AND\n";
    for (const auto& r : t.rows) {
      std::cout << r.reads << "\tmodulo time " << std::fixed << std::setprecision(3) << r.ratio_percent
                << " % of bit-vector AND\n"
                << std::defaultfloat;
    }
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer-token access control toolkit"};
  app.require_subcommand(1);
  Common common;
  int status = kOk;

  std::string policy_path, labels_text, scheme_text = "p", token_text, subject_text, object_text, test = "auto";
  std::string graph_path, registry_path, subject_id, process_id, clearance_text, context_id, object_labels;
  std::string discloser_id, viewer_id, data_path, out_path;
  bool subject_side = false, strict_viewer = false, full = false, verbose = false;
  std::vector<std::size_t> counts;
  unsigned reps = 5;

  auto* policy_cmd = app.add_subcommand("policy", "Policy file operations");
  policy_cmd->require_subcommand(1);
  auto* validate = policy_cmd->add_subcommand("validate", "Validate a policy file");
  validate->add_option("--policy", policy_path, "Policy file")->required();
  add_format(validate, common);
  validate->callback([&] { status = run_validate(policy_path, common); });

  auto* encode_cmd = app.add_subcommand("encode", "Encode a label set as a token");
  encode_cmd->add_option("--policy", policy_path)->required();
  encode_cmd->add_option("--labels", labels_text, "Comma-separated label names")->required();
  encode_cmd->add_option("--scheme", scheme_text, "bitvec|expsum|primeprod (b|e|p)");
  encode_cmd->add_flag("--subject", subject_side, "Expand to the subject's included form first");
  add_format(encode_cmd, common);
  encode_cmd->callback([&] {
    const auto schema = load_policy(policy_path);
    auto labels = LabelSet::parse(labels_text);
    labels = subject_side ? expand_subject(schema, labels).included : (require_known(schema, labels), labels);
    const auto token = encode(schema, parse_scheme(scheme_text), labels);
    if (common.json()) {
      std::cout << json{{"token", format_token(schema, token)}, {"labels", labels.names()}}.dump(2) << '\n';
    } else {
      std::cout << format_token(schema, token) << '\n';
    }
  });

  auto* decode_cmd = app.add_subcommand("decode", "Decode a token to its labels");
  decode_cmd->add_option("--policy", policy_path)->required();
  decode_cmd->add_option("--token", token_text)->required();
  add_format(decode_cmd, common);
  decode_cmd->callback([&] {
    const auto schema = load_policy(policy_path);
    const auto token = parse_token(token_text, schema.id);
    const auto labels = decode(schema, token);
    if (common.json()) {
      json j{{"labels", labels.names()}};
      if (token.scheme == Scheme::expsum) j["indices"] = deconstruct(token.value, token.base);
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << labels.str() << '\n';
    }
  });

  auto* check = app.add_subcommand("check", "Decide whether a subject token dominates an object token");
  check->add_option("--subject", subject_text)->required();
  check->add_option("--object", object_text)->required();
  check->add_option("--scheme", test, "Test to run")
      ->check(CLI::IsMember({"auto", "bitvec-and", "complement-dot", "expsum-walk", "prime-modulo"}));
  check->add_option("--policy", policy_path, "Policy for label-named witnesses");
  add_format(check, common);
  check->callback([&] { status = run_check(subject_text, object_text, test, policy_path, common); });

  auto* flatten_cmd = app.add_subcommand("flatten", "Print the inclusion sets of a hierarchy graph");
  flatten_cmd->add_option("--graph", graph_path)->required();
  add_format(flatten_cmd, common);
  flatten_cmd->callback([&] { status = run_flatten(graph_path, common); });

  auto* tuple = app.add_subcommand("tuple", "Manage (subject, process) tuples");
  tuple->require_subcommand(1);
  auto* tuple_add = tuple->add_subcommand("add", "Register a tuple");
  tuple_add->add_option("--registry", registry_path)->required();
  tuple_add->add_option("--policy", policy_path)->required();
  tuple_add->add_option("--subject", subject_id)->required();
  tuple_add->add_option("--process", process_id)->required();
  tuple_add->add_option("--clearance", clearance_text)->required();
  tuple_add->add_option("--context", context_id);
  tuple_add->callback([&] {
    const auto schema = load_policy(policy_path);
    const auto clearance = LabelSet::parse(clearance_text);
    require_known(schema, clearance);
    TupleRegistry reg;
    if (std::filesystem::exists(registry_path)) reg = load_registry(registry_path);
    reg = register_tuple(reg, {subject_id, process_id, clearance, context_id});
    save_registry(reg, registry_path);
    std::cout << "registered (" << subject_id << ", " << process_id << ")\n";
  });
  auto* tuple_list = tuple->add_subcommand("list", "List registered tuples");
  tuple_list->add_option("--registry", registry_path)->required();
  add_format(tuple_list, common);
  tuple_list->callback([&] {
    const auto reg = load_registry(registry_path);
    if (common.json()) {
      std::cout << registry_to_json(reg);
      return;
    }
    for (const auto& t : reg.tuples()) {
      std::cout << t.subject << '\t' << t.process << '\t' << t.clearance.str() << '\t' << t.context << '\n';
    }
  });

  auto* decide = app.add_subcommand("decide", "Extended decisions with process tuples");
  decide->require_subcommand(1);
  auto* write = decide->add_subcommand("write", "Write through a process (e.g. print)");
  write->add_option("--policy", policy_path)->required();
  write->add_option("--registry", registry_path)->required();
  write->add_option("--subject", subject_id)->required();
  write->add_option("--clearance", clearance_text, "Subject clearance labels")->required();
  write->add_option("--process", process_id)->required();
  write->add_option("--object", object_labels, "Object labels")->required();
  add_format(write, common);
  write->callback([&] {
    const auto schema = load_policy(policy_path);
    const auto r = check_write_via_process(schema, load_registry(registry_path), subject_id,
                                           LabelSet::parse(clearance_text), process_id, LabelSet::parse(object_labels));
    print_decision(r, common);
    status = r.allowed() ? kOk : kDeny;
  });
  auto* disclose = decide->add_subcommand("disclose", "Disclose inside a context (e.g. briefing room)");
  disclose->add_option("--policy", policy_path)->required();
  disclose->add_option("--registry", registry_path)->required();
  disclose->add_option("--discloser", discloser_id)->required();
  disclose->add_option("--clearance", clearance_text, "Discloser clearance labels")->required();
  disclose->add_option("--viewer", viewer_id)->required();
  disclose->add_option("--context", context_id)->required();
  disclose->add_option("--object", object_labels)->required();
  disclose->add_flag("--strict-viewer", strict_viewer, "Also require the viewer's tuple to dominate");
  add_format(disclose, common);
  disclose->callback([&] {
    const auto schema = load_policy(policy_path);
    const auto r = check_disclosure_in_context(schema, load_registry(registry_path), discloser_id,
                                               LabelSet::parse(clearance_text), viewer_id, context_id,
                                               LabelSet::parse(object_labels), {strict_viewer});
    print_decision(r, common);
    status = r.allowed() ? kOk : kDeny;
  });

  auto* ingest_cmd = app.add_subcommand("ingest", "Tag CSV rows and write a store file");
  ingest_cmd->add_option("--policy", policy_path)->required();
  ingest_cmd->add_option("--data", data_path, "CSV input")->required();
  ingest_cmd->add_option("--scheme", scheme_text, "Tag scheme");
  ingest_cmd->add_option("--out", out_path, "Store file (default stdout)");
  ingest_cmd->callback([&] {
    const auto schema = load_policy(policy_path);
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + data_path);
    const auto store = ingest_csv(schema, parse_scheme(scheme_text), in);
    if (out_path.empty()) {
      write_store(std::cout, store);
    } else {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorCode::io_error, "cannot write " + out_path);
      write_store(out, store);
    }
  });

  auto* filter_cmd = app.add_subcommand("filter", "Return the store rows a subject token may see");
  filter_cmd->add_option("--subject", subject_text)->required();
  filter_cmd->add_option("--data", data_path, "Store file")->required();
  filter_cmd->add_option("--policy", policy_path, "Check the store and token against this policy");
  filter_cmd->callback([&] {
    const auto store = load_store(data_path);
    const auto subject = parse_token(subject_text, store.schema_id);
    std::vector<TaggedRecord> rows;
    if (policy_path.empty()) {
      rows = filter(store, subject);
    } else {
      rows = filter(load_policy(policy_path), store, subject);
    }
    write_records(std::cout, store, rows);
  });

  auto* bench = app.add_subcommand("bench", "Time bit-AND against prime-modulo dominance");
  bench->add_option("--counts", counts, "Read counts")->delimiter(',');
  bench->add_option("--reps", reps, "Repetitions per count (median reported)")->check(CLI::PositiveNumber);
  add_format(bench, common);
  bench->callback([&] {
    BenchConfig config;
    if (!counts.empty()) config.counts = counts;
    config.repetitions = reps;
    print_bench(bench_dominance(config), common);
  });

  auto* storage = app.add_subcommand("storage-report", "Bit width of the full-universe token per scheme");
  storage->add_option("--policy", policy_path)->required();
  add_format(storage, common);
  storage->callback([&] {
    const auto schema = load_policy(policy_path);
    const auto rows = storage_report(schema);
    if (common.json()) {
      json j = json::array();
      for (const auto& r : rows) j.push_back({{"scheme", to_string(r.scheme)}, {"value", r.full_value.str()}, {"bits", r.bits}});
      std::cout << j.dump(2) << '\n';
      return;
    }
    std::cout << "scheme\tvalue\tbinary\tbits\n";
    for (const auto& r : rows) {
      std::cout << to_string(r.scheme) << '\t' << r.full_value << '\t' << to_binary(r.full_value) << '\t' << r.bits << '\n';
    }
  });

  auto* demo_cmd = app.add_subcommand("demo", "Run the bundled staff-records example");
  demo_cmd->add_flag("--full", full, "Use the full-universe subject");
  demo_cmd->add_flag("--verbose", verbose, "Show the missing label for each denied row");
  demo_cmd->add_option("--subject-labels", labels_text, "Subject label instead of the MI6 Secretary");
  demo_cmd->callback([&] {
    demo::Options options;
    options.full_universe = full;
    options.verbose = verbose;
    if (!labels_text.empty()) options.subject = LabelSet::parse(labels_text);
    std::cout << demo::transcript(options);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    std::cerr << "ibac: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "ibac: " << e.what() << '\n';
    return kDataError;
  }
  return status;
}

#include "ibac/demo.hpp"

#include <map>
#include <sstream>

#include "ibac/codec.hpp"
#include "ibac/dominance.hpp"

namespace ibac::demo {

// Keep data/demo/policy.json and data/demo/staff.csv byte-identical to these.
std::string_view policy_json() {
  return R"({
  "id": "mi-staff",
  "base": 3,
  "levels": ["TopSecret", "Secret", "Protected", "Public"],
  "compartments": ["GCHQ", "MI5", "MI6"],
  "projects": [
    {"name": "homeland", "includes": ["borders", "counterterror"]},
    "borders",
    "counterterror",
    {"name": "overseas", "includes": ["cyber"]},
    "cyber"
  ],
  "assignments": {
    "primeprod": {
      "Public": 2, "Protected": 3, "Secret": 5, "TopSecret": 7,
      "GCHQ": 11, "MI6": 13, "MI5": 19,
      "borders": 17, "homeland": 23, "counterterror": 29, "overseas": 31, "cyber": 37
    }
  }
}
)";
}

std::string_view records_csv() {
  return R"(id,name,role,unit,level,marks
1,Karen,Border liaison,MI6,Protected,MI6;borders
2,Tom,Field officer,MI6,Secret,MI6;borders
3,Priya,Reception,Facilities,Public,
4,James,Station head,MI6,TopSecret,MI6;overseas
5,Alice,Analyst,MI5,Protected,MI5;homeland
6,Raj,Travel desk,MI6,Public,MI6
7,Chen,Network engineer,GCHQ,Secret,GCHQ;cyber
8,Olga,Watch officer,MI6,Protected,MI6;counterterror
9,Sam,Signals clerk,GCHQ,Public,GCHQ
10,Dana,Records clerk,MI6,Protected,MI6
11,Ewan,Port inspector,Border Force,Public,borders
12,Fiona,Case officer,MI5,Secret,MI5;counterterror
)";
}

PolicySchema policy() { return parse_policy(policy_json()); }

RecordStore records(const PolicySchema& schema) {
  std::istringstream in{std::string(records_csv())};
  return ingest_csv(schema, Scheme::primeprod, in);
}

LabelSet mi6_secretary() { return {"Protected", "MI6", "homeland"}; }

std::vector<std::string> mi6_secretary_rows() { return {"1", "3", "6", "8", "10", "11"}; }

std::string transcript(const Options& options) {
  const auto schema = policy();
  const auto store = records(schema);
  std::ostringstream out;

  LabelSet label = options.subject.value_or(mi6_secretary());
  if (options.full_universe) {
    const auto all = schema.universe();
    label = LabelSet(std::set<std::string>(all.begin(), all.end()));
  }
  const auto clearance = expand_subject(schema, label);
  const auto subject = encode(schema, Scheme::primeprod, clearance.included);

  out << "policy " << schema.id << ": " << schema.label_count() << " labels, " << store.rows.size() << " rows\n";
  out << "subject {" << label.str() << "}\n";
  out << "included form {" << clearance.included.str() << "}\n";
  out << "subject token " << format_token(subject) << "\n";
  out << "row\tsec_tag\tverdict\tname\n";

  const auto decisions = explain(schema, store, subject);
  const auto visible = filter(schema, store, subject);
  std::map<std::string, const TaggedRecord*> released;
  for (const auto& row : visible) released.emplace(row.row_id, &row);
  for (std::size_t i = 0; i < store.rows.size(); ++i) {
    const auto& row = store.rows[i];
    const auto& verdict = decisions[i].verdict;
    out << row.row_id << '\t' << format_token(row.sec_tag) << '\t';
    // payload only comes from the filter's output
    if (const auto it = released.find(row.row_id); it != released.end()) {
      out << "*\t" << it->second->fields.front() << '\n';
    } else {
      out << "-\t";
      if (options.verbose) out << "denied: missing " << verdict.witness.value_or("?");
      out << '\n';
    }
  }
  out << visible.size() << " of " << store.rows.size() << " rows returned\n";
  return out.str();
}

}  // namespace ibac::demo

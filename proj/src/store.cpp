#include "ibac/store.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ibac/error.hpp"

namespace ibac {

namespace {

void require_store_schema(const PolicySchema& schema, const RecordStore& store) {
  if (store.schema_id != schema.id) {
    throw Error(ErrorCode::schema_mismatch, "store bound to schema '" + store.schema_id + "', not '" + schema.id + "'");
  }
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool subject_sees(const Token& subject, const Token& tag) {
  switch (tag.scheme) {
    case Scheme::bitvec: return bits_dominate(subject.value, tag.value);
    case Scheme::expsum: return !expsum_first_unmatched(subject.value, tag.value, tag.base).has_value();
    case Scheme::primeprod: return modulo_dominates(subject.value, tag.value);
  }
  return false;
}

void require_subject_scheme(const RecordStore& store, const Token& subject) {
  if (subject.scheme != store.scheme) {
    throw Error(ErrorCode::scheme_mismatch, std::string("subject token is ") + to_string(subject.scheme) +
                                                ", store tags are " + to_string(store.scheme));
  }
  for (const auto& row : store.rows) {
    if (subject.scheme == Scheme::expsum && row.sec_tag.base != subject.base) {
      throw Error(ErrorCode::scheme_mismatch, "subject token base differs from the store's tags");
    }
  }
}

void require_subject(const PolicySchema& schema, const RecordStore& store, const Token& subject) {
  require_store_schema(schema, store);
  require_same_schema(schema, subject);
  require_subject_scheme(store, subject);
}

}  // namespace

RecordStore make_store(const PolicySchema& schema, Scheme scheme, std::vector<std::string> columns) {
  const unsigned width = scheme == Scheme::bitvec ? static_cast<unsigned>(schema.label_count()) : 0;
  return RecordStore{schema.id, scheme, std::move(columns), {}, width};
}

RecordStore ingest(const PolicySchema& schema, const RecordStore& store, const std::vector<LabeledRow>& rows) {
  require_store_schema(schema, store);
  RecordStore out = store;
  std::set<std::string> ids;
  for (const auto& r : out.rows) ids.insert(r.row_id);
  for (const auto& row : rows) {
    if (row.fields.size() != out.columns.size()) {
      throw Error(ErrorCode::parse_error, "row " + row.row_id + " has " + std::to_string(row.fields.size()) +
                                              " fields, expected " + std::to_string(out.columns.size()));
    }
    if (!ids.insert(row.row_id).second) throw Error(ErrorCode::parse_error, "duplicate row id " + row.row_id);
    const auto label = object_label(schema, row.label);
    out.rows.push_back({row.row_id, row.fields, encode(schema, out.scheme, label)});
  }
  return out;
}

std::vector<TaggedRecord> filter(const PolicySchema& schema, const RecordStore& store, const Token& subject) {
  require_subject(schema, store, subject);
  return filter(store, subject);
}

std::vector<TaggedRecord> filter(const RecordStore& store, const Token& subject) {
  require_subject_scheme(store, subject);
  std::vector<TaggedRecord> out;
  for (const auto& row : store.rows) {
    if (subject_sees(subject, row.sec_tag)) out.push_back(row);
  }
  return out;
}

std::vector<RowDecision> explain(const PolicySchema& schema, const RecordStore& store, const Token& subject) {
  require_subject(schema, store, subject);
  std::vector<RowDecision> out;
  out.reserve(store.rows.size());
  for (const auto& row : store.rows) out.push_back({row.row_id, dominates(schema, subject, row.sec_tag)});
  return out;
}

RecordStore retag(const PolicySchema& schema, const RecordStore& store, const std::string& row_id,
                  const LabelSet& label) {
  require_store_schema(schema, store);
  RecordStore out = store;
  const auto it = std::find_if(out.rows.begin(), out.rows.end(), [&](const TaggedRecord& r) { return r.row_id == row_id; });
  if (it == out.rows.end()) throw Error(ErrorCode::unknown_row, "unknown row: " + row_id);
  it->sec_tag = encode(schema, out.scheme, object_label(schema, label));
  return out;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  char c;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };

  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) throw Error(ErrorCode::parse_error, "csv: quote inside unquoted field");
        quoted = true;
        field_started = true;
        break;
      case ',': end_field(); break;
      case '\r':
        if (in.peek() == '\n') in.get(c);
        end_record();
        break;
      case '\n': end_record(); break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::parse_error, "csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

RecordStore ingest_csv(const PolicySchema& schema, Scheme scheme, std::istream& in) {
  const auto table = read_csv(in);
  if (table.empty()) throw Error(ErrorCode::parse_error, "csv: missing header row");
  const auto& header = table.front();
  std::optional<std::size_t> level_col, marks_col, id_col;
  std::vector<std::size_t> payload;
  std::vector<std::string> columns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "level") {
      level_col = i;
    } else if (header[i] == "marks") {
      marks_col = i;
    } else if (header[i] == "id") {
      id_col = i;
    } else {
      payload.push_back(i);
      columns.push_back(header[i]);
    }
  }
  if (!level_col) throw Error(ErrorCode::parse_error, "csv: no 'level' column");

  std::vector<LabeledRow> rows;
  for (std::size_t r = 1; r < table.size(); ++r) {
    const auto& rec = table[r];
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::parse_error, "csv: record " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                              " fields, header has " + std::to_string(header.size()));
    }
    LabeledRow row;
    row.row_id = id_col ? rec[*id_col] : std::to_string(r);
    for (auto i : payload) row.fields.push_back(rec[i]);
    row.label = LabelSet::parse(rec[*level_col]);
    if (marks_col) row.label = row.label.united(LabelSet::parse(rec[*marks_col]));
    rows.push_back(std::move(row));
  }
  return ingest(schema, make_store(schema, scheme, std::move(columns)), rows);
}

std::string escape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out += field[i];
      continue;
    }
    if (++i == field.size()) throw Error(ErrorCode::parse_error, "store: dangling escape");
    switch (field[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: throw Error(ErrorCode::parse_error, std::string("store: unknown escape \\") + field[i]);
    }
  }
  return out;
}

void write_records(std::ostream& out, const RecordStore& store, const std::vector<TaggedRecord>& rows) {
  out << "#ibac-store v1 schema=" << store.schema_id << " scheme=" << to_string(store.scheme) << '\n';
  out << "row_id\tsec_tag";
  for (const auto& c : store.columns) out << '\t' << escape_field(c);
  out << '\n';
  for (const auto& row : rows) {
    out << escape_field(row.row_id) << '\t' << format_token(row.sec_tag, store.tag_width);
    for (const auto& f : row.fields) out << '\t' << escape_field(f);
    out << '\n';
  }
}

void write_store(std::ostream& out, const RecordStore& store) {
  write_records(out, store, store.rows);
}

RecordStore read_store(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::parse_error, "store: empty file");
  const auto head = split(line, ' ');
  if (head.size() != 4 || head[0] != "#ibac-store" || head[1] != "v1" || head[2].rfind("schema=", 0) != 0 ||
      head[3].rfind("scheme=", 0) != 0) {
    throw Error(ErrorCode::parse_error, "store: bad header line");
  }
  RecordStore store;
  store.schema_id = head[2].substr(7);
  store.scheme = parse_scheme(head[3].substr(7));

  if (!std::getline(in, line)) throw Error(ErrorCode::parse_error, "store: missing column line");
  auto cols = split(line, '\t');
  if (cols.size() < 2 || cols[0] != "row_id" || cols[1] != "sec_tag") {
    throw Error(ErrorCode::parse_error, "store: column line must start with row_id, sec_tag");
  }
  for (std::size_t i = 2; i < cols.size(); ++i) store.columns.push_back(unescape_field(cols[i]));

  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    const auto parts = split(line, '\t');
    if (parts.size() != store.columns.size() + 2) {
      throw Error(ErrorCode::parse_error, "store: line " + std::to_string(line_no) + " has wrong field count");
    }
    TaggedRecord row;
    row.row_id = unescape_field(parts[0]);
    row.sec_tag = parse_token(parts[1], store.schema_id);
    if (row.sec_tag.scheme != store.scheme) {
      throw Error(ErrorCode::scheme_mismatch, "store: line " + std::to_string(line_no) + " tag scheme differs");
    }
    for (std::size_t i = 2; i < parts.size(); ++i) row.fields.push_back(unescape_field(parts[i]));
    if (store.scheme == Scheme::bitvec) {
      store.tag_width = std::max<unsigned>(store.tag_width, static_cast<unsigned>(parts[1].size() - 4));
    }
    store.rows.push_back(std::move(row));
  }
  return store;
}

RecordStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open store " + path.string());
  return read_store(in);
}

}  // namespace ibac

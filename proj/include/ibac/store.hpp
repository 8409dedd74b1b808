#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ibac/codec.hpp"
#include "ibac/dominance.hpp"
#include "ibac/labels.hpp"
#include "ibac/schema.hpp"

namespace ibac {

struct TaggedRecord {
  std::string row_id;
  std::vector<std::string> fields;  // aligned with RecordStore::columns
  Token sec_tag;
};

/// Immutable snapshot of tagged rows. Writers (ingest, retag) return a new store.
struct RecordStore {
  std::string schema_id;
  Scheme scheme = Scheme::primeprod;
  std::vector<std::string> columns;
  std::vector<TaggedRecord> rows;
  unsigned tag_width = 0;  // bit-vector digits written per tag
};

/// A row as it arrives: payload fields plus its object label.
struct LabeledRow {
  std::string row_id;
  std::vector<std::string> fields;
  LabelSet label;
};

RecordStore make_store(const PolicySchema& schema, Scheme scheme, std::vector<std::string> columns);

/// Encodes each row's object label at insert time.
RecordStore ingest(const PolicySchema& schema, const RecordStore& store, const std::vector<LabeledRow>& rows);

/// Rows the subject token dominates, in store order. Nothing else leaves.
std::vector<TaggedRecord> filter(const PolicySchema& schema, const RecordStore& store, const Token& subject);
/// Same, for a store read without its policy: only the scheme is checked.
std::vector<TaggedRecord> filter(const RecordStore& store, const Token& subject);

struct RowDecision {
  std::string row_id;
  DominanceVerdict verdict;
};

/// Per-row verdicts without payloads, for diagnostics.
std::vector<RowDecision> explain(const PolicySchema& schema, const RecordStore& store, const Token& subject);

RecordStore retag(const PolicySchema& schema, const RecordStore& store, const std::string& row_id,
                  const LabelSet& label);

/// RFC 4180 CSV with a header row. Column `level` holds the object level and
/// `marks` holds ';'-separated compartments/projects; an `id` column, if
/// present, becomes the row id (else the 1-based data line number). All other
/// columns are payload.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
RecordStore ingest_csv(const PolicySchema& schema, Scheme scheme, std::istream& in);

/// Line-record store file:
///   line 1: "#ibac-store v1 schema=<id> scheme=<bitvec|expsum|primeprod>"
///   line 2: "row_id<TAB>sec_tag<TAB><column>..."
///   rows:   "<id><TAB><token><TAB><field>..."
/// Fields escape '\\' as "\\\\", TAB as "\\t", LF as "\\n", CR as "\\r".
/// Every line ends with LF.
void write_store(std::ostream& out, const RecordStore& store);
void write_records(std::ostream& out, const RecordStore& store, const std::vector<TaggedRecord>& rows);
RecordStore read_store(std::istream& in);
RecordStore load_store(const std::filesystem::path& path);

std::string escape_field(std::string_view field);
std::string unescape_field(std::string_view field);

}  // namespace ibac

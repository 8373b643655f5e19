// SPDX-License-Identifier: Apache-2.0
//
// CSV ingestion and export.
//
// Snapshot schema: first row is the header "x\y" followed by one label per
// y candidate (coordinates joined by ';'); every following row is an x label
// followed by the snapshot values of that row. UTF-8, comma-separated,
// '.' decimal point.
//
// Dictionary / library / weight files are plain headerless numeric tables,
// one row per form / function / functional.

#pragma once

#include <iosfwd>
#include <string>

#include "eimkit/types.hpp"

namespace eimkit {

// Parses a snapshot CSV stream. Rejects malformed rows (ParseError), ragged
// rows and inconsistent coordinate dimensions (DimensionError), and
// non-finite entries (ValueError); messages name the offending line and
// field.
SnapshotData ingest_snapshots(std::istream& in);
SnapshotData load_snapshot_csv(const std::string& path);

void write_snapshot_csv(std::ostream& out, const SnapshotData& data);

// Headerless numeric table, all rows the same width.
Matrix read_matrix_csv(std::istream& in, const std::string& what = "matrix");
Matrix load_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& out, const Matrix& m);

}  // namespace eimkit

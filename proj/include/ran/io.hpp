#pragma once

#include <iosfwd>
#include <string>

#include "ran/generator.hpp"

namespace ran {

/// Writes "u v\n" per edge (u < v) in creation order.
void export_edges(const RanGraph& graph, std::ostream& out);

/// Parses an edge list written by export_edges. The input must describe a
/// valid growth history: the initial triangle followed by triples of edges
/// joining vertex j + 3 to the corners of a face active at step j.
/// Throws ran::Error with the offending line number otherwise.
RanGraph import_edges(std::istream& in);

/// Binary snapshot: magic "RAN1", t and seed as little-endian u64, then for
/// every vertex 1..n its degree followed by its ascending neighbor labels,
/// delta-encoded, all as LEB128 varints.
void write_snapshot(const RanGraph& graph, std::ostream& out);
RanGraph read_snapshot(std::istream& in);

}  // namespace ran

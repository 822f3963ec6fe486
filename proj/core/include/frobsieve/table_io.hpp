#pragma once

#include <cstdint>
#include <string>

#include "frobsieve/trace_functions.hpp"

namespace frobsieve {

// Binary cache for residue-mode Kloosterman tables.
//
// Layout (all integers little-endian):
//   bytes 0..3   magic "TFS1"
//   byte  4      format version (1)
//   u64 x 5      p, e, n, d, ell
//   u64 x (q-1)  values in slot order (F_q^* domain, slot = element index - 1)
//
// Only unnormalized residue Kloosterman tables are cacheable: they are exact,
// their domain mask is trivially all-true, and every parameter that determines
// the values (p, e, n, d, ell -- with omega pinned to the canonical choice by
// the caller) fits in the header.  Everything else is cheap to rebuild or
// carries floating-point values we refuse to round-trip.

std::string kloosterman_cache_path(const std::string& dir, unsigned n, uint64_t p,
                                   uint64_t e, uint64_t d, uint64_t ell);

bool table_cache_supported(const TraceTable& t);

// CacheUnsupported if the table is not cacheable, CacheIO on filesystem errors.
void write_table_cache(const std::string& path, const TraceTable& t);

// CacheIO if unreadable, CacheCorrupt on any header/size/value mismatch with
// the requested parameters.
TraceTable read_table_cache(const std::string& path, const FiniteField& F,
                            const Embedding& emb, FamilyKind expected_family,
                            unsigned expected_n);

}  // namespace frobsieve

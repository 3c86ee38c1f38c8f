#ifndef SYMPAR_PARTITION_IO_HPP
#define SYMPAR_PARTITION_IO_HPP

#include <iosfwd>
#include <string>

#include "sympar/partition.hpp"

namespace sympar {

// Versioned plain-text dump, one record per line:
//
//   sympar-partition v1
//   program NAME
//   depth K
//   complete 0|1
//   dim NAME LO HI DISCRETE            one line per box dimension, in order
//   action INDEX COUNT                 followed by COUNT pc lines
//   pc FORMULA
//   part ID STATUS COMPL prov I1..IA witness V1..VD|none formula F
//
// STATUS is nonempty|unknown, COMPL is 0|1, the prov list has one index per
// action, witness values align with the dim lines.  Rationals are exact
// (p/q) and formulas re-parse with parse_formula, so a round trip is exact.
void write_partition(std::ostream& os, const Partition& pt);
Partition read_partition(std::istream& is);

std::string partition_to_string(const Partition& pt);
Partition partition_from_string(const std::string& text);

void save_partition(const std::string& path, const Partition& pt);
Partition load_partition(const std::string& path);

// Rasterizes part ids over the first two box dimensions (1D boxes render
// as a horizontal strip) to a plain-text PPM (P3).  Each pixel takes the
// id located at its center point (discrete dims use the floored center);
// pixels whose membership cannot be decided exactly paint black.  Colors
// cycle a golden-ratio hue wheel keyed by part id.
void write_partition_ppm(std::ostream& os, const Partition& pt, int width,
                         int height);
void save_partition_ppm(const std::string& path, const Partition& pt,
                        int width, int height);

}  // namespace sympar

#endif  // SYMPAR_PARTITION_IO_HPP

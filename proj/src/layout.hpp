#pragma once

#include <string>

#include "partition.hpp"

namespace etf {

/// ASCII picture of the 2^k x 2^k grid with every diagonal block of the
/// partition outlined, followed by one legend line per block with its (d, q)
/// label and index range.
std::string render_block_layout(const DiagonalPartition& p);

} // namespace etf

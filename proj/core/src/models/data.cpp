#include "seqdesign/models/data.hpp"

#include "seqdesign/error.hpp"

namespace seqdesign {

void DataBlock::reserve(std::size_t n) {
  y.reserve(n);
  arm.reserve(n);
  status.reserve(n);
}

void DataBlock::append(const DataBlock& other) {
  y.insert(y.end(), other.y.begin(), other.y.end());
  arm.insert(arm.end(), other.arm.begin(), other.arm.end());
  status.insert(status.end(), other.status.begin(), other.status.end());
}

DataBlock DataBlock::prefix(std::size_t n) const {
  if (n > size()) throw ContractViolation("DataBlock::prefix beyond block length");
  DataBlock out;
  out.y.assign(y.begin(), y.begin() + static_cast<long>(n));
  if (!arm.empty()) out.arm.assign(arm.begin(), arm.begin() + static_cast<long>(n));
  if (!status.empty()) out.status.assign(status.begin(), status.begin() + static_cast<long>(n));
  return out;
}

DataView::DataView(const DataBlock& block, std::size_t n) : block_(&block), n_(n) {
  if (n > block.size()) throw ContractViolation("DataView longer than its block");
}

}  // namespace seqdesign
